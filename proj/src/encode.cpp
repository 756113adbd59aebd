#include "sp/encode.hpp"

#include "sp/search.hpp"

namespace sp {

std::vector<Symbol> derive_code_pattern(const MultipleAlignment& ma) {
    std::vector<Symbol> code;
    for (const Column& col : ma.columns) {
        if (col.matched()) continue;
        const Cell& cell = col.cells.front();
        const Symbol& sym = ma.rows[cell.row].symbols[cell.pos];
        if (sym.kind == SymbolKind::Id) code.push_back(sym);
    }
    return code;
}

std::vector<Symbol> extract_surface(const MultipleAlignment& ma) {
    std::vector<Symbol> surface;
    for (const Column& col : ma.columns) {
        bool all_contents = true;
        for (const Cell& cell : col.cells)
            if (ma.rows[cell.row].symbols[cell.pos].kind != SymbolKind::Contents) {
                all_contents = false;
                break;
            }
        if (all_contents) surface.push_back(contents_symbol(col.token));
    }
    return surface;
}

std::vector<Symbol> regenerate(const std::vector<Symbol>& code, const Store& store,
                               const SearchConfig& cfg) {
    if (code.empty()) throw RegenerationError("empty code pattern");
    Pattern as_new;
    as_new.symbols = code;
    as_new.prefix_len = 0;
    as_new.suffix_len = 0;
    std::vector<MultipleAlignment> ranked = build_alignments(as_new, store, cfg);
    if (ranked.empty()) throw RegenerationError("no alignment found for code pattern");
    const MultipleAlignment& best = ranked.front();
    if (best.score.coverage < 1.0)
        throw RegenerationError("store does not cover the code pattern");
    return extract_surface(best);
}

} // namespace sp
