#include "sp/search.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

#include "chain_search.hpp"
#include "sp/encode.hpp"

namespace sp {

namespace {

using detail::Bitset;
using detail::Chain;
using detail::ViewItem;

// ancestors[c] = all columns strictly before c in the partial order, built
// from the per-row chains; columns are already topologically ordered.
std::vector<Bitset> column_ancestors(const MultipleAlignment& ma) {
    const std::size_t m = ma.columns.size();
    std::vector<Bitset> anc(m, Bitset(m));
    for (std::size_t c = 0; c < m; ++c) {
        for (const Cell& cell : ma.columns[c].cells) {
            if (cell.pos == 0) continue;
            const int pred = ma.column_of[cell.row][cell.pos - 1];
            anc[c].merge(anc[pred]);
            anc[c].set(pred);
        }
    }
    return anc;
}

std::string double_bits(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

// Construction-order independent identity of an alignment: the score bits,
// the row pid multiset, the matched-cell structure and the code multiset.
std::string canonical_key(const MultipleAlignment& ma) {
    std::string key = double_bits(ma.score.cd);
    key += '|';
    for (PatternId pid : row_pid_multiset(ma)) {
        key += std::to_string(pid);
        key += ',';
    }
    key += '|';
    std::vector<std::string> cols;
    for (const Column& col : ma.columns) {
        if (!col.matched()) continue;
        std::vector<std::string> cells;
        for (const Cell& cell : col.cells) {
            const auto& app = ma.rows[cell.row].appearance;
            cells.push_back((cell.row == 0 ? "n" : std::to_string(app.pid)) + ":" +
                            std::to_string(cell.pos));
        }
        std::sort(cells.begin(), cells.end());
        std::string desc = col.token + "(";
        for (const auto& c : cells) desc += c + ";";
        desc += ")";
        cols.push_back(std::move(desc));
    }
    std::sort(cols.begin(), cols.end());
    for (const auto& c : cols) key += c;
    key += '|';
    std::vector<std::string> code_tokens;
    for (const Symbol& s : derive_code_pattern(ma)) code_tokens.push_back(s.token);
    std::sort(code_tokens.begin(), code_tokens.end());
    for (const auto& t : code_tokens) {
        key += t;
        key += ',';
    }
    return key;
}

MultipleAlignment materialize(const MultipleAlignment& base, const Pattern& pattern,
                              const Chain& chain, const std::vector<ViewItem>& view,
                              const SymbolCosts& costs) {
    MultipleAlignment child;
    child.rows = base.rows;

    int instance = 0;
    for (const auto& row : base.rows)
        if (row.appearance.pid == pattern.pid) ++instance;
    MultipleAlignment::Row row;
    row.appearance = {pattern.pid, instance};
    row.symbols = pattern.symbols;
    row.prefix_len = pattern.prefix_len;
    row.suffix_len = pattern.suffix_len;
    child.rows.push_back(std::move(row));
    const int new_row = child.row_count() - 1;

    std::vector<std::vector<Cell>> unified;
    for (const Column& col : base.columns)
        if (col.matched()) unified.push_back(col.cells);
    for (const auto& [v, p] : chain.pairs) {
        const Column& col = base.columns[view[v].column];
        std::vector<Cell> group = col.cells; // a single cell
        group.push_back({new_row, p});
        unified.push_back(std::move(group));
    }

    assemble_columns(child, unified);
    child.score = score(child, costs);
    return child;
}

struct PoolOrder {
    bool operator()(const std::pair<MultipleAlignment, std::string>& a,
                    const std::pair<MultipleAlignment, std::string>& b) const {
        const auto& A = a.first;
        const auto& B = b.first;
        if (A.score.cd != B.score.cd) return A.score.cd > B.score.cd;
        if (A.row_count() != B.row_count()) return A.row_count() < B.row_count();
        for (int r = 1; r < std::min(A.row_count(), B.row_count()); ++r) {
            if (A.rows[r].appearance.pid != B.rows[r].appearance.pid)
                return A.rows[r].appearance.pid < B.rows[r].appearance.pid;
        }
        return a.second < b.second;
    }
};

} // namespace

void SearchConfig::check() const {
    if (beam_width < 1 || max_rows < 1 || max_appearances < 1 || top_k < 1)
        throw std::invalid_argument("search configuration values must be positive");
}

std::vector<MultipleAlignment> build_alignments(const Pattern& new_pattern, const Store& store,
                                                const SearchConfig& cfg) {
    cfg.check();
    if (new_pattern.symbols.empty())
        throw std::invalid_argument("New pattern must be non-empty");

    const SymbolCosts costs(store);

    MultipleAlignment trivial = trivial_alignment(new_pattern);
    trivial.score = score(trivial, costs);

    using Entry = std::pair<MultipleAlignment, std::string>; // alignment + canonical key
    std::vector<Entry> beam;
    beam.emplace_back(trivial, canonical_key(trivial));

    std::unordered_set<std::string> seen;
    seen.insert(beam.front().second);

    std::vector<Entry> results = beam;
    const std::size_t stage_keep = static_cast<std::size_t>(std::max(cfg.beam_width, cfg.top_k));

    while (!beam.empty()) {
        std::vector<Entry> pool;
        for (const Entry& entry : beam) {
            const MultipleAlignment& ma = entry.first;
            if (ma.row_count() >= cfg.max_rows) continue;

            std::vector<ViewItem> view;
            for (std::size_t ci = 0; ci < ma.columns.size(); ++ci)
                if (!ma.columns[ci].matched())
                    view.push_back({static_cast<int>(ci), ma.columns[ci].token});
            if (view.empty()) continue;
            const std::vector<Bitset> anc = column_ancestors(ma);

            for (const auto& [pid, pattern] : store.patterns()) {
                int appearances = 0;
                for (const auto& row : ma.rows)
                    if (row.appearance.pid == pid) ++appearances;
                if (appearances >= cfg.max_appearances) continue;

                std::vector<std::string> cand_tokens;
                std::vector<double> weights;
                cand_tokens.reserve(pattern.symbols.size());
                for (const Symbol& s : pattern.symbols) {
                    cand_tokens.push_back(s.token);
                    weights.push_back(costs.cost(s.token));
                }
                std::vector<Chain> chains = detail::chain_search(
                    view, anc, ma.columns.size(), cand_tokens, weights, cfg.beam_width);
                for (const Chain& chain : chains) {
                    if (chain.pairs.empty()) continue;
                    MultipleAlignment child = materialize(ma, pattern, chain, view, costs);
                    std::string key = canonical_key(child);
                    if (!seen.insert(key).second) continue;
                    pool.emplace_back(std::move(child), std::move(key));
                }
            }
        }
        if (pool.empty()) break;
        std::sort(pool.begin(), pool.end(), PoolOrder{});
        if (pool.size() > static_cast<std::size_t>(cfg.beam_width))
            pool.resize(cfg.beam_width);
        for (std::size_t i = 0; i < std::min(pool.size(), stage_keep); ++i)
            results.push_back(pool[i]);
        beam = std::move(pool);
    }

    std::sort(results.begin(), results.end(), PoolOrder{});
    std::vector<MultipleAlignment> out;
    for (Entry& entry : results) {
        out.push_back(std::move(entry.first));
        if (static_cast<int>(out.size()) >= cfg.top_k) break;
    }
    return out;
}

} // namespace sp
