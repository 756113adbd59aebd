#include "sp/score.hpp"

#include <algorithm>
#include <cmath>

#include "sp/encode.hpp"

namespace sp {

SymbolCosts::SymbolCosts(const Store& store)
    : SymbolCosts(store.symbol_frequencies(), store.total_mass()) {}

SymbolCosts::SymbolCosts(const std::unordered_map<std::string, std::int64_t>& freq,
                         std::int64_t mass)
    : freq_(&freq), mass_(static_cast<double>(std::max<std::int64_t>(mass, 1))) {
    log_mass_ = std::log2(mass_);
}

double SymbolCosts::cost(const std::string& token) const {
    auto it = freq_->find(token);
    const double f = it == freq_->end() ? 1.0 : static_cast<double>(std::max<std::int64_t>(it->second, 1));
    return log_mass_ - std::log2(f);
}

CompressionScore score(const MultipleAlignment& ma, const SymbolCosts& costs) {
    CompressionScore s;
    if (ma.rows.empty()) return s;

    // matched New symbols, summed over the token-sorted multiset
    std::vector<std::string> matched_new;
    const auto& row0_cols = ma.column_of[0];
    for (std::size_t p = 0; p < row0_cols.size(); ++p)
        if (ma.columns[row0_cols[p]].matched())
            matched_new.push_back(ma.rows[0].symbols[p].token);
    const double covered = static_cast<double>(matched_new.size());
    std::sort(matched_new.begin(), matched_new.end());
    for (const auto& t : matched_new) s.b_new += costs.cost(t);

    std::vector<Symbol> code = derive_code_pattern(ma);
    std::vector<std::string> code_tokens;
    code_tokens.reserve(code.size());
    for (const Symbol& sym : code) code_tokens.push_back(sym.token);
    std::sort(code_tokens.begin(), code_tokens.end());
    for (const auto& t : code_tokens) s.b_enc += costs.cost(t);

    s.cd = s.b_new - s.b_enc;
    s.coverage = ma.rows[0].symbols.empty() ? 0.0
                                            : covered / static_cast<double>(ma.rows[0].symbols.size());
    return s;
}

CompressionScore score(const MultipleAlignment& ma, const Store& store) {
    return score(ma, SymbolCosts(store));
}

} // namespace sp
