#pragma once

#include <string>
#include <unordered_map>

#include "sp/alignment.hpp"
#include "sp/store.hpp"

namespace sp {

// Shannon symbol costs over the store's frequency table:
//   c(t) = -log2(f(t) / F), with f(t) = 1 for unseen tokens and F the
// store's total mass (at least 1). Costs are non-negative.
class SymbolCosts {
public:
    explicit SymbolCosts(const Store& store);
    SymbolCosts(const std::unordered_map<std::string, std::int64_t>& freq, std::int64_t mass);
    double cost(const std::string& token) const;
    double total_mass() const { return mass_; }

private:
    const std::unordered_map<std::string, std::int64_t>* freq_;
    double mass_ = 1.0;
    double log_mass_ = 0.0;
};

// b_new: cost of row-0 symbols sitting in matched columns.
// b_enc: cost of the code pattern (unmatched ID symbols, any row).
// cd = b_new - b_enc. Both sums run over token-sorted multisets so that
// structurally equal alignments score bit-identically regardless of row
// order or construction order.
CompressionScore score(const MultipleAlignment& ma, const SymbolCosts& costs);
CompressionScore score(const MultipleAlignment& ma, const Store& store);

} // namespace sp
