#pragma once

// Internal: weighted chain matching of a candidate symbol sequence against a
// partially ordered view of alignment columns. Shared by align_pair and the
// beam search; not part of the public API.

#include <cstdint>
#include <string>
#include <vector>

namespace sp::detail {

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void merge(const Bitset& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    }

private:
    std::vector<std::uint64_t> words_;
};

struct ViewItem {
    int column = 0; // index into the alignment's column order
    std::string token;
};

// ancestors[c] must contain every column strictly preceding c in the
// partial order (transitively closed). A chain picks view items for
// strictly increasing candidate positions such that no picked column
// precedes-or-equals an earlier pick; incomparable columns are allowed and
// become ordered by the candidate row itself.
struct Chain {
    std::vector<std::pair<int, int>> pairs; // (view index, candidate position)
    double weight = 0.0;
    Bitset forbidden;                       // columns ⪯ some picked column
};

std::vector<Chain> chain_search(const std::vector<ViewItem>& view,
                                const std::vector<Bitset>& ancestors,
                                std::size_t column_count,
                                const std::vector<std::string>& candidate_tokens,
                                const std::vector<double>& token_weight,
                                int max_results);

} // namespace sp::detail
