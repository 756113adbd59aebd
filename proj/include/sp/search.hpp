#pragma once

#include <vector>

#include "sp/alignment.hpp"
#include "sp/score.hpp"
#include "sp/store.hpp"

namespace sp {

struct SearchConfig {
    int beam_width = 50;
    int max_rows = 20;        // total rows including the New row
    int max_appearances = 10; // per pattern within one alignment
    int top_k = 5;

    void check() const;
};

// Staged beam search: the beam starts from the trivial alignment (row 0
// only); each stage extends every member by one Old-pattern appearance
// matched against the member's unmatched symbols, re-scores by cd and keeps
// the best beam_width members (ties: fewer rows, then lexicographic row-pid
// sequence). Stages continue until no member yields a new extension or
// max_rows is reached; the top_k distinct alignments seen anywhere during
// the search are returned, best first. Deterministic for fixed inputs.
std::vector<MultipleAlignment> build_alignments(const Pattern& new_pattern,
                                                const Store& store,
                                                const SearchConfig& cfg);

} // namespace sp
