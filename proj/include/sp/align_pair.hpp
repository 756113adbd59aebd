#pragma once

#include <utility>
#include <vector>

#include "sp/score.hpp"

namespace sp {

// A pairwise match set: (base position, candidate position) pairs, strictly
// increasing in both coordinates, token-equal in every pair.
using MatchSet = std::vector<std::pair<int, int>>;

// Order-preserving weighted matching of candidate against base. Returns the
// best max_results maximal match sets by weight (sum of c(token) over
// pairs), deterministically ordered; an empty match set is returned when no
// pair of positions shares a token.
std::vector<MatchSet> align_pair(const std::vector<Symbol>& base,
                                 const std::vector<Symbol>& candidate,
                                 const SymbolCosts& costs,
                                 int max_results);

std::vector<MatchSet> align_pair(const std::vector<Symbol>& base,
                                 const Pattern& candidate,
                                 const Store& store,
                                 int max_results);

} // namespace sp
