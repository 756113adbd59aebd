#pragma once

#include <stdexcept>
#include <vector>

#include "sp/search.hpp"

namespace sp {

struct RegenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The code pattern of an alignment: the ID symbols that sit in unmatched
// columns, in column order. May be empty.
std::vector<Symbol> derive_code_pattern(const MultipleAlignment& ma);

// The surface of an alignment: one token per column whose cells are all
// contents symbols, in column order.
std::vector<Symbol> extract_surface(const MultipleAlignment& ma);

// Feeds the code back as a New pattern over the same store and reads the
// surface off the best alignment. Throws RegenerationError when no
// alignment covers every code symbol.
std::vector<Symbol> regenerate(const std::vector<Symbol>& code,
                               const Store& store,
                               const SearchConfig& cfg);

} // namespace sp
