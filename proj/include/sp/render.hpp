#pragma once

#include <string>

#include "sp/alignment.hpp"

namespace sp {

// Plain-text rendering: one line per row (row 0 first) with unified symbols
// vertically aligned, '|' marks drawn between the rows a column connects.
// Layout is documented in docs/ALIGNMENT_FORMAT.md and is parseable back to
// the (rows, columns) structure.
std::string render(const MultipleAlignment& ma);

} // namespace sp
