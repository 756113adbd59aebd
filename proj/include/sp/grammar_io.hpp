#pragma once

#include <stdexcept>
#include <string>

#include "sp/store.hpp"

namespace sp {

struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Grammar file format, one pattern per line:
//   [freq=<n>] <id-prefix tokens> | <body tokens> | <id-suffix tokens>
// A line with no '|' is an all-contents pattern. Lines starting with ';'
// are comments, blank lines are ignored. Body tokens that occur in any
// line's ID field are references and carry ID kind.
Store parse_grammar(const std::string& text);
std::string serialize_grammar(const Store& store);

} // namespace sp
