#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sp/symbol.hpp"

namespace sp {

using PatternId = std::int32_t;

enum class Provenance : unsigned char {
    Supplied,   // parsed from a grammar file
    Intake,     // a New pattern stored verbatim (plus generated brackets)
    Segmented,  // built from a matched or unmatched run of a partial match
    Abstract    // references component classes created by segmentation
};

// An immutable sequence of symbols with a frequency count. The symbol
// sequence never changes after creation; patterns are created or destroyed,
// nothing in between. prefix_len/suffix_len record the ID fields so the
// textual form can be reproduced exactly.
struct Pattern {
    PatternId pid = 0;
    std::vector<Symbol> symbols;
    std::int64_t frequency = 1;
    Provenance provenance = Provenance::Supplied;
    int prefix_len = 0;
    int suffix_len = 0;

    int size() const { return static_cast<int>(symbols.size()); }
    int body_begin() const { return prefix_len; }
    int body_end() const { return size() - suffix_len; }
    bool in_body(int pos) const { return pos >= body_begin() && pos < body_end(); }

    bool same_sequence(const Pattern& o) const {
        return symbols == o.symbols && prefix_len == o.prefix_len && suffix_len == o.suffix_len;
    }
};

inline void check_pattern(const Pattern& p) {
    if (p.symbols.empty()) throw std::invalid_argument("pattern must have at least one symbol");
    if (p.frequency < 1) throw std::invalid_argument("pattern frequency must be positive");
    if (p.prefix_len < 0 || p.suffix_len < 0 || p.prefix_len + p.suffix_len > p.size())
        throw std::invalid_argument("pattern field layout is inconsistent");
    for (const Symbol& s : p.symbols)
        if (!valid_token(s.token)) throw std::invalid_argument("invalid symbol token: " + s.token);
    for (int i = 0; i < p.prefix_len; ++i)
        if (p.symbols[i].kind != SymbolKind::Id) throw std::invalid_argument("prefix symbols must be ID");
    for (int i = p.body_end(); i < p.size(); ++i)
        if (p.symbols[i].kind != SymbolKind::Id) throw std::invalid_argument("suffix symbols must be ID");
}

} // namespace sp
