#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sp/pattern.hpp"

namespace sp {

// Generated bracket triple: class-open token, member token, class-close token.
struct IdTriple {
    int class_index = 0;
    std::string class_open;
    std::string member;
    std::string class_close;
};

// The repository of Old patterns plus the symbol-frequency table used for
// scoring. symbol_freq[t] always equals the occurrence-weighted total over
// stored patterns; duplicates merge by frequency addition. Concurrency:
// many readers or one writer, callers synchronise.
class Store {
public:
    // Inserts a pattern (pid is assigned); a pattern with an identical
    // symbol sequence merges into the existing entry instead. Returns the
    // pid that now holds the sequence.
    PatternId insert(std::vector<Symbol> symbols, std::int64_t frequency, Provenance provenance,
                     int prefix_len, int suffix_len);
    PatternId insert(Pattern p);

    bool contains(PatternId pid) const { return patterns_.count(pid) != 0; }
    const Pattern& at(PatternId pid) const;
    const std::map<PatternId, Pattern>& patterns() const { return patterns_; }
    std::size_t size() const { return patterns_.size(); }
    bool empty() const { return patterns_.empty(); }

    void increment_frequency(PatternId pid);
    void destroy(PatternId pid);

    std::int64_t symbol_frequency(const std::string& token) const;
    std::int64_t total_mass() const { return total_mass_; }
    const std::unordered_map<std::string, std::int64_t>& symbol_frequencies() const {
        return symbol_freq_;
    }

    // Deterministic ID generation: class k yields tokens %k / m / #%k.
    // fresh_ids opens a new class with member 1; next_member_ids issues the
    // next member of an existing class.
    IdTriple fresh_ids();
    IdTriple next_member_ids(int class_index);
    int next_class_index() const { return next_class_; }

    // True when the maintained frequency table equals a from-scratch
    // recomputation. Cheap enough to assert in tests after every mutation.
    bool consistent() const;

private:
    void add_mass(const Pattern& p, std::int64_t delta_freq);
    static std::string sequence_key(const Pattern& p);

    std::map<PatternId, Pattern> patterns_;
    std::unordered_map<std::string, std::int64_t> symbol_freq_;
    std::unordered_map<std::string, PatternId> by_sequence_;
    std::int64_t total_mass_ = 0;
    PatternId next_pid_ = 1;
    int next_class_ = 1;
    std::map<int, int> next_member_;
};

} // namespace sp
