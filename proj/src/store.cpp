#include "sp/store.hpp"

#include <stdexcept>

namespace sp {

std::string Store::sequence_key(const Pattern& p) {
    std::string key;
    key.reserve(p.symbols.size() * 6);
    key += std::to_string(p.prefix_len);
    key += '/';
    key += std::to_string(p.suffix_len);
    for (const Symbol& s : p.symbols) {
        key += s.kind == SymbolKind::Id ? '\x01' : '\x02';
        key += s.token;
    }
    return key;
}

void Store::add_mass(const Pattern& p, std::int64_t delta_freq) {
    for (const Symbol& s : p.symbols) {
        symbol_freq_[s.token] += delta_freq;
        total_mass_ += delta_freq;
        if (symbol_freq_[s.token] == 0) symbol_freq_.erase(s.token);
    }
}

PatternId Store::insert(std::vector<Symbol> symbols, std::int64_t frequency, Provenance provenance,
                        int prefix_len, int suffix_len) {
    Pattern p;
    p.symbols = std::move(symbols);
    p.frequency = frequency;
    p.provenance = provenance;
    p.prefix_len = prefix_len;
    p.suffix_len = suffix_len;
    return insert(std::move(p));
}

PatternId Store::insert(Pattern p) {
    check_pattern(p);
    const std::string key = sequence_key(p);
    auto it = by_sequence_.find(key);
    if (it != by_sequence_.end()) {
        Pattern& existing = patterns_.at(it->second);
        existing.frequency += p.frequency;
        add_mass(existing, p.frequency);
        return existing.pid;
    }
    p.pid = next_pid_++;
    add_mass(p, p.frequency);
    by_sequence_.emplace(key, p.pid);
    PatternId pid = p.pid;
    patterns_.emplace(pid, std::move(p));
    return pid;
}

const Pattern& Store::at(PatternId pid) const {
    auto it = patterns_.find(pid);
    if (it == patterns_.end()) throw std::out_of_range("unknown pattern id " + std::to_string(pid));
    return it->second;
}

void Store::increment_frequency(PatternId pid) {
    auto it = patterns_.find(pid);
    if (it == patterns_.end()) throw std::out_of_range("unknown pattern id " + std::to_string(pid));
    it->second.frequency += 1;
    add_mass(it->second, 1);
}

void Store::destroy(PatternId pid) {
    auto it = patterns_.find(pid);
    if (it == patterns_.end()) throw std::out_of_range("unknown pattern id " + std::to_string(pid));
    by_sequence_.erase(sequence_key(it->second));
    patterns_.erase(it);
    // rebuild the frequency table from scratch
    symbol_freq_.clear();
    total_mass_ = 0;
    for (const auto& [id, p] : patterns_) add_mass(p, p.frequency);
}

std::int64_t Store::symbol_frequency(const std::string& token) const {
    auto it = symbol_freq_.find(token);
    return it == symbol_freq_.end() ? 0 : it->second;
}

IdTriple Store::fresh_ids() {
    const int k = next_class_++;
    next_member_[k] = 1;
    return next_member_ids(k);
}

IdTriple Store::next_member_ids(int class_index) {
    if (class_index <= 0 || class_index >= next_class_)
        throw std::out_of_range("unknown class index " + std::to_string(class_index));
    int& m = next_member_[class_index];
    if (m == 0) m = 1;
    IdTriple t;
    t.class_index = class_index;
    t.class_open = "%" + std::to_string(class_index);
    t.member = std::to_string(m);
    t.class_close = "#%" + std::to_string(class_index);
    ++m;
    return t;
}

bool Store::consistent() const {
    std::unordered_map<std::string, std::int64_t> recomputed;
    std::int64_t mass = 0;
    for (const auto& [pid, p] : patterns_) {
        for (const Symbol& s : p.symbols) {
            recomputed[s.token] += p.frequency;
            mass += p.frequency;
        }
    }
    return recomputed == symbol_freq_ && mass == total_mass_;
}

} // namespace sp
