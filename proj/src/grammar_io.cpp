#include "sp/grammar_io.hpp"

#include <sstream>
#include <unordered_set>

namespace sp {

namespace {

struct RawLine {
    int line_no = 0;
    std::int64_t frequency = 1;
    std::vector<std::string> prefix, body, suffix;
    bool piped = false;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_frequency(const std::string& tok, std::int64_t& out) {
    if (tok.rfind("freq=", 0) != 0) return false;
    const std::string num = tok.substr(5);
    if (num.empty()) throw std::invalid_argument("empty freq value");
    for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad freq value '" + num + "'");
    out = std::stoll(num);
    if (out < 1) throw std::invalid_argument("freq must be positive");
    return true;
}

RawLine scan_line(const std::string& line, int line_no) {
    RawLine raw;
    raw.line_no = line_no;
    std::vector<std::string> toks = split_ws(line);
    std::size_t i = 0;
    try {
        if (!toks.empty() && parse_frequency(toks[0], raw.frequency)) i = 1;
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }

    int pipes = 0;
    std::vector<std::string>* field = &raw.prefix;
    for (; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t == "|") {
            ++pipes;
            field = pipes == 1 ? &raw.body : &raw.suffix;
            continue;
        }
        if (t.find('|') != std::string::npos)
            throw ParseError(line_no, "token '" + t + "' contains '|'");
        if (!valid_token(t)) throw ParseError(line_no, "invalid token '" + t + "'");
        field->push_back(t);
    }
    if (pipes != 0 && pipes != 2)
        throw ParseError(line_no, "expected 0 or 2 '|' separators, found " + std::to_string(pipes));
    raw.piped = pipes == 2;
    if (!raw.piped) {
        // a line with no '|' is an all-contents pattern
        raw.body = std::move(raw.prefix);
        raw.prefix.clear();
    }
    if (raw.prefix.empty() && raw.body.empty() && raw.suffix.empty())
        throw ParseError(line_no, "empty body and empty ID fields");
    return raw;
}

} // namespace

Store parse_grammar(const std::string& text) {
    std::vector<RawLine> lines;
    std::unordered_set<std::string> id_field_tokens;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == ';') continue;
        RawLine raw = scan_line(line, line_no);
        for (const auto& t : raw.prefix) id_field_tokens.insert(t);
        for (const auto& t : raw.suffix) id_field_tokens.insert(t);
        lines.push_back(std::move(raw));
    }

    Store store;
    for (const RawLine& raw : lines) {
        std::vector<Symbol> symbols;
        symbols.reserve(raw.prefix.size() + raw.body.size() + raw.suffix.size());
        for (const auto& t : raw.prefix) symbols.push_back(id_symbol(t));
        for (const auto& t : raw.body) {
            // body tokens naming another pattern's ID field are references
            SymbolKind kind =
                id_field_tokens.count(t) ? SymbolKind::Id : SymbolKind::Contents;
            symbols.push_back({t, kind});
        }
        for (const auto& t : raw.suffix) symbols.push_back(id_symbol(t));
        store.insert(std::move(symbols), raw.frequency, Provenance::Supplied,
                     static_cast<int>(raw.prefix.size()), static_cast<int>(raw.suffix.size()));
    }
    return store;
}

std::string serialize_grammar(const Store& store) {
    std::ostringstream out;
    for (const auto& [pid, p] : store.patterns()) {
        if (p.frequency != 1) out << "freq=" << p.frequency << ' ';
        const bool has_ids = p.prefix_len > 0 || p.suffix_len > 0;
        bool first = true;
        auto emit = [&](const std::string& tok) {
            if (!first) out << ' ';
            out << tok;
            first = false;
        };
        for (int i = 0; i < p.prefix_len; ++i) emit(p.symbols[i].token);
        if (has_ids) emit("|");
        for (int i = p.body_begin(); i < p.body_end(); ++i) emit(p.symbols[i].token);
        if (has_ids) emit("|");
        for (int i = p.body_end(); i < p.size(); ++i) emit(p.symbols[i].token);
        out << '\n';
    }
    return out.str();
}

} // namespace sp
