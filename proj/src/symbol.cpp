#include "sp/symbol.hpp"

#include <cctype>

namespace sp {

bool valid_token(std::string_view token) {
    if (token.empty()) return false;
    if (token.front() == ';') return false;
    for (char c : token) {
        if (c == '|') return false;
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<Symbol> contents_sequence(const std::vector<std::string>& tokens) {
    std::vector<Symbol> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(contents_symbol(t));
    return out;
}

std::string join_tokens(const std::vector<Symbol>& symbols) {
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ' ';
        out += symbols[i].token;
    }
    return out;
}

} // namespace sp
