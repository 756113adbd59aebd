#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sp {

// A symbol is an atomic mark; two symbols match iff their tokens are equal.
// Kind::Id marks service symbols (class brackets, member marks, references);
// Kind::Contents marks surface material. Matching ignores kind, encoding
// does not.
enum class SymbolKind : unsigned char { Id, Contents };

struct Symbol {
    std::string token;
    SymbolKind kind = SymbolKind::Contents;

    bool operator==(const Symbol& o) const { return token == o.token && kind == o.kind; }
    bool operator!=(const Symbol& o) const { return !(*this == o); }
};

// Tokens may not be empty, contain whitespace or '|', or start with ';'.
bool valid_token(std::string_view token);

inline Symbol id_symbol(std::string token) { return {std::move(token), SymbolKind::Id}; }
inline Symbol contents_symbol(std::string token) { return {std::move(token), SymbolKind::Contents}; }

std::vector<Symbol> contents_sequence(const std::vector<std::string>& tokens);
std::string join_tokens(const std::vector<Symbol>& symbols);

} // namespace sp
