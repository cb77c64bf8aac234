#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slpwb {

// Symbols are integer tokens, not characters: the clique-reduction instances
// need alphabets of size N+7 while plain text maps each byte to one token.
using Token = std::uint32_t;
using SymbolString = std::vector<Token>;

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file or grammar (syntax, duplicate id, cycle, ...).
struct ParseError : Error {
    using Error::Error;
};

// Position arguments outside [1..N], i > j, unknown nonterminal.
struct RangeError : Error {
    using Error::Error;
};

// An operation refused because its output would exceed the caller's limit
// (expansion-too-large, index memory cap).
struct LimitError : Error {
    using Error::Error;
};

inline SymbolString tokens_of(std::string_view bytes) {
    SymbolString s;
    s.reserve(bytes.size());
    for (unsigned char c : bytes) s.push_back(static_cast<Token>(c));
    return s;
}

} // namespace slpwb
