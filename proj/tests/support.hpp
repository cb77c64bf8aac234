#pragma once

// Test-only oracles and random instance generators. The oracles stay
// independent of the implementation paths they check: partitionability is
// decided by direct recursion over the raw word list, expansions by direct
// recursion over the rules.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "slpwb/boolmat.hpp"
#include "slpwb/cliquegen.hpp"
#include "slpwb/dictionary.hpp"
#include "slpwb/slp.hpp"
#include "slpwb/types.hpp"

namespace slpwb::test {

using Rng = std::mt19937_64;

// Exhaustive Word Break by memoized recursion against the plain word list.
inline bool oracle_word_break(std::span<const Token> text,
                              const std::vector<SymbolString>& words) {
    std::vector<std::int8_t> memo(text.size() + 1, -1);
    const auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (from == text.size()) return true;
        if (memo[from] >= 0) return memo[from] != 0;
        bool ok = false;
        for (const SymbolString& w : words) {
            if (w.empty() || w.size() > text.size() - from) continue;
            bool eq = true;
            for (std::size_t i = 0; i < w.size() && eq; ++i)
                eq = text[from + i] == w[i];
            if (eq && self(self, from + w.size())) {
                ok = true;
                break;
            }
        }
        memo[from] = ok ? 1 : 0;
        return ok;
    };
    return rec(rec, 0);
}

// Direct recursive expansion, memoized per nonterminal.
inline SymbolString oracle_expand(const Slp& slp, std::uint32_t v) {
    std::map<std::uint32_t, SymbolString> memo;
    const auto rec = [&](auto&& self, std::uint32_t u) -> const SymbolString& {
        auto it = memo.find(u);
        if (it != memo.end()) return it->second;
        const Rule& r = slp.rule(u);
        SymbolString s;
        if (r.is_terminal()) {
            s.push_back(r.token);
        } else {
            const SymbolString& a = self(self, r.left);
            s = a;
            const SymbolString& b = self(self, r.right);
            s.insert(s.end(), b.begin(), b.end());
        }
        return memo.emplace(u, std::move(s)).first->second;
    };
    return rec(rec, v);
}

// Entry (i,j) of the partitionability table straight from its definition.
inline BoolMatrix oracle_part_matrix(const SymbolString& expansion,
                                     const std::vector<SymbolString>& words,
                                     std::uint32_t m) {
    BoolMatrix out(m + 1);
    const std::uint64_t len = expansion.size();
    for (std::uint32_t i = 0; i <= m; ++i)
        for (std::uint32_t j = 0; j <= m; ++j) {
            if (std::uint64_t{i} + j > len) continue;
            const std::span<const Token> mid(expansion.data() + i,
                                             len - i - j);
            if (oracle_word_break(mid, words)) out.set(i, j);
        }
    return out;
}

// Entry (i,j) of the crossing table straight from its definition.
inline BoolMatrix oracle_cross_matrix(const SymbolString& ea,
                                      const SymbolString& eb,
                                      const std::vector<SymbolString>& words,
                                      std::uint32_t m) {
    BoolMatrix out(m + 1);
    for (std::uint32_t i = 0; i <= m; ++i) {
        if (i > ea.size()) continue;
        for (std::uint32_t j = 0; j <= m; ++j) {
            if (j > eb.size()) continue;
            SymbolString w(ea.end() - i, ea.end());
            w.insert(w.end(), eb.begin(), eb.begin() + j);
            bool found = false;
            for (const SymbolString& d : words)
                if (d == w) found = true;
            if (found) out.set(i, j);
        }
    }
    return out;
}

inline SymbolString random_text(Rng& rng, std::size_t max_len,
                                std::uint32_t alphabet, bool allow_empty = false) {
    std::uniform_int_distribution<std::size_t> len_d(allow_empty ? 0 : 1, max_len);
    std::uniform_int_distribution<Token> tok_d(0, alphabet - 1);
    SymbolString s(len_d(rng));
    for (Token& t : s) t = tok_d(rng);
    return s;
}

inline std::vector<SymbolString> random_words(Rng& rng, std::size_t count,
                                              std::uint32_t max_len,
                                              std::uint32_t alphabet) {
    std::vector<SymbolString> words(count);
    for (SymbolString& w : words) w = random_text(rng, max_len, alphabet);
    return words;
}

// Random-shaped grammar for the given text: split points are drawn
// uniformly, so chains, bushes and balanced shapes all occur; the builder's
// sharing turns repeated content into DAG nodes.
inline Slp random_shaped_slp(Rng& rng, const SymbolString& text) {
    SlpBuilder b;
    const auto rec = [&](auto&& self, std::span<const Token> part) -> std::uint32_t {
        if (part.size() == 1) return b.terminal(part[0]);
        std::uniform_int_distribution<std::size_t> split_d(1, part.size() - 1);
        const std::size_t split = split_d(rng);
        const std::uint32_t l = self(self, part.first(split));
        return b.binary(l, self(self, part.subspan(split)));
    };
    const std::uint32_t root = rec(rec, text);
    return std::move(b).finish(root);
}

inline Slp random_slp(Rng& rng, std::size_t max_len, std::uint32_t alphabet) {
    return random_shaped_slp(rng, random_text(rng, max_len, alphabet));
}

// X0 -> a, X_{i+1} -> X_i X_i: the 2^t-repetition grammar.
inline Slp doubling_slp(Token tok, std::uint32_t t) {
    SlpBuilder b;
    std::uint32_t v = b.terminal(tok);
    for (std::uint32_t i = 0; i < t; ++i) v = b.binary(v, v);
    return std::move(b).finish(v);
}

// Left-leaning chain for tok^n (height n-1).
inline Slp chain_slp(Token tok, std::uint32_t n) {
    std::vector<Rule> rules{Rule::make_terminal(tok)};
    for (std::uint32_t i = 1; i < n; ++i)
        rules.push_back(Rule::make_binary(i - 1, 0));
    return validate(std::move(rules), n - 1);
}

// The running 5-rule example grammar for "abbab":
// X1 -> a, X2 -> b, X3 -> X1 X2, X4 -> X3 X2, X5 -> X4 X3 (ids 0-based).
inline Slp abbab_slp() {
    std::vector<Rule> rules{
        Rule::make_terminal('a'), Rule::make_terminal('b'),
        Rule::make_binary(0, 1), Rule::make_binary(2, 1),
        Rule::make_binary(3, 2)};
    return validate(std::move(rules), 4);
}

inline std::vector<SymbolString> ab_b_words() {
    return {{'a', 'b'}, {'b'}};
}

// Every graph on n vertices, as edge bitmasks over the C(n,2) vertex pairs.
inline std::vector<Graph> all_graphs(std::uint32_t n) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t u = 1; u <= n; ++u)
        for (std::uint32_t v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    std::vector<Graph> out;
    out.reserve(std::size_t{1} << pairs.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        Graph g(n);
        for (std::size_t e = 0; e < pairs.size(); ++e)
            if (mask >> e & 1) g.add_edge(pairs[e].first, pairs[e].second);
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace slpwb::test
