#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slpwb/types.hpp"

namespace slpwb {

// Token-labelled trie with CSR storage: each node owns a contiguous,
// token-sorted slice of the edge arrays, looked up by binary search.
class Trie {
public:
    static constexpr std::uint32_t kRoot = 0;
    static constexpr std::uint32_t kNone = 0xffffffffu;

    // Words must be lexicographically sorted and deduplicated.
    static Trie build(std::span<const SymbolString> sorted_words);

    std::uint32_t child(std::uint32_t node, Token t) const;
    bool is_word(std::uint32_t node) const { return terminal_[node]; }
    std::size_t node_count() const { return terminal_.size(); }

private:
    std::vector<std::uint32_t> edge_begin_; // size node_count+1
    std::vector<Token> edge_token_;
    std::vector<std::uint32_t> edge_child_;
    std::vector<std::uint8_t> terminal_;
};

// Stateful walk along a trie; goes dead on the first missing edge and stays
// dead.
class TrieCursor {
public:
    explicit TrieCursor(const Trie& trie) : trie_(&trie) {}

    bool step(Token t) {
        if (node_ == Trie::kNone) return false;
        node_ = trie_->child(node_, t);
        return node_ != Trie::kNone;
    }
    bool alive() const { return node_ != Trie::kNone; }
    bool at_word() const { return node_ != Trie::kNone && trie_->is_word(node_); }

private:
    const Trie* trie_;
    std::uint32_t node_ = Trie::kRoot;
};

// A finite word set with forward and reversed-word tries. Words are
// deduplicated; the empty word is rejected. Immutable after build; all
// queries are safe for unsynchronized concurrent use.
class Dictionary {
public:
    Dictionary() : forward_(Trie::build({})), reverse_(Trie::build({})) {}
    explicit Dictionary(std::vector<SymbolString> words);

    std::size_t word_count() const { return word_count_; }   // K
    std::uint32_t max_word_len() const { return max_len_; }  // m
    std::uint64_t total_len() const { return total_len_; }   // M

    bool contains(std::span<const Token> word) const;

    // All lengths l in [1..m] such that text[from .. from+l-1] is a word
    // (0-based from), ascending. O(min(m, |text|-from)) trie steps.
    void scan_matches(std::span<const Token> text, std::size_t from,
                      std::vector<std::uint32_t>& out) const;
    std::vector<std::uint32_t> scan_matches(std::span<const Token> text,
                                            std::size_t from) const {
        std::vector<std::uint32_t> out;
        scan_matches(text, from, out);
        return out;
    }

    // All lengths l such that the last l tokens of buffer (newest last) form
    // a word; walks the reversed-word trie backwards from the newest token.
    void rev_scan(std::span<const Token> buffer, std::vector<std::uint32_t>& out) const;
    std::vector<std::uint32_t> rev_scan(std::span<const Token> buffer) const {
        std::vector<std::uint32_t> out;
        rev_scan(buffer, out);
        return out;
    }

    TrieCursor forward_cursor() const { return TrieCursor(forward_); }

private:
    std::size_t word_count_ = 0;
    std::uint32_t max_len_ = 0;
    std::uint64_t total_len_ = 0;
    Trie forward_;
    Trie reverse_;
};

} // namespace slpwb
