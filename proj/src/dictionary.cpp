#include "slpwb/dictionary.hpp"

#include <algorithm>

namespace slpwb {

Trie Trie::build(std::span<const SymbolString> sorted_words) {
    // Pass 1: linked sibling lists. Sorted insertion appends every new child
    // at the tail, so sibling lists stay token-sorted.
    struct BuildNode {
        std::uint32_t first_child = kNone;
        std::uint32_t last_child = kNone;
        std::uint32_t next_sibling = kNone;
        Token token = 0;
        bool terminal = false;
    };
    std::vector<BuildNode> nodes(1);
    std::vector<std::uint32_t> path{kRoot}; // nodes along the previous word
    const SymbolString* prev = nullptr;

    for (const SymbolString& w : sorted_words) {
        std::size_t common = 0;
        if (prev) {
            const std::size_t lim = std::min(prev->size(), w.size());
            while (common < lim && (*prev)[common] == w[common]) ++common;
        }
        path.resize(common + 1);
        for (std::size_t d = common; d < w.size(); ++d) {
            const auto id = static_cast<std::uint32_t>(nodes.size());
            nodes.push_back({});
            nodes[id].token = w[d];
            BuildNode& parent = nodes[path.back()];
            if (parent.last_child == kNone)
                parent.first_child = id;
            else
                nodes[parent.last_child].next_sibling = id;
            parent.last_child = id;
            path.push_back(id);
        }
        nodes[path.back()].terminal = true;
        prev = &w;
    }

    // Pass 2: flatten to CSR.
    Trie t;
    const std::size_t n = nodes.size();
    t.edge_begin_.assign(n + 1, 0);
    t.terminal_.resize(n);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
        t.terminal_[v] = nodes[v].terminal;
        std::uint32_t deg = 0;
        for (std::uint32_t c = nodes[v].first_child; c != kNone;
             c = nodes[c].next_sibling)
            ++deg;
        t.edge_begin_[v + 1] = static_cast<std::uint32_t>(edges += deg);
    }
    t.edge_token_.resize(edges);
    t.edge_child_.resize(edges);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t at = t.edge_begin_[v];
        for (std::uint32_t c = nodes[v].first_child; c != kNone;
             c = nodes[c].next_sibling) {
            t.edge_token_[at] = nodes[c].token;
            t.edge_child_[at] = c;
            ++at;
        }
    }
    return t;
}

std::uint32_t Trie::child(std::uint32_t node, Token t) const {
    const std::uint32_t lo = edge_begin_[node], hi = edge_begin_[node + 1];
    const auto first = edge_token_.begin() + lo;
    const auto last = edge_token_.begin() + hi;
    const auto it = std::lower_bound(first, last, t);
    if (it == last || *it != t) return kNone;
    return edge_child_[lo + static_cast<std::uint32_t>(it - first)];
}

Dictionary::Dictionary(std::vector<SymbolString> words)
    : forward_(Trie::build({})), reverse_(Trie::build({})) {
    for (const SymbolString& w : words)
        if (w.empty()) throw ParseError("empty dictionary word");

    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    word_count_ = words.size();
    for (const SymbolString& w : words) {
        total_len_ += w.size();
        max_len_ = std::max<std::uint32_t>(max_len_,
                                           static_cast<std::uint32_t>(w.size()));
    }
    forward_ = Trie::build(words);

    for (SymbolString& w : words) std::reverse(w.begin(), w.end());
    std::sort(words.begin(), words.end());
    reverse_ = Trie::build(words);
}

bool Dictionary::contains(std::span<const Token> word) const {
    if (word.empty()) return false;
    TrieCursor c(forward_);
    for (Token t : word)
        if (!c.step(t)) return false;
    return c.at_word();
}

void Dictionary::scan_matches(std::span<const Token> text, std::size_t from,
                              std::vector<std::uint32_t>& out) const {
    out.clear();
    TrieCursor c(forward_);
    const std::size_t stop = std::min<std::size_t>(text.size(), from + max_len_);
    for (std::size_t p = from; p < stop; ++p) {
        if (!c.step(text[p])) return;
        if (c.at_word()) out.push_back(static_cast<std::uint32_t>(p - from + 1));
    }
}

void Dictionary::rev_scan(std::span<const Token> buffer,
                          std::vector<std::uint32_t>& out) const {
    out.clear();
    TrieCursor c(reverse_);
    const std::size_t steps = std::min<std::size_t>(buffer.size(), max_len_);
    for (std::size_t l = 1; l <= steps; ++l) {
        if (!c.step(buffer[buffer.size() - l])) return;
        if (c.at_word()) out.push_back(static_cast<std::uint32_t>(l));
    }
}

} // namespace slpwb
