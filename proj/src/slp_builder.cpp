#include "slpwb/slp.hpp"

#include <algorithm>

namespace slpwb {

namespace {
constexpr std::uint64_t kMaxLen = std::uint64_t{1} << 63;
}

std::uint32_t SlpBuilder::terminal(Token t) {
    const auto [it, inserted] =
        terminal_cache_.try_emplace(std::uint64_t{t}, 0);
    if (inserted) {
        it->second = static_cast<std::uint32_t>(rules_.size());
        rules_.push_back(Rule::make_terminal(t));
        len_.push_back(1);
        height_.push_back(0);
    }
    return it->second;
}

std::uint32_t SlpBuilder::binary(std::uint32_t left, std::uint32_t right) {
    const std::uint64_t key = (std::uint64_t{left} << 32) | right;
    const auto [it, inserted] = pair_cache_.try_emplace(key, 0);
    if (inserted) {
        if (len_[left] >= kMaxLen - len_[right])
            throw ParseError("expansion length overflow");
        it->second = static_cast<std::uint32_t>(rules_.size());
        rules_.push_back(Rule::make_binary(left, right));
        len_.push_back(len_[left] + len_[right]);
        height_.push_back(1 + std::max(height_[left], height_[right]));
    }
    return it->second;
}

std::uint32_t SlpBuilder::balanced_concat(std::span<const std::uint32_t> parts) {
    if (parts.empty()) throw ParseError("empty concatenation");
    if (parts.size() == 1) return parts[0];
    const std::size_t mid = parts.size() / 2;
    return binary(balanced_concat(parts.first(mid)),
                  balanced_concat(parts.subspan(mid)));
}

std::uint32_t SlpBuilder::balanced_tokens(std::span<const Token> tokens) {
    if (tokens.empty()) throw ParseError("empty text");
    if (tokens.size() == 1) return terminal(tokens[0]);
    const std::size_t mid = tokens.size() / 2;
    return binary(balanced_tokens(tokens.first(mid)),
                  balanced_tokens(tokens.subspan(mid)));
}

// rotateLeft(node(l, r)): r must be binary.
std::uint32_t SlpBuilder::rotate_left(std::uint32_t l, std::uint32_t r) {
    const Rule& rr = rules_[r];
    return node(node(l, rr.left), rr.right);
}

// rotateRight(node(l, r)): l must be binary.
std::uint32_t SlpBuilder::rotate_right(std::uint32_t l, std::uint32_t r) {
    const Rule& rl = rules_[l];
    return node(rl.left, node(rl.right, r));
}

// AVL join of a taller left tree with a right tree, path-copying along the
// right spine. Precondition: height(tall) >= height(low) + 2.
std::uint32_t SlpBuilder::avl_join_right(std::uint32_t tall, std::uint32_t low) {
    const Rule r = rules_[tall];
    const std::uint32_t l = r.left, c = r.right;
    if (height_[c] <= height_[low] + 1) {
        const std::uint32_t t = node(c, low);
        if (height_[t] <= height_[l] + 1) return node(l, t);
        return rotate_left(l, rotate_right(c, low));
    }
    const std::uint32_t t = avl_join_right(c, low);
    if (height_[t] <= height_[l] + 1) return node(l, t);
    return rotate_left(l, t);
}

std::uint32_t SlpBuilder::avl_join_left(std::uint32_t low, std::uint32_t tall) {
    const Rule r = rules_[tall];
    const std::uint32_t c = r.left, rr = r.right;
    if (height_[c] <= height_[low] + 1) {
        const std::uint32_t t = node(low, c);
        if (height_[t] <= height_[rr] + 1) return node(t, rr);
        return rotate_right(rotate_left(low, c), rr);
    }
    const std::uint32_t t = avl_join_left(low, c);
    if (height_[t] <= height_[rr] + 1) return node(t, rr);
    return rotate_right(t, rr);
}

std::uint32_t SlpBuilder::avl_concat(std::uint32_t left, std::uint32_t right) {
    const std::uint32_t hl = height_[left], hr = height_[right];
    if (hl > hr + 1) return avl_join_right(left, right);
    if (hr > hl + 1) return avl_join_left(left, right);
    return node(left, right);
}

Slp SlpBuilder::finish(std::uint32_t root, std::uint32_t alphabet_size) && {
    if (root >= rules_.size()) throw ParseError("builder root id out of range");

    // Hash-consing and rotations leave garbage nodes; keep only what the
    // root reaches, preserving relative order (children were created first).
    std::vector<std::uint8_t> reach(rules_.size(), 0);
    std::vector<std::uint32_t> stack{root};
    reach[root] = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        const Rule& r = rules_[v];
        if (r.is_terminal()) continue;
        for (std::uint32_t c : {r.left, r.right})
            if (!reach[c]) {
                reach[c] = 1;
                stack.push_back(c);
            }
    }
    std::vector<std::uint32_t> remap(rules_.size(), 0);
    std::vector<Rule> kept;
    for (std::uint32_t v = 0; v < rules_.size(); ++v) {
        if (!reach[v]) continue;
        remap[v] = static_cast<std::uint32_t>(kept.size());
        Rule r = rules_[v];
        if (!r.is_terminal()) {
            r.left = remap[r.left];
            r.right = remap[r.right];
        }
        kept.push_back(r);
    }
    return validate(std::move(kept), remap[root], alphabet_size);
}

Slp build_balanced_slp(const SymbolString& text, std::uint32_t alphabet_size) {
    if (text.empty()) throw ParseError("empty text");
    SlpBuilder b;
    const std::uint32_t root = b.balanced_tokens(text);
    return std::move(b).finish(root, alphabet_size);
}

Slp balance(const Slp& slp) {
    SlpBuilder b;
    std::vector<std::uint32_t> mapped(slp.rule_count(), 0);
    for (std::uint32_t v : slp.topo_order()) {
        const Rule& r = slp.rule(v);
        mapped[v] = r.is_terminal() ? b.terminal(r.token)
                                    : b.avl_concat(mapped[r.left], mapped[r.right]);
    }
    return std::move(b).finish(mapped[slp.root()], slp.alphabet_size());
}

} // namespace slpwb
