#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "slpwb/types.hpp"

namespace slpwb {

// One production. Terminals expand to a single token; binary rules
// concatenate the expansions of two other rules.
struct Rule {
    enum class Kind : std::uint8_t { terminal, binary };

    static Rule make_terminal(Token t) {
        Rule r;
        r.kind = Kind::terminal;
        r.token = t;
        return r;
    }
    static Rule make_binary(std::uint32_t l, std::uint32_t r_) {
        Rule r;
        r.kind = Kind::binary;
        r.left = l;
        r.right = r_;
        return r;
    }

    bool is_terminal() const { return kind == Kind::terminal; }

    Kind kind = Kind::terminal;
    Token token = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
};

// A binary straight-line program: one rule per nonterminal, acyclic, every
// rule reachable from the root, so the grammar derives exactly one string.
// Shared subtrees (DAG shape) are permitted and expected. Immutable after
// validate(); all operations below are read-only and thread-safe.
class Slp {
public:
    std::size_t rule_count() const { return rules_.size(); }
    std::uint32_t root() const { return root_; }
    std::uint32_t alphabet_size() const { return alphabet_size_; }
    const Rule& rule(std::uint32_t v) const { return rules_[v]; }

    // Expansion length of a nonterminal; text_len() is the whole string.
    std::uint64_t len(std::uint32_t v) const { return len_[v]; }
    std::uint64_t text_len() const { return len_[root_]; }
    std::uint32_t height(std::uint32_t v) const { return height_[v]; }
    std::uint32_t height() const { return height_[root_]; }

    // Rule ids in dependency order (children before parents).
    std::span<const std::uint32_t> topo_order() const { return topo_; }

    void check_node(std::uint32_t v) const {
        if (v >= rules_.size())
            throw RangeError("unknown nonterminal id " + std::to_string(v));
    }

private:
    friend Slp validate(std::vector<Rule> rules, std::uint32_t root,
                        std::uint32_t alphabet_size,
                        const std::vector<std::uint32_t>* rule_lines);
    friend class SlpBuilder;

    std::vector<Rule> rules_;
    std::uint32_t root_ = 0;
    std::uint32_t alphabet_size_ = 0;
    std::vector<std::uint64_t> len_;
    std::vector<std::uint32_t> height_;
    std::vector<std::uint32_t> topo_;
};

// A whole-subtree piece of a decomposition cover: exp(node) has the given
// length and the covered substring is the concatenation of segment expansions.
struct Segment {
    std::uint32_t node;
    std::uint64_t length;
};

// Checks acyclicity, reachability from root, child references, token range,
// and computes the len/height/topological caches. Throws ParseError naming
// the offending rule (and its input line when rule_lines is supplied).
// alphabet_size 0 means "infer as max token + 1".
Slp validate(std::vector<Rule> rules, std::uint32_t root,
             std::uint32_t alphabet_size = 0,
             const std::vector<std::uint32_t>* rule_lines = nullptr);

// Text format, one directive per line:
//   # comment
//   A <alphabet_size>          (optional)
//   R <id> T <token>           terminal rule
//   R <id> N <left> <right>    binary rule
//   S <root>
// Ids are decimal, 0-based, unique, and must form a contiguous range.
Slp parse_slp(std::istream& in);
Slp parse_slp(const std::string& text);

void write_slp(std::ostream& out, const Slp& slp,
               std::span<const std::string> header_comments = {});

enum class Affix { prefix, suffix };

// exp(root), refused when longer than limit.
SymbolString expand(const Slp& slp, std::uint64_t limit);

// First (resp. last) min(t, len(v)) tokens of exp(v) in O(t + height).
SymbolString expand_affix(const Slp& slp, std::uint32_t v, std::uint64_t t,
                          Affix side);

// exp(root)[i..j], 1-based inclusive, in O(j-i+1 + height). Empty ranges
// (i > j) are rejected.
SymbolString extract(const Slp& slp, std::uint64_t i, std::uint64_t j);

// Cover of [i..j] by at most 2*height+1 whole subtrees, left to right:
// descend to the lowest node containing the interval, then emit maximal
// segments along the two boundary paths.
std::vector<Segment> decompose(const Slp& slp, std::uint64_t i, std::uint64_t j);

// Grammar for the given text with height <= ceil(log2 N) + 1 and at most 2N
// rules (equal subtrees are shared). alphabet_size 0 infers max token + 1.
Slp build_balanced_slp(const SymbolString& text, std::uint32_t alphabet_size = 0);

// Rebuilds the grammar with AVL-shaped derivations: the expansion is
// unchanged, height becomes <= 1.45*log2(N) + 2.5, and the rule count grows
// to at most O(|G| log N). Only query time depends on height; the index
// builder itself accepts unbalanced grammars.
Slp balance(const Slp& slp);

// Incremental grammar construction used by balance(), build_balanced_slp()
// and the clique-instance generator. Equal terminals and equal (left,right)
// pairs are shared. finish() drops rules unreachable from the root, then
// validates.
class SlpBuilder {
public:
    std::uint32_t terminal(Token t);
    std::uint32_t binary(std::uint32_t left, std::uint32_t right);

    // Divide-and-conquer concatenation; adds ceil(log2 n) to the max height.
    std::uint32_t balanced_concat(std::span<const std::uint32_t> parts);
    std::uint32_t balanced_tokens(std::span<const Token> tokens);

    // AVL concatenation: result height differs from max(h(l), h(r)) by O(1)
    // and stays within the AVL bound as long as both inputs are AVL-shaped
    // (terminals are). Creates O(|h(l) - h(r)|) fresh rules.
    std::uint32_t avl_concat(std::uint32_t left, std::uint32_t right);

    std::uint64_t len(std::uint32_t v) const { return len_[v]; }
    std::uint32_t height(std::uint32_t v) const { return height_[v]; }
    std::size_t rule_count() const { return rules_.size(); }

    Slp finish(std::uint32_t root, std::uint32_t alphabet_size = 0) &&;

private:
    std::uint32_t avl_join_right(std::uint32_t tall, std::uint32_t low);
    std::uint32_t avl_join_left(std::uint32_t low, std::uint32_t tall);
    std::uint32_t rotate_left(std::uint32_t l, std::uint32_t r);
    std::uint32_t rotate_right(std::uint32_t l, std::uint32_t r);
    std::uint32_t node(std::uint32_t l, std::uint32_t r) { return binary(l, r); }

    std::vector<Rule> rules_;
    std::vector<std::uint64_t> len_;
    std::vector<std::uint32_t> height_;
    std::unordered_map<std::uint64_t, std::uint32_t> terminal_cache_;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_cache_;
};

} // namespace slpwb
