#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slpwb/slp.hpp"
#include "slpwb/types.hpp"

namespace slpwb {

// Simple undirected graph on vertices 1..n; adjacency is symmetric and
// irreflexive (self-loops rejected).
class Graph {
public:
    explicit Graph(std::uint32_t n) : n_(n), adj_(std::size_t{n} * n, 0) {}

    static Graph complete(std::uint32_t n);
    // Erdos-Renyi G(n, p); each unordered pair is drawn once, in a fixed
    // order, from a generator seeded with the given value.
    static Graph random(std::uint32_t n, double p, std::uint64_t seed);

    std::uint32_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_; }

    void add_edge(std::uint32_t u, std::uint32_t v);
    bool adjacent(std::uint32_t u, std::uint32_t v) const {
        check_vertex(u);
        check_vertex(v);
        return adj_[std::size_t{u - 1} * n_ + (v - 1)] != 0;
    }

private:
    void check_vertex(std::uint32_t v) const {
        if (v < 1 || v > n_)
            throw RangeError("vertex " + std::to_string(v) +
                             " outside [1.." + std::to_string(n_) + "]");
    }

    std::uint32_t n_;
    std::size_t edges_ = 0;
    std::vector<std::uint8_t> adj_;
};

// Token assignment for a reduction instance with N = n^k: clique ids 1..N map
// to tokens 1..N, then the five marker symbols; token 0 stays unused.
struct ReductionTokens {
    std::uint64_t N;

    Token dollar() const { return static_cast<Token>(N + 1); }
    Token hash() const { return static_cast<Token>(N + 2); }
    Token gamma() const { return static_cast<Token>(N + 3); }
    Token mu() const { return static_cast<Token>(N + 4); }
    Token alpha() const { return static_cast<Token>(N + 5); }
    Token beta() const { return static_cast<Token>(N + 6); }
    std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(N + 7); }
};

// All k-vertex cliques as sorted vertex tuples in lexicographic order.
std::vector<std::vector<std::uint32_t>> enumerate_k_cliques(const Graph& g,
                                                            std::uint32_t k);

// 1 + sum (b_i - 1) * n^(k-i): injective rank of a sorted tuple into [1..N].
// Lexicographic tuple order and ascending id order coincide.
std::uint64_t clique_id(std::span<const std::uint32_t> clique, std::uint32_t n);

bool is_biclique(const Graph& g, std::span<const std::uint32_t> a,
                 std::span<const std::uint32_t> b);

enum class FVariant { f0, f1 };

// f0 wraps every token s_i as alpha s_i beta; f1 appends beta alpha after
// every token. Both triple the length.
SymbolString f_transform(std::span<const Token> s, FVariant variant,
                         const ReductionTokens& tok);

// The dictionary words of the reduction, in deterministic order: the
// per-clique boundary words, the extension words, the bridge words for
// ordered bi-clique pairs, the 2(N+4) offset-shift words, and the three
// fixed terminator words. Duplicates across steps are possible and left for
// Dictionary construction to collapse.
std::vector<SymbolString> build_dictionary_from_graph(const Graph& g,
                                                      std::uint32_t k);

// Grammar for the instance string: the f0-image of every 2k-clique gadget
// concatenated in id order, then the two closing mu tokens. Rule count is
// O(N + k * #2k-cliques).
Slp build_w_slp(const Graph& g, std::uint32_t k);

// Exhaustive backtracking clique test (the oracle side of the reduction).
bool brute_force_clique(const Graph& g, std::uint32_t size);

struct CliqueInstance {
    Slp slp;
    std::vector<SymbolString> dict_words;
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint64_t N = 0;
};

CliqueInstance build_clique_instance(const Graph& g, std::uint32_t k);

// n^k with the parameter validation every entry point above shares: k >= 1,
// n >= 1, and N capped so instance sizes stay addressable.
std::uint64_t reduction_size(std::uint32_t n, std::uint32_t k);

} // namespace slpwb
