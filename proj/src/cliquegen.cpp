#include "slpwb/cliquegen.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace slpwb {

Graph Graph::complete(std::uint32_t n) {
    Graph g(n);
    for (std::uint32_t u = 1; u <= n; ++u)
        for (std::uint32_t v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::random(std::uint32_t n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw RangeError("edge probability outside [0,1]");
    Graph g(n);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    for (std::uint32_t u = 1; u <= n; ++u)
        for (std::uint32_t v = u + 1; v <= n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw RangeError("self-loop at vertex " + std::to_string(u));
    auto& a = adj_[std::size_t{u - 1} * n_ + (v - 1)];
    if (!a) ++edges_;
    a = 1;
    adj_[std::size_t{v - 1} * n_ + (u - 1)] = 1;
}

std::uint64_t reduction_size(std::uint32_t n, std::uint32_t k) {
    if (n < 1 || k < 1) throw RangeError("need n >= 1 and k >= 1");
    constexpr std::uint64_t cap = std::uint64_t{1} << 20;
    std::uint64_t N = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        N *= n;
        if (N > cap)
            throw RangeError("n^k exceeds the supported cap of 2^20");
    }
    return N;
}

std::uint64_t clique_id(std::span<const std::uint32_t> clique, std::uint32_t n) {
    std::uint64_t id = 0;
    for (std::uint32_t b : clique) id = id * n + (b - 1);
    return id + 1;
}

std::vector<std::vector<std::uint32_t>> enumerate_k_cliques(const Graph& g,
                                                            std::uint32_t k) {
    const std::uint32_t n = g.vertex_count();
    if (k < 1 || k > n) throw RangeError("clique size outside [1..n]");

    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    // Lexicographic backtracking over sorted tuples.
    std::vector<std::uint32_t> stack{1};
    while (!stack.empty()) {
        std::uint32_t& cand = stack.back();
        if (cand > n) {
            stack.pop_back();
            if (!cur.empty()) {
                const std::uint32_t last = cur.back();
                cur.pop_back();
                if (!stack.empty()) stack.back() = last + 1;
            }
            continue;
        }
        bool ok = true;
        for (std::uint32_t v : cur)
            if (!g.adjacent(v, cand)) {
                ok = false;
                break;
            }
        if (!ok) {
            ++cand;
            continue;
        }
        cur.push_back(cand);
        if (cur.size() == k) {
            out.push_back(cur);
            cur.pop_back();
            ++cand;
        } else {
            stack.push_back(cand + 1);
        }
    }
    return out;
}

bool is_biclique(const Graph& g, std::span<const std::uint32_t> a,
                 std::span<const std::uint32_t> b) {
    for (std::uint32_t u : a)
        for (std::uint32_t v : b)
            if (u == v || !g.adjacent(u, v)) return false;
    return true;
}

SymbolString f_transform(std::span<const Token> s, FVariant variant,
                         const ReductionTokens& tok) {
    SymbolString out;
    out.reserve(s.size() * 3);
    for (Token c : s) {
        if (variant == FVariant::f0) {
            out.push_back(tok.alpha());
            out.push_back(c);
            out.push_back(tok.beta());
        } else {
            out.push_back(c);
            out.push_back(tok.beta());
            out.push_back(tok.alpha());
        }
    }
    return out;
}

namespace {

// 1 2 ... hi as raw tokens; empty when hi == 0.
SymbolString run_of_ids(std::uint64_t hi) {
    SymbolString s;
    s.reserve(hi);
    for (std::uint64_t t = 1; t <= hi; ++t) s.push_back(static_cast<Token>(t));
    return s;
}

// lo lo+1 ... N.
SymbolString run_from(std::uint64_t lo, std::uint64_t N) {
    SymbolString s;
    s.reserve(N - lo + 1);
    for (std::uint64_t t = lo; t <= N; ++t) s.push_back(static_cast<Token>(t));
    return s;
}

} // namespace

std::vector<SymbolString> build_dictionary_from_graph(const Graph& g,
                                                      std::uint32_t k) {
    const std::uint32_t n = g.vertex_count();
    const std::uint64_t N = reduction_size(n, k);
    const ReductionTokens tok{N};
    const auto cliques = enumerate_k_cliques(g, k);

    std::vector<SymbolString> words;

    // Step 1: for every k-clique B, the two boundary words
    // f1($ 1..B-1) and f1(B..N).
    for (const auto& c : cliques) {
        const std::uint64_t B = clique_id(c, n);
        SymbolString head{tok.dollar()};
        const SymbolString pre = run_of_ids(B - 1);
        head.insert(head.end(), pre.begin(), pre.end());
        words.push_back(f_transform(head, FVariant::f1, tok));
        words.push_back(f_transform(run_from(B, N), FVariant::f1, tok));
    }

    // Step 2: f1(B..N # i # 1..B-1) for every vertex i outside B adjacent to
    // all of B.
    for (const auto& c : cliques) {
        const std::uint64_t B = clique_id(c, n);
        for (std::uint32_t i = 1; i <= n; ++i) {
            bool extendable = std::find(c.begin(), c.end(), i) == c.end();
            for (std::uint32_t v : c)
                if (extendable && !g.adjacent(v, i)) extendable = false;
            if (!extendable) continue;
            SymbolString s = run_from(B, N);
            s.push_back(tok.hash());
            s.push_back(static_cast<Token>(i));
            s.push_back(tok.hash());
            const SymbolString pre = run_of_ids(B - 1);
            s.insert(s.end(), pre.begin(), pre.end());
            words.push_back(f_transform(s, FVariant::f1, tok));
        }
    }

    // Step 3: f1(B..N $ gamma $ 1..C-1) for every ordered bi-clique pair
    // (B, C). Both orders are emitted; the word is asymmetric.
    for (const auto& b : cliques) {
        for (const auto& c : cliques) {
            if (!is_biclique(g, b, c)) continue;
            SymbolString s = run_from(clique_id(b, n), N);
            s.push_back(tok.dollar());
            s.push_back(tok.gamma());
            s.push_back(tok.dollar());
            const SymbolString pre = run_of_ids(clique_id(c, n) - 1);
            s.insert(s.end(), pre.begin(), pre.end());
            words.push_back(f_transform(s, FVariant::f1, tok));
        }
    }

    // Step 4: alpha sigma beta and beta alpha sigma for every sigma in
    // {1..N, $, #, gamma, mu} (alpha and beta themselves excluded).
    std::vector<Token> sigmas;
    for (std::uint64_t t = 1; t <= N; ++t) sigmas.push_back(static_cast<Token>(t));
    sigmas.insert(sigmas.end(), {tok.dollar(), tok.hash(), tok.gamma(), tok.mu()});
    for (Token s : sigmas) {
        words.push_back({tok.alpha(), s, tok.beta()});
        words.push_back({tok.beta(), tok.alpha(), s});
    }

    // Step 5: the three fixed words.
    words.push_back({tok.alpha(), tok.mu(), tok.beta(), tok.alpha()});
    words.push_back({tok.dollar(), tok.beta(), tok.alpha(), tok.mu()});
    words.push_back({tok.beta(), tok.mu(), tok.mu()});

    return words;
}

Slp build_w_slp(const Graph& g, std::uint32_t k) {
    const std::uint32_t n = g.vertex_count();
    const std::uint64_t N = reduction_size(n, k);
    const ReductionTokens tok{N};
    std::vector<std::vector<std::uint32_t>> big_cliques;
    if (2 * k <= n) big_cliques = enumerate_k_cliques(g, 2 * k);

    SlpBuilder b;
    const std::uint32_t mu = b.terminal(tok.mu());

    if (big_cliques.empty()) {
        const std::uint32_t root = b.binary(mu, mu);
        return std::move(b).finish(root, tok.alphabet_size());
    }

    // F_sigma expands to alpha sigma beta; f0 distributes over concatenation,
    // so every gadget is a concatenation of F nodes.
    const auto f0_sym = [&](Token t) {
        return b.binary(b.binary(b.terminal(tok.alpha()), b.terminal(t)),
                        b.terminal(tok.beta()));
    };
    std::vector<std::uint32_t> f_ids(N + 1);
    for (std::uint64_t t = 1; t <= N; ++t)
        f_ids[t] = f0_sym(static_cast<Token>(t));
    const std::uint32_t f_dollar = f0_sym(tok.dollar());
    const std::uint32_t f_hash = f0_sym(tok.hash());
    const std::uint32_t f_gamma = f0_sym(tok.gamma());
    const std::uint32_t f_mu = f0_sym(tok.mu());

    // Shared f0(1 2 ... N).
    const std::uint32_t ids_run =
        b.balanced_concat(std::span<const std::uint32_t>(f_ids.data() + 1, N));

    std::vector<std::uint32_t> pieces;
    pieces.reserve(big_cliques.size());
    for (const auto& a : big_cliques) {
        // f0(w_A) = F_$ run (F_# F_a F_# run)^2k F_$.
        std::vector<std::uint32_t> parts;
        parts.reserve(3 + 4 * a.size());
        parts.push_back(f_dollar);
        parts.push_back(ids_run);
        for (std::uint32_t v : a) {
            parts.push_back(f_hash);
            parts.push_back(f_ids[v]);
            parts.push_back(f_hash);
            parts.push_back(ids_run);
        }
        parts.push_back(f_dollar);
        const std::uint32_t f0_wa = b.balanced_concat(parts);
        const std::array<std::uint32_t, 5> gadget{f_mu, f0_wa, f_gamma, f0_wa, f_mu};
        pieces.push_back(b.balanced_concat(gadget));
    }

    const std::uint32_t body = b.balanced_concat(pieces);
    const std::uint32_t root = b.binary(body, b.binary(mu, mu));
    return std::move(b).finish(root, tok.alphabet_size());
}

bool brute_force_clique(const Graph& g, std::uint32_t size) {
    if (size == 0) return true;
    if (size > g.vertex_count()) return false;
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> cur;
    // Depth-first over sorted tuples with a remaining-vertices cutoff.
    const auto rec = [&](auto&& self, std::uint32_t next) -> bool {
        if (cur.size() == size) return true;
        const std::uint32_t need = size - static_cast<std::uint32_t>(cur.size());
        for (std::uint32_t v = next; v + need <= n + 1; ++v) {
            bool ok = true;
            for (std::uint32_t u : cur)
                if (!g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(v);
            if (self(self, v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    return rec(rec, 1);
}

CliqueInstance build_clique_instance(const Graph& g, std::uint32_t k) {
    CliqueInstance inst;
    inst.n = g.vertex_count();
    inst.k = k;
    inst.N = reduction_size(inst.n, k);
    inst.dict_words = build_dictionary_from_graph(g, k);
    inst.slp = build_w_slp(g, k);
    return inst;
}

} // namespace slpwb
