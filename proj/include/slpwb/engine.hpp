#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "slpwb/boolmat.hpp"
#include "slpwb/dictionary.hpp"
#include "slpwb/slp.hpp"

namespace slpwb {

// F has N+1 bits; F[i] says whether text[1..i] can be partitioned into
// dictionary words. F[0] is always 1 (the empty prefix).
struct PrefixTable {
    std::vector<std::uint8_t> f;

    bool whole() const { return !f.empty() && f.back() != 0; }
    std::size_t text_len() const { return f.size() - 1; }
};

// The O(M + N*m) dynamic program over the uncompressed text: a trie scan
// from every partitionable prefix end. Doubles as the oracle every
// compressed-path result is tested against.
PrefixTable word_break_prefixes(std::span<const Token> text, const Dictionary& dict);

// Crossing table for a binary rule v -> ab, dim (m+1)^2: entry (i,j) says
// the length-i suffix of exp(a) followed by the length-j prefix of exp(b) is
// a dictionary word. Row 0 holds pure prefixes of exp(b), column 0 pure
// suffixes of exp(a); (0,0) stays 0 because the empty word is not storable.
BoolMatrix cross_matrix(const Slp& slp, const Dictionary& dict, std::uint32_t v);

// Same table from already-extracted affixes: suf_a is the last min(m,
// len(a)) tokens of exp(a), pre_b the first min(m, len(b)) of exp(b). The
// index builder maintains these per rule, which keeps the build free of any
// derivation-height dependence.
BoolMatrix cross_matrix_from_affixes(const Dictionary& dict,
                                     std::span<const Token> suf_a,
                                     std::span<const Token> pre_b);

// Partitionability table, dim (m+1)^2: entry (i,j) says i+j <= len(v) and
// exp(v) with i tokens trimmed from the front and j from the back splits into
// dictionary words. Children's tables are read from parts (topological
// order). For binary rules the value is
//     parts[a] x cross x parts[b]
// OR'd with the three cases the product cannot express: the empty substring
// (i+j = len(v)) and substrings confined to a single child (j >= len(b) or
// i >= len(a)).
BoolMatrix part_matrix(const Slp& slp, const Dictionary& dict, std::uint32_t v,
                       std::span<const BoolMatrix> parts,
                       const BoolMatrix* cross);

struct IndexBuildOptions {
    bool balance_first = true;
    std::uint64_t memory_cap_bytes = std::uint64_t{8} << 30;
};

struct IndexStats {
    std::uint32_t rules = 0;
    std::uint32_t max_word_len = 0;
    std::uint64_t matrix_bytes = 0;
    double build_seconds = 0.0;
};

using ContentHash = std::array<std::uint8_t, 32>;

// Per-rule part/cross tables over the (optionally balanced) grammar plus the
// dictionary tries. Immutable once built; solve/query are safe from many
// threads concurrently.
class WordBreakIndex {
public:
    static WordBreakIndex build(Slp slp, Dictionary dict,
                                const IndexBuildOptions& opts = {});

    // Word Break for the whole text: the (0,0) bit of the root table.
    bool solve() const;

    // Word Break for w[i..j], 1-based inclusive. Runs the segment fold over
    // decompose(i, j): segments shorter than m token-by-token through the
    // reversed trie, segments of length >= m through a query-time crossing
    // matrix composed with the precomputed tables.
    bool query(std::uint64_t i, std::uint64_t j) const;

    const Slp& slp() const { return slp_; }
    const Dictionary& dict() const { return dict_; }
    const IndexStats& stats() const { return stats_; }

    const BoolMatrix& part(std::uint32_t v) const { return parts_[v]; }
    // Null for terminal rules.
    const BoolMatrix* cross(std::uint32_t v) const {
        return slp_.rule(v).is_terminal() ? nullptr : &cross_[v];
    }

    // Estimated table footprint; build refuses (LimitError) before
    // allocating anything when this exceeds the cap.
    static std::uint64_t estimate_bytes(std::size_t rules, std::uint32_t m);

    // Index file: magic "SWBI", version, m, g, root, then the content hashes
    // of the grammar and dictionary files, then per-rule matrix blocks in id
    // order (cross block only for binary rules). load() re-derives nothing:
    // the same grammar and dictionary must be supplied and are checked
    // against the stored hashes.
    void save(std::ostream& out, const ContentHash& slp_hash,
              const ContentHash& dict_hash) const;
    static WordBreakIndex load(std::istream& in, Slp slp, Dictionary dict,
                               const ContentHash& slp_hash,
                               const ContentHash& dict_hash);

private:
    WordBreakIndex(Slp slp, Dictionary dict)
        : slp_(std::move(slp)), dict_(std::move(dict)) {}

    Slp slp_;
    Dictionary dict_;
    std::vector<BoolMatrix> parts_;
    std::vector<BoolMatrix> cross_;
    IndexStats stats_;
};

// Factor lengths of one valid partition of exp(root), reconstructed by
// backtracing the uncompressed dynamic program; nullopt when no partition
// exists. Refuses (LimitError) when the expansion exceeds limit.
std::optional<std::vector<std::uint32_t>> witness(const Slp& slp,
                                                  const Dictionary& dict,
                                                  std::uint64_t limit);

} // namespace slpwb
