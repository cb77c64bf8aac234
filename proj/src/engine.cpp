#include "slpwb/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <istream>
#include <ostream>

namespace slpwb {

PrefixTable word_break_prefixes(std::span<const Token> text,
                                const Dictionary& dict) {
    const std::size_t n = text.size();
    PrefixTable table;
    table.f.assign(n + 1, 0);
    table.f[0] = 1;
    const std::uint32_t m = dict.max_word_len();
    for (std::size_t i = 0; i < n; ++i) {
        if (!table.f[i]) continue;
        TrieCursor c = dict.forward_cursor();
        const std::size_t stop = std::min(n, i + m);
        for (std::size_t p = i; p < stop; ++p) {
            if (!c.step(text[p])) break;
            if (c.at_word()) table.f[p + 1] = 1;
        }
    }
    return table;
}

BoolMatrix cross_matrix_from_affixes(const Dictionary& dict,
                                     std::span<const Token> suf_a,
                                     std::span<const Token> pre_b) {
    const std::uint32_t m = dict.max_word_len();
    BoolMatrix t(m + 1);
    const auto sa = static_cast<std::uint32_t>(suf_a.size());
    for (std::uint32_t i = 0; i <= sa; ++i) {
        TrieCursor c = dict.forward_cursor();
        std::uint32_t d = 0;
        for (std::uint32_t p = sa - i; p < sa && c.step(suf_a[p]); ++p) {
            ++d;
            if (d >= i && c.at_word()) t.set(i, d - i);
        }
        if (c.alive() && d == i) {
            for (Token tok : pre_b) {
                if (!c.step(tok)) break;
                ++d;
                if (c.at_word()) t.set(i, d - i);
            }
        }
    }
    return t;
}

BoolMatrix cross_matrix(const Slp& slp, const Dictionary& dict, std::uint32_t v) {
    slp.check_node(v);
    const std::uint32_t m = dict.max_word_len();
    const Rule& r = slp.rule(v);
    if (r.is_terminal()) return BoolMatrix(m + 1); // defined only for binary rules
    const SymbolString suf_a = expand_affix(slp, r.left, m, Affix::suffix);
    const SymbolString pre_b = expand_affix(slp, r.right, m, Affix::prefix);
    return cross_matrix_from_affixes(dict, suf_a, pre_b);
}

BoolMatrix part_matrix(const Slp& slp, const Dictionary& dict, std::uint32_t v,
                       std::span<const BoolMatrix> parts,
                       const BoolMatrix* cross) {
    slp.check_node(v);
    const std::uint32_t m = dict.max_word_len();
    const Rule& r = slp.rule(v);

    if (r.is_terminal()) {
        BoolMatrix out(m + 1);
        if (m >= 1) {
            out.set(0, 1);
            out.set(1, 0);
        }
        const Token tok[1] = {r.token};
        if (dict.contains(tok)) out.set(0, 0);
        return out;
    }

    const BoolMatrix& ma = parts[r.left];
    const BoolMatrix& mb = parts[r.right];
    BoolMatrix out = mat_mul(mat_mul(ma, *cross), mb);

    const std::uint64_t la = slp.len(r.left);
    const std::uint64_t lb = slp.len(r.right);
    const std::uint64_t lv = la + lb;

    // Empty substring: i + j = len(v).
    if (lv <= 2 * std::uint64_t{m})
        for (std::uint32_t i = 0; i <= m; ++i)
            if (i <= lv && lv - i <= m) out.set(i, static_cast<std::uint32_t>(lv - i));

    // Substring confined to the left child: j >= len(b).
    if (lb <= m) {
        const auto shift = static_cast<std::uint32_t>(lb);
        for (std::uint32_t i = 0; i <= m; ++i)
            for (std::uint32_t j = 0; j + shift <= m; ++j)
                if (ma.get(i, j)) out.set(i, j + shift);
    }
    // Substring confined to the right child: i >= len(a).
    if (la <= m) {
        const auto shift = static_cast<std::uint32_t>(la);
        for (std::uint32_t i = 0; i + shift <= m; ++i) {
            auto src = mb.row(i);
            auto dst = out.row(i + shift);
            for (std::size_t w = 0; w < src.size(); ++w) dst[w] |= src[w];
        }
    }
    return out;
}

std::uint64_t WordBreakIndex::estimate_bytes(std::size_t rules, std::uint32_t m) {
    const std::uint64_t dim = std::uint64_t{m} + 1;
    const std::uint64_t row_bytes = BoolMatrix::words_per_row(m + 1) * 8ull;
    return 2 * static_cast<std::uint64_t>(rules) * dim * row_bytes;
}

WordBreakIndex WordBreakIndex::build(Slp slp, Dictionary dict,
                                     const IndexBuildOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (opts.balance_first) slp = balance(slp);

    const std::uint32_t m = dict.max_word_len();
    const std::uint64_t estimate = estimate_bytes(slp.rule_count(), m);
    if (estimate > opts.memory_cap_bytes)
        throw LimitError("index would need about " + std::to_string(estimate) +
                         " bytes, over the cap of " +
                         std::to_string(opts.memory_cap_bytes));

    WordBreakIndex idx(std::move(slp), std::move(dict));
    const auto g = static_cast<std::uint32_t>(idx.slp_.rule_count());
    idx.parts_.assign(g, BoolMatrix());
    idx.cross_.assign(g, BoolMatrix());

    // Per-rule affixes, maintained bottom-up so no step ever walks down the
    // derivation: the build cost depends on g and m only, not on height.
    std::vector<SymbolString> pre(g), suf(g);
    for (std::uint32_t v : idx.slp_.topo_order()) {
        const Rule& r = idx.slp_.rule(v);
        if (r.is_terminal()) {
            pre[v] = {r.token};
            suf[v] = {r.token};
        } else {
            const std::uint64_t keep =
                std::min<std::uint64_t>(m, idx.slp_.len(v));
            pre[v] = pre[r.left];
            for (Token t : pre[r.right]) {
                if (pre[v].size() >= keep) break;
                pre[v].push_back(t);
            }
            const std::size_t from_a =
                static_cast<std::size_t>(keep) - std::min<std::size_t>(
                    static_cast<std::size_t>(keep), suf[r.right].size());
            suf[v].assign(suf[r.left].end() - from_a, suf[r.left].end());
            suf[v].insert(suf[v].end(), suf[r.right].begin(), suf[r.right].end());

            idx.cross_[v] = cross_matrix_from_affixes(idx.dict_, suf[r.left],
                                                      pre[r.right]);
        }
        idx.parts_[v] = part_matrix(idx.slp_, idx.dict_, v, idx.parts_,
                                    &idx.cross_[v]);
    }
    pre.clear();
    suf.clear();

    idx.stats_.rules = g;
    idx.stats_.max_word_len = m;
    idx.stats_.matrix_bytes = estimate;
    idx.stats_.build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return idx;
}

bool WordBreakIndex::solve() const { return parts_[slp_.root()].get(0, 0); }

bool WordBreakIndex::query(std::uint64_t i, std::uint64_t j) const {
    const std::vector<Segment> segs = decompose(slp_, i, j);
    const std::uint32_t m = dict_.max_word_len();

    BoolVector u(m + 1);
    u.set(0);
    std::vector<Token> ctx; // last <= m processed tokens, newest last
    ctx.reserve(m);
    std::vector<std::uint32_t> lens;

    for (const Segment& seg : segs) {
        if (seg.length < m) {
            // Short segment: feed tokens one at a time. A word ending at the
            // new frontier of length l needs the prefix that ended l tokens
            // earlier, which the shift has just moved to u[l].
            const SymbolString toks =
                expand_affix(slp_, seg.node, seg.length, Affix::prefix);
            for (Token tok : toks) {
                u.shift_up(1);
                if (ctx.size() == m && m > 0) ctx.erase(ctx.begin());
                ctx.push_back(tok);
                dict_.rev_scan(ctx, lens);
                for (std::uint32_t l : lens)
                    if (u.get(l)) {
                        u.set(0);
                        break;
                    }
            }
        } else {
            // Long segment: no word fits across the whole of it, so every
            // partition either cuts exactly at the segment start (row 0 of
            // the part table) or enters through one word that consumes the
            // last k context tokens and the first l segment tokens.
            const SymbolString pre =
                expand_affix(slp_, seg.node, m, Affix::prefix);
            BoolMatrix crossing(m + 1);
            const auto kmax =
                static_cast<std::uint32_t>(std::min<std::size_t>(ctx.size(), m));
            for (std::uint32_t k = 1; k <= kmax; ++k) {
                TrieCursor c = dict_.forward_cursor();
                std::uint32_t d = 0;
                for (std::size_t p = ctx.size() - k; p < ctx.size() && c.step(ctx[p]); ++p)
                    ++d;
                if (d == k && c.alive()) {
                    if (c.at_word()) crossing.set(k, 0);
                    for (Token tok : pre) {
                        if (!c.step(tok)) break;
                        ++d;
                        if (c.at_word()) crossing.set(k, d - k);
                    }
                }
            }

            const BoolMatrix& part = parts_[seg.node];
            BoolVector entering = u;
            entering.set(0, false);
            BoolVector through = vec_mat(vec_mat(entering, crossing), part);
            if (u.get(0)) through.or_row(part, 0);
            u = through;
            ctx = expand_affix(slp_, seg.node, m, Affix::suffix);
        }
    }
    return u.get(0);
}

namespace {

void write_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw ParseError("truncated index file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
}

constexpr char kIndexMagic[4] = {'S', 'W', 'B', 'I'};
constexpr std::uint32_t kIndexVersion = 1;

} // namespace

void WordBreakIndex::save(std::ostream& out, const ContentHash& slp_hash,
                          const ContentHash& dict_hash) const {
    out.write(kIndexMagic, 4);
    write_u32_le(out, kIndexVersion);
    write_u32_le(out, dict_.max_word_len());
    write_u32_le(out, static_cast<std::uint32_t>(slp_.rule_count()));
    write_u32_le(out, slp_.root());
    out.write(reinterpret_cast<const char*>(slp_hash.data()), slp_hash.size());
    out.write(reinterpret_cast<const char*>(dict_hash.data()), dict_hash.size());
    for (std::uint32_t v = 0; v < slp_.rule_count(); ++v) {
        parts_[v].serialize(out);
        if (!slp_.rule(v).is_terminal()) cross_[v].serialize(out);
    }
    if (!out) throw Error("index write failed");
}

WordBreakIndex WordBreakIndex::load(std::istream& in, Slp slp, Dictionary dict,
                                    const ContentHash& slp_hash,
                                    const ContentHash& dict_hash) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kIndexMagic, 4) != 0)
        throw ParseError("not an index file (bad magic)");
    if (read_u32_le(in) != kIndexVersion)
        throw ParseError("unsupported index format version");
    const std::uint32_t m = read_u32_le(in);
    const std::uint32_t g = read_u32_le(in);
    const std::uint32_t root = read_u32_le(in);

    ContentHash stored_slp{}, stored_dict{};
    in.read(reinterpret_cast<char*>(stored_slp.data()), stored_slp.size());
    in.read(reinterpret_cast<char*>(stored_dict.data()), stored_dict.size());
    if (!in) throw ParseError("truncated index file");
    if (stored_slp != slp_hash)
        throw ParseError("index was built from a different grammar file");
    if (stored_dict != dict_hash)
        throw ParseError("index was built from a different dictionary file");
    if (g != slp.rule_count() || root != slp.root())
        throw ParseError("index does not match the supplied grammar");
    if (m != dict.max_word_len())
        throw ParseError("index does not match the supplied dictionary");

    WordBreakIndex idx(std::move(slp), std::move(dict));
    idx.parts_.reserve(g);
    idx.cross_.assign(g, BoolMatrix());
    for (std::uint32_t v = 0; v < g; ++v) {
        idx.parts_.push_back(BoolMatrix::deserialize(in));
        if (idx.parts_.back().dim() != m + 1)
            throw ParseError("index matrix block has wrong dimension");
        if (!idx.slp_.rule(v).is_terminal()) {
            idx.cross_[v] = BoolMatrix::deserialize(in);
            if (idx.cross_[v].dim() != m + 1)
                throw ParseError("index matrix block has wrong dimension");
        }
    }
    // Spot-check: stored crossing tables must reproduce from the supplied
    // grammar and dictionary. Catches a grammar with the same shape counts
    // but different wiring (say, mismatched balancing between save and load).
    std::vector<std::uint32_t> binaries;
    for (std::uint32_t v = 0; v < g; ++v)
        if (!idx.slp_.rule(v).is_terminal()) binaries.push_back(v);
    const std::size_t step = std::max<std::size_t>(1, binaries.size() / 8);
    for (std::size_t at = 0; at < binaries.size(); at += step) {
        const std::uint32_t v = binaries[at];
        if (!(cross_matrix(idx.slp_, idx.dict_, v) == idx.cross_[v]))
            throw ParseError("index does not match the supplied grammar "
                             "(crossing table of rule " + std::to_string(v) +
                             " differs)");
    }

    idx.stats_.rules = g;
    idx.stats_.max_word_len = m;
    idx.stats_.matrix_bytes = estimate_bytes(g, m);
    return idx;
}

std::optional<std::vector<std::uint32_t>> witness(const Slp& slp,
                                                  const Dictionary& dict,
                                                  std::uint64_t limit) {
    const SymbolString text = expand(slp, limit);
    const PrefixTable table = word_break_prefixes(text, dict);
    if (!table.whole()) return std::nullopt;

    std::vector<std::uint32_t> lens_rev;
    std::size_t pos = text.size();
    std::vector<std::uint32_t> suffix_words;
    while (pos > 0) {
        const std::span<const Token> window(
            text.data() + (pos > dict.max_word_len() ? pos - dict.max_word_len() : 0),
            std::min<std::size_t>(pos, dict.max_word_len()));
        dict.rev_scan(window, suffix_words);
        bool stepped = false;
        for (std::uint32_t l : suffix_words) {
            if (table.f[pos - l]) {
                lens_rev.push_back(l);
                pos -= l;
                stepped = true;
                break;
            }
        }
        if (!stepped) throw Error("witness backtrace lost the partition");
    }
    std::reverse(lens_rev.begin(), lens_rev.end());
    return lens_rev;
}

} // namespace slpwb
