#include "slpwb/slp.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace slpwb {

namespace {

constexpr std::uint64_t kMaxLen = std::uint64_t{1} << 63; // lengths stay below 2^63

[[noreturn]] void fail_rule(const std::string& what, std::uint32_t id,
                            const std::vector<std::uint32_t>* lines) {
    std::string msg = what + " (rule " + std::to_string(id);
    if (lines && id < lines->size())
        msg += ", line " + std::to_string((*lines)[id]);
    msg += ")";
    throw ParseError(msg);
}

} // namespace

Slp validate(std::vector<Rule> rules, std::uint32_t root,
             std::uint32_t alphabet_size,
             const std::vector<std::uint32_t>* rule_lines) {
    const std::size_t g = rules.size();
    if (g == 0) throw ParseError("grammar has no rules");
    if (root >= g)
        throw ParseError("root id " + std::to_string(root) + " has no rule");
    if (g > std::uint64_t{1} << 31) throw ParseError("too many rules");

    for (std::uint32_t v = 0; v < g; ++v) {
        const Rule& r = rules[v];
        if (!r.is_terminal() && (r.left >= g || r.right >= g))
            fail_rule("dangling reference to rule " +
                          std::to_string(r.left >= g ? r.left : r.right),
                      v, rule_lines);
    }

    // Iterative tricolor DFS over all rules: detects cycles and yields a
    // postorder (children before parents).
    std::vector<std::uint8_t> color(g, 0); // 0 white, 1 gray, 2 black
    std::vector<std::uint32_t> topo;
    topo.reserve(g);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g; ++s) {
        if (color[s]) continue;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            if (color[v] == 0) {
                color[v] = 1;
                const Rule& r = rules[v];
                if (!r.is_terminal()) {
                    for (std::uint32_t c : {r.right, r.left}) {
                        if (color[c] == 1) fail_rule("cycle detected", c, rule_lines);
                        if (color[c] == 0) stack.push_back(c);
                    }
                }
            } else {
                stack.pop_back();
                if (color[v] == 1) {
                    color[v] = 2;
                    topo.push_back(v);
                }
            }
        }
    }

    // Reachability from root.
    std::vector<std::uint8_t> reach(g, 0);
    stack.assign(1, root);
    reach[root] = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        const Rule& r = rules[v];
        if (r.is_terminal()) continue;
        for (std::uint32_t c : {r.left, r.right}) {
            if (!reach[c]) {
                reach[c] = 1;
                stack.push_back(c);
            }
        }
    }
    for (std::uint32_t v = 0; v < g; ++v)
        if (!reach[v]) fail_rule("rule unreachable from root", v, rule_lines);

    std::vector<std::uint64_t> len(g, 0);
    std::vector<std::uint32_t> height(g, 0);
    Token max_token = 0;
    for (std::uint32_t v : topo) {
        const Rule& r = rules[v];
        if (r.is_terminal()) {
            len[v] = 1;
            height[v] = 0;
            max_token = std::max(max_token, r.token);
        } else {
            const std::uint64_t a = len[r.left], b = len[r.right];
            if (a >= kMaxLen - b) fail_rule("expansion length overflow", v, rule_lines);
            len[v] = a + b;
            height[v] = 1 + std::max(height[r.left], height[r.right]);
        }
    }

    if (alphabet_size == 0) {
        alphabet_size = max_token + 1;
    } else if (max_token >= alphabet_size) {
        throw ParseError("token " + std::to_string(max_token) +
                         " outside declared alphabet of size " +
                         std::to_string(alphabet_size));
    }

    Slp slp;
    slp.rules_ = std::move(rules);
    slp.root_ = root;
    slp.alphabet_size_ = alphabet_size;
    slp.len_ = std::move(len);
    slp.height_ = std::move(height);
    slp.topo_ = std::move(topo);
    return slp;
}

namespace {

std::uint64_t parse_number(std::string_view field, std::uint64_t max,
                           std::size_t line_no, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || value > max)
        throw ParseError("line " + std::to_string(line_no) + ": invalid " +
                         std::string(what) + " '" + std::string(field) + "'");
    return value;
}

} // namespace

Slp parse_slp(std::istream& in) {
    std::vector<std::optional<Rule>> slots;
    std::vector<std::uint32_t> slot_lines;
    std::optional<std::uint32_t> root;
    std::optional<std::uint32_t> alphabet;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ss(line);
        std::vector<std::string> f;
        for (std::string w; ss >> w;) f.push_back(std::move(w));
        if (f.empty()) continue;

        const auto expect_arity = [&](std::size_t n) {
            if (f.size() != n)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected " + std::to_string(n - 1) +
                                 " field(s) after '" + f[0] + "'");
        };

        if (f[0] == "A") {
            expect_arity(2);
            if (alphabet)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": duplicate alphabet declaration");
            alphabet = static_cast<std::uint32_t>(
                parse_number(f[1], 0xffffffffu, line_no, "alphabet size"));
        } else if (f[0] == "S") {
            expect_arity(2);
            if (root)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": duplicate root declaration");
            root = static_cast<std::uint32_t>(
                parse_number(f[1], 0xfffffffeu, line_no, "root id"));
        } else if (f[0] == "R") {
            if (f.size() < 3)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": truncated rule");
            const auto id = static_cast<std::uint32_t>(
                parse_number(f[1], 0xfffffffeu, line_no, "rule id"));
            Rule rule;
            if (f[2] == "T") {
                expect_arity(4);
                rule = Rule::make_terminal(static_cast<Token>(
                    parse_number(f[3], 0xffffffffu, line_no, "token")));
            } else if (f[2] == "N") {
                expect_arity(5);
                rule = Rule::make_binary(
                    static_cast<std::uint32_t>(
                        parse_number(f[3], 0xfffffffeu, line_no, "child id")),
                    static_cast<std::uint32_t>(
                        parse_number(f[4], 0xfffffffeu, line_no, "child id")));
            } else {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unknown rule kind '" + f[2] + "'");
            }
            if (id >= slots.size()) {
                slots.resize(id + 1);
                slot_lines.resize(id + 1, 0);
            }
            if (slots[id])
                throw ParseError("line " + std::to_string(line_no) +
                                 ": duplicate rule id " + std::to_string(id));
            slots[id] = rule;
            slot_lines[id] = static_cast<std::uint32_t>(line_no);
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": unknown directive '" + f[0] + "'");
        }
    }

    if (!root) throw ParseError("missing root (no 'S <id>' line)");
    std::vector<Rule> rules;
    rules.reserve(slots.size());
    for (std::uint32_t id = 0; id < slots.size(); ++id) {
        if (!slots[id])
            throw ParseError("missing rule id " + std::to_string(id) +
                             " (ids must be contiguous from 0)");
        rules.push_back(*slots[id]);
    }
    return validate(std::move(rules), *root, alphabet.value_or(0), &slot_lines);
}

Slp parse_slp(const std::string& text) {
    std::istringstream ss(text);
    return parse_slp(ss);
}

void write_slp(std::ostream& out, const Slp& slp,
               std::span<const std::string> header_comments) {
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "A " << slp.alphabet_size() << '\n';
    for (std::uint32_t v = 0; v < slp.rule_count(); ++v) {
        const Rule& r = slp.rule(v);
        if (r.is_terminal())
            out << "R " << v << " T " << r.token << '\n';
        else
            out << "R " << v << " N " << r.left << " " << r.right << '\n';
    }
    out << "S " << slp.root() << '\n';
}

namespace {

// exp(v)[lo..hi], 1-based inclusive, lo <= hi <= len(v). Touches O(output +
// height) nodes.
void extract_node(const Slp& slp, std::uint32_t v, std::uint64_t lo,
                  std::uint64_t hi, SymbolString& out) {
    struct Piece {
        std::uint32_t node;
        std::uint64_t lo, hi;
    };
    std::vector<Piece> stack;
    stack.push_back({v, lo, hi});
    while (!stack.empty()) {
        const Piece p = stack.back();
        stack.pop_back();
        const Rule& r = slp.rule(p.node);
        if (r.is_terminal()) {
            out.push_back(r.token);
            continue;
        }
        const std::uint64_t s = slp.len(r.left);
        if (p.hi <= s) {
            stack.push_back({r.left, p.lo, p.hi});
        } else if (p.lo > s) {
            stack.push_back({r.right, p.lo - s, p.hi - s});
        } else {
            stack.push_back({r.right, 1, p.hi - s});
            stack.push_back({r.left, p.lo, s});
        }
    }
}

void check_range(const Slp& slp, std::uint64_t i, std::uint64_t j) {
    if (i < 1 || j > slp.text_len() || i > j)
        throw RangeError("range [" + std::to_string(i) + ".." + std::to_string(j) +
                         "] invalid for text of length " +
                         std::to_string(slp.text_len()));
}

} // namespace

SymbolString expand(const Slp& slp, std::uint64_t limit) {
    if (slp.text_len() > limit)
        throw LimitError("expansion too large: " + std::to_string(slp.text_len()) +
                         " tokens exceeds limit " + std::to_string(limit));
    SymbolString out;
    out.reserve(slp.text_len());
    extract_node(slp, slp.root(), 1, slp.text_len(), out);
    return out;
}

SymbolString expand_affix(const Slp& slp, std::uint32_t v, std::uint64_t t,
                          Affix side) {
    slp.check_node(v);
    const std::uint64_t n = slp.len(v);
    const std::uint64_t take = std::min(t, n);
    SymbolString out;
    if (take == 0) return out;
    out.reserve(take);
    if (side == Affix::prefix)
        extract_node(slp, v, 1, take, out);
    else
        extract_node(slp, v, n - take + 1, n, out);
    return out;
}

SymbolString extract(const Slp& slp, std::uint64_t i, std::uint64_t j) {
    check_range(slp, i, j);
    SymbolString out;
    out.reserve(j - i + 1);
    extract_node(slp, slp.root(), i, j, out);
    return out;
}

std::vector<Segment> decompose(const Slp& slp, std::uint64_t i, std::uint64_t j) {
    check_range(slp, i, j);
    std::vector<Segment> segs;

    // Descend to the lowest node whose interval contains [i..j].
    std::uint32_t u = slp.root();
    std::uint64_t a = i, b = j;
    while (true) {
        const Rule& r = slp.rule(u);
        if (r.is_terminal()) break;
        const std::uint64_t s = slp.len(r.left);
        if (b <= s) {
            u = r.left;
        } else if (a > s) {
            u = r.right;
            a -= s;
            b -= s;
        } else {
            break;
        }
    }
    if (a == 1 && b == slp.len(u)) {
        segs.push_back({u, slp.len(u)});
        return segs;
    }

    const Rule& split = slp.rule(u);
    const std::uint64_t s = slp.len(split.left);

    // Left boundary: cover exp(left)[a..s] with maximal subtrees.
    {
        std::vector<std::uint32_t> rights;
        std::uint32_t v = split.left;
        std::uint64_t from = a;
        while (from != 1) {
            const Rule& r = slp.rule(v);
            const std::uint64_t ls = slp.len(r.left);
            if (from > ls) {
                v = r.right;
                from -= ls;
            } else {
                rights.push_back(r.right);
                v = r.left;
            }
        }
        segs.push_back({v, slp.len(v)});
        while (!rights.empty()) {
            segs.push_back({rights.back(), slp.len(rights.back())});
            rights.pop_back();
        }
    }

    // Right boundary: cover exp(right)[1..b-s].
    {
        std::uint32_t v = split.right;
        std::uint64_t to = b - s;
        while (to != slp.len(v)) {
            const Rule& r = slp.rule(v);
            const std::uint64_t ls = slp.len(r.left);
            if (to <= ls) {
                v = r.left;
            } else {
                segs.push_back({r.left, ls});
                v = r.right;
                to -= ls;
            }
        }
        segs.push_back({v, slp.len(v)});
    }
    return segs;
}

} // namespace slpwb
