#include "doctest.h"

#include <cmath>
#include <sstream>

#include "slpwb/slp.hpp"
#include "support.hpp"

using namespace slpwb;

namespace {

SymbolString str(const char* s) { return tokens_of(s); }

double log2_of(std::uint64_t n) { return std::log2(static_cast<double>(n)); }

} // namespace

TEST_SUITE("slp") {

TEST_CASE("parse two-leaf grammar") {
    const Slp slp = parse_slp("R 0 T 97\nR 1 T 98\nR 2 N 0 1\nS 2\n");
    CHECK(slp.rule_count() == 3);
    CHECK(slp.text_len() == 2);
    CHECK(expand(slp, 100) == str("ab"));
}

TEST_CASE("parse detects cycles") {
    CHECK_THROWS_WITH_AS(parse_slp("R 0 T 97\nR 1 T 98\nR 2 N 2 0\nS 2\n"),
                         doctest::Contains("cycle"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_slp("R 0 T 97\nR 1 N 2 0\nR 2 N 1 0\nS 1\n"),
        doctest::Contains("cycle"), ParseError);
}

TEST_CASE("parse error cases") {
    CHECK_THROWS_WITH_AS(parse_slp("R 0 T 97\nS 0\nR 0 T 98\n"),
                         doctest::Contains("duplicate rule id"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("R 0 N 1 2\nS 0\n"),
                         doctest::Contains("dangling"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("R 0 T 97\n"),
                         doctest::Contains("missing root"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("R 0 T 97\nR 2 T 98\nR 3 N 0 2\nS 3\n"),
                         doctest::Contains("missing rule id 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("Q 0\nS 0\n"),
                         doctest::Contains("unknown directive"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("R 0 T x\nS 0\n"),
                         doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_slp("A 5\nR 0 T 7\nS 0\n"),
                         doctest::Contains("alphabet"), ParseError);
}

TEST_CASE("validate rejects unreachable rules") {
    std::vector<Rule> rules{Rule::make_terminal('a'), Rule::make_terminal('b')};
    CHECK_THROWS_WITH_AS(validate(std::move(rules), 0),
                         doctest::Contains("unreachable"), ParseError);
}

TEST_CASE("five-rule grammar expands to abbab") {
    const Slp slp = test::abbab_slp();
    CHECK(slp.text_len() == 5);
    CHECK(test::oracle_expand(slp, slp.root()) == str("abbab"));
    CHECK(expand(slp, 5) == str("abbab"));
}

TEST_CASE("doubling grammar reaches 2^40 without expansion") {
    const Slp slp = test::doubling_slp('a', 40);
    CHECK(slp.text_len() == std::uint64_t{1} << 40);
    CHECK_THROWS_AS(expand(slp, 1000000), LimitError);
}

TEST_CASE("expand single terminal") {
    const Slp slp = parse_slp("R 0 T 5\nS 0\n");
    CHECK(expand(slp, 1) == SymbolString{5});
    CHECK(slp.height(slp.root()) == 0);
}

TEST_CASE("expand_affix against full expansion") {
    const Slp slp = test::abbab_slp();
    const std::uint32_t x4 = 3; // exp = "abb"
    CHECK(expand_affix(slp, x4, 2, Affix::prefix) == str("ab"));
    CHECK(expand_affix(slp, x4, 10, Affix::suffix) == str("abb"));
    CHECK(expand_affix(slp, x4, 0, Affix::prefix).empty());
    CHECK_THROWS_AS(expand_affix(slp, 99, 1, Affix::prefix), RangeError);
}

TEST_CASE("expand_affix equals slices on random instances") {
    test::Rng rng(3);
    for (int it = 0; it < 30; ++it) {
        const Slp slp = test::random_slp(rng, 40, 3);
        for (std::uint32_t v = 0; v < slp.rule_count(); ++v) {
            const SymbolString full = test::oracle_expand(slp, v);
            for (std::uint64_t t = 0; t <= 16; ++t) {
                const std::size_t take =
                    std::min<std::size_t>(t, full.size());
                const SymbolString pre = expand_affix(slp, v, t, Affix::prefix);
                const SymbolString suf = expand_affix(slp, v, t, Affix::suffix);
                REQUIRE(pre == SymbolString(full.begin(), full.begin() + take));
                REQUIRE(suf == SymbolString(full.end() - take, full.end()));
            }
        }
    }
}

TEST_CASE("extract examples") {
    const Slp slp = test::abbab_slp();
    CHECK(extract(slp, 2, 4) == str("bba"));
    CHECK(extract(slp, 1, 5) == expand(slp, 5));
    CHECK(extract(slp, 3, 3) == str("b"));
    CHECK_THROWS_AS(extract(slp, 0, 3), RangeError);
    CHECK_THROWS_AS(extract(slp, 3, 2), RangeError);
    CHECK_THROWS_AS(extract(slp, 1, 6), RangeError);
}

TEST_CASE("extract equals expansion slice exhaustively") {
    test::Rng rng(4);
    const Slp slp = test::random_slp(rng, 512, 4);
    const SymbolString full = expand(slp, 512);
    const std::uint64_t n = slp.text_len();
    for (std::uint64_t i = 1; i <= n; ++i)
        for (std::uint64_t j = i; j <= n; ++j) {
            const SymbolString got = extract(slp, i, j);
            REQUIRE(got == SymbolString(full.begin() + (i - 1), full.begin() + j));
        }
}

TEST_CASE("per-nonterminal lengths match expansions") {
    test::Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        const Slp slp = test::random_slp(rng, 200, 3);
        for (std::uint32_t v = 0; v < slp.rule_count(); ++v)
            REQUIRE(slp.len(v) == test::oracle_expand(slp, v).size());
    }
    const Slp big = test::random_slp(rng, 10000, 3);
    REQUIRE(big.text_len() == test::oracle_expand(big, big.root()).size());
}

TEST_CASE("build_balanced_slp") {
    const Slp slp = build_balanced_slp(str("abbab"));
    CHECK(expand(slp, 5) == str("abbab"));
    CHECK(slp.height() <= 4);

    const Slp one = build_balanced_slp(SymbolString{7});
    CHECK(one.rule_count() == 1);
    CHECK(one.height() == 0);

    const Slp rep = build_balanced_slp(str("aaaa"));
    CHECK(expand(rep, 4) == str("aaaa"));

    CHECK_THROWS_AS(build_balanced_slp(SymbolString{}), ParseError);
}

TEST_CASE("build_balanced_slp bounds on random texts") {
    test::Rng rng(6);
    for (int it = 0; it < 50; ++it) {
        const SymbolString text = test::random_text(rng, 300, 4);
        const Slp slp = build_balanced_slp(text);
        REQUIRE(expand(slp, text.size()) == text);
        REQUIRE(slp.height() <=
                static_cast<std::uint32_t>(std::ceil(log2_of(text.size()))) + 1);
        REQUIRE(slp.rule_count() <= 2 * text.size());
    }
}

TEST_CASE("balance flattens a chain") {
    const Slp chain = test::chain_slp('a', 64);
    CHECK(chain.height() == 63);
    const Slp bal = balance(chain);
    CHECK(bal.height() <= 12);
    CHECK(expand(bal, 64) == expand(chain, 64));
}

TEST_CASE("balance preserves expansion and meets the height bound") {
    test::Rng rng(8);
    for (int it = 0; it < 60; ++it) {
        const Slp slp = test::random_slp(rng, 400, 3);
        const Slp bal = balance(slp);
        REQUIRE(expand(bal, 400) == expand(slp, 400));
        const double bound = 1.45 * log2_of(std::max<std::uint64_t>(bal.text_len(), 2)) + 2.5;
        REQUIRE(bal.height() <= static_cast<std::uint32_t>(bound));
        REQUIRE(bal.rule_count() <=
                8 + 4 * slp.rule_count() *
                        static_cast<std::size_t>(log2_of(bal.text_len()) + 2));
        // Every rebuilt node is height-balanced; this is what keeps joins
        // logarithmic on any future input.
        for (std::uint32_t v = 0; v < bal.rule_count(); ++v) {
            const Rule& r = bal.rule(v);
            if (r.is_terminal()) continue;
            const int dl = static_cast<int>(bal.height(r.left));
            const int dr = static_cast<int>(bal.height(r.right));
            REQUIRE(std::abs(dl - dr) <= 1);
        }
    }
}

TEST_CASE("balance keeps already balanced grammars small") {
    const Slp slp = test::doubling_slp('a', 30);
    const Slp bal = balance(slp);
    CHECK(bal.text_len() == slp.text_len());
    CHECK(bal.height() <= slp.height() + 1);
    CHECK(bal.rule_count() <= 2 * slp.rule_count());
}

TEST_CASE("balance of the five-rule grammar") {
    const Slp bal = balance(test::abbab_slp());
    CHECK(expand(bal, 5) == str("abbab"));
}

TEST_CASE("decompose canonical example") {
    const Slp slp = test::abbab_slp();
    const auto segs = decompose(slp, 2, 4);
    SymbolString joined;
    for (const Segment& s : segs) {
        const SymbolString e = test::oracle_expand(slp, s.node);
        REQUIRE(e.size() == s.length);
        joined.insert(joined.end(), e.begin(), e.end());
    }
    CHECK(joined == str("bba"));
    CHECK(segs.size() <= 2 * slp.height() + 1);
    // The canonical cover from the X5 split: [X2, X2, X1].
    REQUIRE(segs.size() == 3);
    CHECK(segs[0].node == 1);
    CHECK(segs[1].node == 1);
    CHECK(segs[2].node == 0);
}

TEST_CASE("decompose whole range and single position") {
    const Slp slp = test::abbab_slp();
    const auto whole = decompose(slp, 1, 5);
    CHECK(whole.size() == 1);
    CHECK(whole[0].node == slp.root());
    const auto single = decompose(slp, 3, 3);
    CHECK(single.size() == 1);
    CHECK(single[0].length == 1);
}

TEST_CASE("decompose re-concatenates everywhere") {
    test::Rng rng(12);
    for (int it = 0; it < 25; ++it) {
        const Slp slp = test::random_slp(rng, 80, 3);
        const SymbolString full = expand(slp, 80);
        for (std::uint64_t i = 1; i <= slp.text_len(); ++i)
            for (std::uint64_t j = i; j <= slp.text_len(); ++j) {
                const auto segs = decompose(slp, i, j);
                REQUIRE(segs.size() <= 2 * slp.height() + 1);
                SymbolString joined;
                for (const Segment& s : segs) {
                    const SymbolString e = expand_affix(slp, s.node, s.length,
                                                        Affix::prefix);
                    REQUIRE(e.size() == slp.len(s.node));
                    joined.insert(joined.end(), e.begin(), e.end());
                }
                REQUIRE(joined ==
                        SymbolString(full.begin() + (i - 1), full.begin() + j));
            }
    }
}

TEST_CASE("writer round-trips and is deterministic") {
    test::Rng rng(13);
    const Slp slp = test::random_slp(rng, 60, 5);
    std::ostringstream first;
    write_slp(first, slp, std::vector<std::string>{"generated for a test"});
    const Slp back = parse_slp(first.str());
    CHECK(back.rule_count() == slp.rule_count());
    CHECK(back.root() == slp.root());
    CHECK(expand(back, 60) == expand(slp, 60));
    std::ostringstream second;
    write_slp(second, back, std::vector<std::string>{"generated for a test"});
    CHECK(first.str() == second.str());
}

} // TEST_SUITE
