#include "doctest.h"

#include <filesystem>
#include <random>

#include "slpwb/io.hpp"
#include "support.hpp"

using namespace slpwb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("slpwb_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    fs::path file(const char* name) const { return dir / name; }
};

} // namespace

TEST_SUITE("io") {

TEST_CASE("byte-mode text is verbatim") {
    TempDir tmp;
    io::write_file_bytes(tmp.file("t.txt"), "ab\nba");
    const SymbolString text = io::read_text_file(tmp.file("t.txt"), io::TextMode::bytes);
    CHECK(text == tokens_of("ab\nba"));
    io::write_file_bytes(tmp.file("empty.txt"), "");
    CHECK_THROWS_AS(io::read_text_file(tmp.file("empty.txt"), io::TextMode::bytes),
                    ParseError);
}

TEST_CASE("token-mode text") {
    TempDir tmp;
    io::write_file_bytes(tmp.file("t.txt"), "\n1 2 1\n\n");
    CHECK(io::read_text_file(tmp.file("t.txt"), io::TextMode::tokens) ==
          SymbolString{1, 2, 1});
    io::write_file_bytes(tmp.file("two.txt"), "1 2\n3\n");
    CHECK_THROWS_AS(io::read_text_file(tmp.file("two.txt"), io::TextMode::tokens),
                    ParseError);
    io::write_file_bytes(tmp.file("bad.txt"), "1 x 2\n");
    CHECK_THROWS_AS(io::read_text_file(tmp.file("bad.txt"), io::TextMode::tokens),
                    ParseError);
}

TEST_CASE("dictionary files") {
    TempDir tmp;
    io::write_file_bytes(tmp.file("d.txt"), "ab\n\nb\n");
    const auto byte_words = io::read_dict_file(tmp.file("d.txt"), io::TextMode::bytes);
    REQUIRE(byte_words.size() == 2);
    CHECK(byte_words[0] == tokens_of("ab"));
    CHECK(byte_words[1] == tokens_of("b"));

    io::write_file_bytes(tmp.file("dt.txt"), "97 98\n\n98\n");
    const auto tok_words = io::read_dict_file(tmp.file("dt.txt"), io::TextMode::tokens);
    REQUIRE(tok_words.size() == 2);
    CHECK(tok_words[0] == tokens_of("ab"));

    io::write_file_bytes(tmp.file("ws.txt"), "97\n   \n98\n");
    CHECK_THROWS_WITH_AS(io::read_dict_file(tmp.file("ws.txt"), io::TextMode::tokens),
                         doctest::Contains("whitespace-only"), ParseError);
    // In byte mode the same line is a word of three spaces.
    const auto ws = io::read_dict_file(tmp.file("ws.txt"), io::TextMode::bytes);
    CHECK(ws.size() == 3);
    CHECK(ws[1] == tokens_of("   "));
}

TEST_CASE("token dictionary writer round-trips") {
    TempDir tmp;
    const std::vector<SymbolString> words{{5, 6, 7}, {1}, {1000000, 2}};
    io::write_dict_file_tokens(tmp.file("w.dict"), words);
    CHECK(io::read_dict_file(tmp.file("w.dict"), io::TextMode::tokens) == words);
}

TEST_CASE("slp files") {
    TempDir tmp;
    test::Rng rng(51);
    const Slp slp = test::random_slp(rng, 50, 4);
    io::write_slp_file(tmp.file("g.slp"), slp, std::vector<std::string>{"hdr"});
    const Slp back = io::read_slp_file(tmp.file("g.slp"));
    CHECK(expand(back, 50) == expand(slp, 50));
    io::write_file_bytes(tmp.file("bad.slp"), "R 0 T 1\n");
    CHECK_THROWS_WITH_AS(io::read_slp_file(tmp.file("bad.slp")),
                         doctest::Contains("bad.slp"), ParseError);
}

TEST_CASE("graph files") {
    TempDir tmp;
    io::write_file_bytes(tmp.file("g.graph"), "# a comment\nG 4 2\n1 2\n3 4\n");
    const Graph g = io::read_graph_file(tmp.file("g.graph"));
    CHECK(g.vertex_count() == 4);
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(3, 4));
    CHECK_FALSE(g.adjacent(1, 3));

    io::write_graph_file(tmp.file("h.graph"), g);
    const Graph h = io::read_graph_file(tmp.file("h.graph"));
    CHECK(h.edge_count() == 2);

    io::write_file_bytes(tmp.file("bad.graph"), "G 4 3\n1 2\n");
    CHECK_THROWS_WITH_AS(io::read_graph_file(tmp.file("bad.graph")),
                         doctest::Contains("edges"), ParseError);
    io::write_file_bytes(tmp.file("noh.graph"), "1 2\n");
    CHECK_THROWS_AS(io::read_graph_file(tmp.file("noh.graph")), ParseError);
}

TEST_CASE("sha256 known answers") {
    TempDir tmp;
    io::write_file_bytes(tmp.file("empty"), "");
    CHECK(io::hash_hex(io::sha256_file(tmp.file("empty"))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    io::write_file_bytes(tmp.file("abc"), "abc");
    CHECK(io::hash_hex(io::sha256_file(tmp.file("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("index files round-trip through the filesystem") {
    TempDir tmp;
    const Slp slp = test::abbab_slp();
    const Dictionary dict(test::ab_b_words());
    const WordBreakIndex idx = WordBreakIndex::build(slp, dict);

    io::write_slp_file(tmp.file("g.slp"), idx.slp());
    const auto sh = io::sha256_file(tmp.file("g.slp"));
    io::write_file_bytes(tmp.file("d.dict"), "ab\nb\n");
    const auto dh = io::sha256_file(tmp.file("d.dict"));

    io::save_index_file(tmp.file("i.swbi"), idx, sh, dh);
    const WordBreakIndex back = io::load_index_file(
        tmp.file("i.swbi"), io::read_slp_file(tmp.file("g.slp")),
        Dictionary(io::read_dict_file(tmp.file("d.dict"), io::TextMode::bytes)),
        sh, dh);
    CHECK(back.solve());
    CHECK(back.query(2, 3));
    CHECK_FALSE(back.query(3, 4));

    CHECK_THROWS_WITH_AS(
        io::load_index_file(tmp.file("i.swbi"),
                            io::read_slp_file(tmp.file("g.slp")),
                            Dictionary(), sh, ContentHash{}),
        doctest::Contains("different dictionary"), ParseError);
}

} // TEST_SUITE
