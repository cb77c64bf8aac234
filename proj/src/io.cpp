#include "slpwb/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace slpwb::io {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const char* what) {
    throw Error(std::string(what) + ": " + path.string());
}

Token parse_token(std::string_view field, const std::filesystem::path& path,
                  std::size_t line_no) {
    std::uint32_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(path.string() + " line " + std::to_string(line_no) +
                         ": invalid token '" + std::string(field) + "'");
    return value;
}

SymbolString parse_token_line(const std::string& line,
                              const std::filesystem::path& path,
                              std::size_t line_no) {
    SymbolString s;
    std::istringstream ss(line);
    for (std::string w; ss >> w;) s.push_back(parse_token(w, path, line_no));
    return s;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot create");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) io_fail(path, "write failed");
}

SymbolString read_text_file(const std::filesystem::path& path, TextMode mode) {
    if (mode == TextMode::bytes) {
        const std::string bytes = read_file_bytes(path);
        if (bytes.empty()) throw ParseError("empty text file: " + path.string());
        return tokens_of(bytes);
    }
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open");
    SymbolString text;
    bool seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (seen)
            throw ParseError(path.string() + " line " + std::to_string(line_no) +
                             ": token-mode text file must hold a single string");
        text = parse_token_line(line, path, line_no);
        seen = true;
    }
    if (!seen) throw ParseError("empty text file: " + path.string());
    return text;
}

std::vector<SymbolString> read_dict_file(const std::filesystem::path& path,
                                         TextMode mode) {
    std::vector<SymbolString> words;
    if (mode == TextMode::bytes) {
        const std::string bytes = read_file_bytes(path);
        std::size_t start = 0;
        while (start <= bytes.size()) {
            const std::size_t nl = bytes.find('\n', start);
            const std::size_t end = nl == std::string::npos ? bytes.size() : nl;
            if (end > start)
                words.push_back(
                    tokens_of(std::string_view(bytes).substr(start, end - start)));
            if (nl == std::string::npos) break;
            start = nl + 1;
        }
        return words;
    }
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (blank(line))
            throw ParseError(path.string() + " line " + std::to_string(line_no) +
                             ": whitespace-only line in token-mode dictionary");
        words.push_back(parse_token_line(line, path, line_no));
    }
    return words;
}

void write_dict_file_tokens(const std::filesystem::path& path,
                            const std::vector<SymbolString>& words) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot create");
    for (const SymbolString& w : words) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out << ' ';
            out << w[i];
        }
        out << '\n';
    }
    if (!out) io_fail(path, "write failed");
}

Slp read_slp_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open");
    try {
        return parse_slp(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_slp_file(const std::filesystem::path& path, const Slp& slp,
                    std::span<const std::string> header_comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot create");
    write_slp(out, slp, header_comments);
    if (!out) io_fail(path, "write failed");
}

Graph read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open");
    std::string line;
    std::size_t line_no = 0;
    std::uint32_t n = 0;
    std::size_t expected_edges = 0;
    bool header = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        if (blank(line)) continue;
        std::istringstream ss(line);
        if (!header) {
            std::string g;
            if (!(ss >> g >> n >> expected_edges) || g != "G")
                throw ParseError(path.string() + " line " + std::to_string(line_no) +
                                 ": expected header 'G <n> <edge_count>'");
            header = true;
        } else {
            std::uint32_t u = 0, v = 0;
            if (!(ss >> u >> v))
                throw ParseError(path.string() + " line " + std::to_string(line_no) +
                                 ": expected edge 'u v'");
            edges.emplace_back(u, v);
        }
        std::string rest;
        if (ss >> rest)
            throw ParseError(path.string() + " line " + std::to_string(line_no) +
                             ": trailing field '" + rest + "'");
    }
    if (!header) throw ParseError(path.string() + ": missing 'G' header");
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (g.edge_count() != expected_edges)
        throw ParseError(path.string() + ": header says " +
                         std::to_string(expected_edges) + " edges, found " +
                         std::to_string(g.edge_count()));
    return g;
}

void write_graph_file(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot create");
    out << "G " << g.vertex_count() << " " << g.edge_count() << '\n';
    for (std::uint32_t u = 1; u <= g.vertex_count(); ++u)
        for (std::uint32_t v = u + 1; v <= g.vertex_count(); ++v)
            if (g.adjacent(u, v)) out << u << " " << v << '\n';
    if (!out) io_fail(path, "write failed");
}

ContentHash sha256_bytes(std::span<const std::uint8_t> bytes) {
    ContentHash h{};
    unsigned int out_len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), h.data(), &out_len, EVP_sha256(),
                    nullptr) ||
        out_len != h.size())
        throw Error("sha256 failed");
    return h;
}

ContentHash sha256_file(const std::filesystem::path& path) {
    const std::string bytes = read_file_bytes(path);
    return sha256_bytes(
        {reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
}

std::string hash_hex(const ContentHash& h) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (std::uint8_t b : h) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

void save_index_file(const std::filesystem::path& path, const WordBreakIndex& idx,
                     const ContentHash& slp_hash, const ContentHash& dict_hash) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot create");
    idx.save(out, slp_hash, dict_hash);
    if (!out) io_fail(path, "write failed");
}

WordBreakIndex load_index_file(const std::filesystem::path& path, Slp slp,
                               Dictionary dict, const ContentHash& slp_hash,
                               const ContentHash& dict_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open");
    return WordBreakIndex::load(in, std::move(slp), std::move(dict), slp_hash,
                                dict_hash);
}

} // namespace slpwb::io
