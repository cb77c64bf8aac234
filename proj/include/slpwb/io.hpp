#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "slpwb/cliquegen.hpp"
#include "slpwb/engine.hpp"
#include "slpwb/slp.hpp"
#include "slpwb/types.hpp"

namespace slpwb::io {

// Byte mode treats file contents verbatim, one token per byte (newlines
// included for text, newline-separated for dictionaries). Token mode is one
// line per string of space-separated decimal tokens.
enum class TextMode { bytes, tokens };

// Whole-file text: byte mode maps every byte; token mode requires exactly
// one nonblank line. Empty text is rejected.
SymbolString read_text_file(const std::filesystem::path& path, TextMode mode);

// One word per line. Blank lines are skipped; in token mode a line of only
// whitespace is rejected as ambiguous.
std::vector<SymbolString> read_dict_file(const std::filesystem::path& path,
                                         TextMode mode);

void write_dict_file_tokens(const std::filesystem::path& path,
                            const std::vector<SymbolString>& words);

Slp read_slp_file(const std::filesystem::path& path);
void write_slp_file(const std::filesystem::path& path, const Slp& slp,
                    std::span<const std::string> header_comments = {});

// First line "G <n> <edge_count>", then one "u v" per line, 1-based.
Graph read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const Graph& g);

// SHA-256 of the raw file bytes; index files record these for the grammar
// and dictionary the matrices were built from.
ContentHash sha256_file(const std::filesystem::path& path);
ContentHash sha256_bytes(std::span<const std::uint8_t> bytes);
std::string hash_hex(const ContentHash& h);

void save_index_file(const std::filesystem::path& path, const WordBreakIndex& idx,
                     const ContentHash& slp_hash, const ContentHash& dict_hash);
WordBreakIndex load_index_file(const std::filesystem::path& path, Slp slp,
                               Dictionary dict, const ContentHash& slp_hash,
                               const ContentHash& dict_hash);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

} // namespace slpwb::io
