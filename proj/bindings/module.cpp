#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "slpwb/cliquegen.hpp"
#include "slpwb/engine.hpp"
#include "slpwb/io.hpp"
#include "slpwb/slp.hpp"

namespace py = pybind11;
using namespace slpwb;

namespace {

SymbolString to_tokens(const py::object& obj) {
    if (py::isinstance<py::bytes>(obj) || py::isinstance<py::str>(obj)) {
        const std::string s = py::isinstance<py::bytes>(obj)
                                  ? obj.cast<std::string>()
                                  : obj.cast<std::string>();
        return tokens_of(s);
    }
    return obj.cast<SymbolString>();
}

std::vector<SymbolString> to_word_list(const py::iterable& words) {
    std::vector<SymbolString> out;
    for (py::handle w : words) out.push_back(to_tokens(py::reinterpret_borrow<py::object>(w)));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Word Break on SLP-compressed text";

    py::register_exception<Error>(m, "SlpwbError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "SlpwbParseError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "SlpwbRangeError", PyExc_IndexError);
    py::register_exception<LimitError>(m, "SlpwbLimitError", PyExc_RuntimeError);

    py::class_<Slp>(m, "Slp")
        .def_property_readonly("rule_count", &Slp::rule_count)
        .def_property_readonly("root", &Slp::root)
        .def_property_readonly("alphabet_size", &Slp::alphabet_size)
        .def_property_readonly("text_len", &Slp::text_len)
        .def("len", py::overload_cast<std::uint32_t>(&Slp::len, py::const_))
        .def("height", py::overload_cast<>(&Slp::height, py::const_))
        .def("height_of", py::overload_cast<std::uint32_t>(&Slp::height, py::const_))
        .def("expand",
             [](const Slp& s, std::uint64_t limit) { return expand(s, limit); },
             py::arg("limit") = std::uint64_t{100000000})
        .def("extract",
             [](const Slp& s, std::uint64_t i, std::uint64_t j) {
                 return extract(s, i, j);
             })
        .def("expand_affix",
             [](const Slp& s, std::uint32_t v, std::uint64_t t, bool suffix) {
                 return expand_affix(s, v, t,
                                     suffix ? Affix::suffix : Affix::prefix);
             },
             py::arg("v"), py::arg("t"), py::arg("suffix") = false)
        .def("decompose",
             [](const Slp& s, std::uint64_t i, std::uint64_t j) {
                 std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
                 for (const Segment& seg : decompose(s, i, j))
                     out.emplace_back(seg.node, seg.length);
                 return out;
             })
        .def("to_text",
             [](const Slp& s) {
                 std::ostringstream ss;
                 write_slp(ss, s);
                 return ss.str();
             })
        .def("__repr__", [](const Slp& s) {
            return "<Slp rules=" + std::to_string(s.rule_count()) +
                   " len=" + std::to_string(s.text_len()) +
                   " height=" + std::to_string(s.height()) + ">";
        });

    m.def("parse_slp", [](const std::string& text) { return parse_slp(text); });
    m.def("read_slp_file",
          [](const std::string& path) { return io::read_slp_file(path); });
    m.def(
        "build_balanced_slp",
        [](const py::object& text, std::uint32_t alphabet_size) {
            return build_balanced_slp(to_tokens(text), alphabet_size);
        },
        py::arg("text"), py::arg("alphabet_size") = 0);
    m.def("balance", &balance);

    py::class_<Dictionary>(m, "Dictionary")
        .def(py::init([](const py::iterable& words) {
                 return Dictionary(to_word_list(words));
             }),
             py::arg("words"))
        .def_property_readonly("word_count", &Dictionary::word_count)
        .def_property_readonly("max_word_len", &Dictionary::max_word_len)
        .def_property_readonly("total_len", &Dictionary::total_len)
        .def("contains",
             [](const Dictionary& d, const py::object& w) {
                 return d.contains(to_tokens(w));
             })
        .def("scan_matches",
             [](const Dictionary& d, const py::object& text, std::size_t from) {
                 return d.scan_matches(to_tokens(text), from);
             },
             py::arg("text"), py::arg("from_") = 0)
        .def("rev_scan",
             [](const Dictionary& d, const py::object& buffer) {
                 return d.rev_scan(to_tokens(buffer));
             })
        .def("__len__", &Dictionary::word_count)
        .def("__repr__", [](const Dictionary& d) {
            return "<Dictionary words=" + std::to_string(d.word_count()) +
                   " m=" + std::to_string(d.max_word_len()) + ">";
        });

    m.def("word_break_prefixes",
          [](const py::object& text, const Dictionary& d) {
              const PrefixTable t = word_break_prefixes(to_tokens(text), d);
              std::vector<bool> out(t.f.begin(), t.f.end());
              return out;
          });

    py::class_<IndexStats>(m, "IndexStats")
        .def_readonly("rules", &IndexStats::rules)
        .def_readonly("max_word_len", &IndexStats::max_word_len)
        .def_readonly("matrix_bytes", &IndexStats::matrix_bytes)
        .def_readonly("build_seconds", &IndexStats::build_seconds);

    py::class_<WordBreakIndex>(m, "WordBreakIndex")
        .def_static(
            "build",
            [](const Slp& slp, const Dictionary& dict, bool balance_first,
               std::uint64_t memory_cap) {
                return WordBreakIndex::build(
                    slp, dict, {balance_first, memory_cap});
            },
            py::arg("slp"), py::arg("dict"), py::arg("balance") = true,
            py::arg("memory_cap") = std::uint64_t{8} << 30)
        .def("solve", &WordBreakIndex::solve)
        .def("query", &WordBreakIndex::query, py::arg("i"), py::arg("j"))
        .def_property_readonly("stats", &WordBreakIndex::stats)
        .def_property_readonly("text_len",
                               [](const WordBreakIndex& i) { return i.slp().text_len(); });

    m.def("witness",
          [](const Slp& slp, const Dictionary& d, std::uint64_t limit)
              -> std::optional<std::vector<std::uint32_t>> {
              return witness(slp, d, limit);
          },
          py::arg("slp"), py::arg("dict"), py::arg("limit") = std::uint64_t{100000000});

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::uint32_t>(), py::arg("n"))
        .def_static("complete", &Graph::complete)
        .def_static("random", &Graph::random, py::arg("n"), py::arg("p"),
                    py::arg("seed"))
        .def_property_readonly("vertex_count", &Graph::vertex_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("add_edge", &Graph::add_edge)
        .def("adjacent", &Graph::adjacent);

    m.def("enumerate_k_cliques", &enumerate_k_cliques);
    m.def("clique_id",
          [](const std::vector<std::uint32_t>& c, std::uint32_t n) {
              return clique_id(c, n);
          });
    m.def("is_biclique",
          [](const Graph& g, const std::vector<std::uint32_t>& a,
             const std::vector<std::uint32_t>& b) { return is_biclique(g, a, b); });
    m.def("brute_force_clique", &brute_force_clique);
    m.def("build_dictionary_from_graph", &build_dictionary_from_graph);
    m.def("build_w_slp", &build_w_slp);
    m.def(
        "f_transform",
        [](const SymbolString& s, int variant, std::uint64_t N) {
            return f_transform(s, variant == 0 ? FVariant::f0 : FVariant::f1,
                               ReductionTokens{N});
        },
        py::arg("s"), py::arg("variant"), py::arg("N"));
    m.def("reduction_tokens", [](std::uint64_t N) {
        const ReductionTokens t{N};
        py::dict d;
        d["dollar"] = t.dollar();
        d["hash"] = t.hash();
        d["gamma"] = t.gamma();
        d["mu"] = t.mu();
        d["alpha"] = t.alpha();
        d["beta"] = t.beta();
        d["alphabet_size"] = t.alphabet_size();
        return d;
    });
}
