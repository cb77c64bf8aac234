// slpwb: Word Break on grammar-compressed text.
//
// Exit codes: 0 answered, 2 input error, 3 self-check mismatch, 4 at least
// one query range failed.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "slpwb/cliquegen.hpp"
#include "slpwb/engine.hpp"
#include "slpwb/io.hpp"

using namespace slpwb;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitQueryFailure = 4;

io::TextMode mode_of(bool tokens) {
    return tokens ? io::TextMode::tokens : io::TextMode::bytes;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SolveArgs {
    std::string slp_path, dict_path;
    bool tokens = false;
    bool no_balance = false;
    std::uint64_t mem_cap = std::uint64_t{8} << 30;
    std::optional<std::uint64_t> expand_check;
    std::optional<std::uint64_t> witness_limit;
};

int run_solve(const SolveArgs& a) {
    const Slp slp = io::read_slp_file(a.slp_path);
    const Dictionary dict(io::read_dict_file(a.dict_path, mode_of(a.tokens)));

    IndexBuildOptions opts;
    opts.balance_first = !a.no_balance;
    opts.memory_cap_bytes = a.mem_cap;
    const WordBreakIndex idx = WordBreakIndex::build(slp, dict, opts);
    const bool answer = idx.solve();
    std::cout << (answer ? "YES" : "NO") << '\n';

    if (a.witness_limit) {
        const auto lens = witness(slp, dict, *a.witness_limit);
        if (lens) {
            std::cout << "witness:";
            for (std::uint32_t l : *lens) std::cout << ' ' << l;
            std::cout << '\n';
        }
    }
    if (a.expand_check) {
        const SymbolString text = expand(slp, *a.expand_check);
        const bool direct = word_break_prefixes(text, dict).whole();
        if (direct != answer) {
            std::cout << "expand-check: MISMATCH (direct scan says "
                      << (direct ? "YES" : "NO") << ")\n";
            return kExitMismatch;
        }
        std::cout << "expand-check: OK\n";
    }
    return kExitOk;
}

struct QueryArgs {
    std::string ranges_path, slp_path, dict_path, index_path;
    bool tokens = false;
    bool no_balance = false;
    std::uint64_t mem_cap = std::uint64_t{8} << 30;
    unsigned threads = 1;
};

int run_query(const QueryArgs& a) {
    Slp slp = io::read_slp_file(a.slp_path);
    Dictionary dict(io::read_dict_file(a.dict_path, mode_of(a.tokens)));

    std::optional<WordBreakIndex> idx;
    if (!a.index_path.empty()) {
        const ContentHash sh = io::sha256_file(a.slp_path);
        const ContentHash dh = io::sha256_file(a.dict_path);
        // The index stores matrices for the grammar as it looked after the
        // (deterministic) balancing step of `slpwb index`; mirror it here.
        // Pass --no-balance iff the index was built with --no-balance.
        if (!a.no_balance) slp = balance(slp);
        idx = io::load_index_file(a.index_path, std::move(slp), std::move(dict),
                                  sh, dh);
    } else {
        IndexBuildOptions opts;
        opts.balance_first = !a.no_balance;
        opts.memory_cap_bytes = a.mem_cap;
        idx = WordBreakIndex::build(std::move(slp), std::move(dict), opts);
    }

    std::ifstream ranges(a.ranges_path);
    if (!ranges) throw Error("cannot open: " + a.ranges_path);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::vector<bool> malformed;
    std::string line;
    while (std::getline(ranges, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::uint64_t i = 0, j = 0;
        std::string rest;
        if (ss >> i >> j && !(ss >> rest)) {
            pairs.emplace_back(i, j);
            malformed.push_back(false);
        } else {
            pairs.emplace_back(0, 0);
            malformed.push_back(true);
        }
    }

    // Fan out over the immutable index; output order is preserved by slot.
    std::vector<int> results(pairs.size(), -1); // -1 err, 0 no, 1 yes
    const unsigned workers =
        std::max(1u, std::min<unsigned>(a.threads, std::thread::hardware_concurrency()));
    const auto worker = [&](unsigned w) {
        for (std::size_t q = w; q < pairs.size(); q += workers) {
            if (malformed[q]) continue;
            try {
                results[q] = idx->query(pairs[q].first, pairs[q].second) ? 1 : 0;
            } catch (const RangeError&) {
                results[q] = -1;
            }
        }
    };
    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    bool any_failed = false;
    for (int r : results) {
        if (r < 0) {
            std::cout << "ERR\n";
            any_failed = true;
        } else {
            std::cout << (r ? "1" : "0") << '\n';
        }
    }
    return any_failed ? kExitQueryFailure : kExitOk;
}

struct GenArgs {
    std::uint32_t n = 0, k = 1;
    std::string edges_path;
    std::optional<double> random_p;
    std::uint64_t seed = 0;
    std::string out_prefix;
    bool oracle = false;
};

int run_gen_clique(const GenArgs& a) {
    Graph g(0);
    std::string source;
    if (!a.edges_path.empty()) {
        g = io::read_graph_file(a.edges_path);
        if (a.n && a.n != g.vertex_count())
            throw ParseError("--n disagrees with the graph file");
        source = "edges=" + a.edges_path;
    } else if (a.random_p) {
        if (!a.n) throw ParseError("--random needs --n");
        g = Graph::random(a.n, *a.random_p, a.seed);
        source = "p=" + std::to_string(*a.random_p) +
                 " seed=" + std::to_string(a.seed);
    } else {
        throw ParseError("need --edges FILE or --random P");
    }

    const std::uint32_t n = g.vertex_count();
    const std::uint64_t N = reduction_size(n, a.k);
    if (n < 4 * a.k)
        std::cerr << "warning: n < 4k, no " << 4 * a.k
                  << "-clique can exist; the answer is NO by construction\n";

    const CliqueInstance inst = build_clique_instance(g, a.k);
    const std::vector<std::string> header{
        "k-clique hardness instance: n=" + std::to_string(n) +
        " k=" + std::to_string(a.k) + " N=" + std::to_string(N) + " " + source};
    io::write_slp_file(a.out_prefix + ".slp", inst.slp, header);
    io::write_dict_file_tokens(a.out_prefix + ".dict", inst.dict_words);

    std::ofstream manifest(a.out_prefix + ".manifest");
    if (!manifest) throw Error("cannot create: " + a.out_prefix + ".manifest");
    manifest << n << ' ' << a.k << ' ' << N;
    if (a.oracle)
        manifest << ' ' << (brute_force_clique(g, 4 * a.k) ? "YES" : "NO");
    manifest << '\n';
    manifest << "# " << header[0] << '\n';

    std::cout << "wrote " << a.out_prefix << ".slp (" << inst.slp.rule_count()
              << " rules, " << inst.slp.text_len() << " tokens), "
              << a.out_prefix << ".dict (" << inst.dict_words.size()
              << " words), " << a.out_prefix << ".manifest\n";
    return kExitOk;
}

struct ExpandArgs {
    std::string slp_path, out_path;
    std::uint64_t limit = 100000000;
    bool tokens = false;
};

int run_expand(const ExpandArgs& a) {
    const Slp slp = io::read_slp_file(a.slp_path);
    const SymbolString text = expand(slp, a.limit);
    const bool as_tokens = a.tokens || slp.alphabet_size() > 256;
    std::string bytes;
    if (as_tokens) {
        std::ostringstream ss;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (i) ss << ' ';
            ss << text[i];
        }
        ss << '\n';
        bytes = std::move(ss).str();
    } else {
        bytes.reserve(text.size());
        for (Token t : text) bytes.push_back(static_cast<char>(t));
    }
    if (a.out_path.empty())
        std::cout << bytes;
    else
        io::write_file_bytes(a.out_path, bytes);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Benchmarks. CSV only; plotting happens elsewhere.

struct BenchArgs {
    std::string suite;
    std::string out_path;
    std::uint32_t t_min = 10, t_max = 30;
    std::string m_list = "8,16,32,64";
    std::uint32_t n = 20, k = 1;
    std::uint64_t seed = 1;
};

double median_query_seconds(const WordBreakIndex& idx, std::uint64_t text_len,
                            std::mt19937_64& rng, int count) {
    std::vector<double> times;
    times.reserve(count);
    for (int q = 0; q < count; ++q) {
        const std::uint64_t len = 1 + rng() % std::min<std::uint64_t>(text_len, 4096);
        const std::uint64_t i = 1 + rng() % (text_len - len + 1);
        const auto t0 = Clock::now();
        volatile bool r = idx.query(i, i + len - 1);
        (void)r;
        times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

int run_bench(const BenchArgs& a) {
    std::ostringstream csv;
    std::mt19937_64 rng(a.seed);

    if (a.suite == "scaling-N") {
        csv << "suite,t,N,g,m,build_s,solve_s,query_median_s,mem_bytes\n";
        const Dictionary dict({tokens_of("aa"), tokens_of("aaa")});
        for (std::uint32_t t = a.t_min; t <= a.t_max; ++t) try {
                SlpBuilder b;
                std::uint32_t v = b.terminal('a');
                for (std::uint32_t i = 0; i < t; ++i) v = b.binary(v, v);
                const Slp slp = std::move(b).finish(v);
                const auto t0 = Clock::now();
                const WordBreakIndex idx =
                    WordBreakIndex::build(slp, dict, {.balance_first = false});
                const double build_s = seconds_since(t0);
                const auto t1 = Clock::now();
                volatile bool answer = idx.solve();
                (void)answer;
                const double solve_s = seconds_since(t1);
                const double query_s =
                    median_query_seconds(idx, slp.text_len(), rng, 21);
                csv << "scaling-N," << t << ',' << slp.text_len() << ','
                    << idx.stats().rules << ',' << idx.stats().max_word_len
                    << ',' << build_s << ',' << solve_s << ',' << query_s << ','
                    << idx.stats().matrix_bytes << '\n';
            } catch (const std::exception& e) {
                csv << "scaling-N," << t << ",error: " << e.what() << '\n';
            }
    } else if (a.suite == "scaling-m") {
        csv << "suite,m,N,g,K,build_s,solve_s,query_median_s,mem_bytes\n";
        SymbolString text(1 << 16);
        for (Token& t : text) t = rng() % 4;
        const Slp slp = build_balanced_slp(text);
        std::istringstream ms(a.m_list);
        for (std::string field; std::getline(ms, field, ',');) try {
                const auto m = static_cast<std::uint32_t>(std::stoul(field));
                std::vector<SymbolString> words;
                for (int w = 0; w < 64; ++w) {
                    SymbolString word(1 + rng() % m);
                    for (Token& t : word) t = rng() % 4;
                    words.push_back(std::move(word));
                }
                const Dictionary dict(std::move(words));
                const auto t0 = Clock::now();
                const WordBreakIndex idx =
                    WordBreakIndex::build(slp, dict, {.balance_first = false});
                const double build_s = seconds_since(t0);
                const auto t1 = Clock::now();
                volatile bool answer = idx.solve();
                (void)answer;
                const double solve_s = seconds_since(t1);
                const double query_s =
                    median_query_seconds(idx, text.size(), rng, 21);
                csv << "scaling-m," << dict.max_word_len() << ',' << text.size()
                    << ',' << idx.stats().rules << ',' << dict.word_count()
                    << ',' << build_s << ',' << solve_s << ',' << query_s << ','
                    << idx.stats().matrix_bytes << '\n';
            } catch (const std::exception& e) {
                csv << "scaling-m," << field << ",error: " << e.what() << '\n';
            }
    } else if (a.suite == "clique") {
        csv << "suite,n,k,N,g,m,words,dict_total,w_len,build_s,solve_s,answer,"
               "mem_bytes\n";
        const Graph g = Graph::complete(a.n);
        const CliqueInstance inst = build_clique_instance(g, a.k);
        std::uint64_t total = 0;
        for (const auto& w : inst.dict_words) total += w.size();
        const auto t0 = Clock::now();
        const WordBreakIndex idx = WordBreakIndex::build(
            inst.slp, Dictionary(inst.dict_words), {.balance_first = false});
        const double build_s = seconds_since(t0);
        const auto t1 = Clock::now();
        const bool answer = idx.solve();
        const double solve_s = seconds_since(t1);
        csv << "clique," << a.n << ',' << a.k << ',' << inst.N << ','
            << idx.stats().rules << ',' << idx.stats().max_word_len << ','
            << inst.dict_words.size() << ',' << total << ','
            << inst.slp.text_len() << ',' << build_s << ',' << solve_s << ','
            << (answer ? "YES" : "NO") << ',' << idx.stats().matrix_bytes
            << '\n';
    } else {
        throw ParseError("unknown suite '" + a.suite +
                         "' (choose scaling-N, scaling-m, clique)");
    }

    if (a.out_path.empty())
        std::cout << csv.str();
    else
        io::write_file_bytes(a.out_path, csv.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Word Break on SLP-compressed text"};
    app.require_subcommand(1);

    // build-slp
    std::string bs_in, bs_out;
    bool bs_tokens = false;
    auto* build_slp_cmd =
        app.add_subcommand("build-slp", "Build a balanced grammar for a text file");
    build_slp_cmd->add_option("input", bs_in, "text file")->required();
    build_slp_cmd->add_option("-o,--output", bs_out, "grammar file")->required();
    build_slp_cmd->add_flag("--tokens", bs_tokens, "token-mode input");

    // solve
    SolveArgs sa;
    std::uint64_t sa_expand_check = 0, sa_witness = 0;
    auto* solve_cmd = app.add_subcommand("solve", "Word Break for the whole text");
    solve_cmd->add_option("slp", sa.slp_path, "grammar file")->required();
    solve_cmd->add_option("dict", sa.dict_path, "dictionary file")->required();
    solve_cmd->add_flag("--tokens", sa.tokens, "token-mode dictionary");
    solve_cmd->add_flag("--no-balance", sa.no_balance, "skip grammar balancing");
    solve_cmd->add_option("--mem-cap", sa.mem_cap, "index memory cap in bytes");
    auto* ec_opt = solve_cmd->add_option(
        "--expand-check", sa_expand_check,
        "cross-check against the uncompressed scan (refused above LIMIT tokens)");
    ec_opt->expected(0, 1)->default_val(100000000);
    auto* wit_opt = solve_cmd->add_option("--witness", sa_witness,
                                          "print factor lengths (expansion limit)");

    // index
    std::string ix_slp, ix_dict, ix_out;
    bool ix_tokens = false, ix_no_balance = false;
    std::uint64_t ix_cap = std::uint64_t{8} << 30;
    auto* index_cmd = app.add_subcommand("index", "Build and save a query index");
    index_cmd->add_option("slp", ix_slp, "grammar file")->required();
    index_cmd->add_option("dict", ix_dict, "dictionary file")->required();
    index_cmd->add_option("-o,--output", ix_out, "index file")->required();
    index_cmd->add_flag("--tokens", ix_tokens, "token-mode dictionary");
    index_cmd->add_flag("--no-balance", ix_no_balance, "skip grammar balancing");
    index_cmd->add_option("--mem-cap", ix_cap, "index memory cap in bytes");

    // query
    QueryArgs qa;
    auto* query_cmd =
        app.add_subcommand("query", "Word Break for substrings, one range per line");
    query_cmd->add_option("ranges", qa.ranges_path, "file of 'i j' lines")->required();
    query_cmd->add_option("--slp", qa.slp_path, "grammar file")->required();
    query_cmd->add_option("--dict", qa.dict_path, "dictionary file")->required();
    query_cmd->add_option("--index", qa.index_path, "saved index file");
    query_cmd->add_flag("--tokens", qa.tokens, "token-mode dictionary");
    query_cmd->add_flag("--no-balance", qa.no_balance, "skip grammar balancing");
    query_cmd->add_option("--mem-cap", qa.mem_cap, "index memory cap in bytes");
    query_cmd->add_option("--threads", qa.threads, "worker threads");

    // gen-clique
    GenArgs ga;
    double ga_p = 0.5;
    auto* gen_cmd = app.add_subcommand(
        "gen-clique", "Generate a k-clique hardness instance (grammar + dictionary)");
    gen_cmd->add_option("--n", ga.n, "vertex count");
    gen_cmd->add_option("--k", ga.k, "clique parameter")->default_val(1);
    gen_cmd->add_option("--edges", ga.edges_path, "graph file");
    auto* rand_opt =
        gen_cmd->add_option("--random", ga_p, "random graph with edge probability P");
    gen_cmd->add_option("--seed", ga.seed, "random graph seed");
    gen_cmd->add_option("-o,--output", ga.out_prefix, "output prefix")->required();
    gen_cmd->add_flag("--oracle", ga.oracle,
                      "record the brute-force answer in the manifest");

    // expand
    ExpandArgs ea;
    auto* expand_cmd = app.add_subcommand("expand", "Expand a grammar to text");
    expand_cmd->add_option("slp", ea.slp_path, "grammar file")->required();
    expand_cmd->add_option("-o,--output", ea.out_path, "output file (default stdout)");
    expand_cmd->add_option("--limit", ea.limit, "refuse longer expansions");
    expand_cmd->add_flag("--tokens", ea.tokens, "force token-mode output");

    // bench
    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Timing suites, CSV output");
    bench_cmd->add_option("--suite", ba.suite, "scaling-N | scaling-m | clique")
        ->required();
    bench_cmd->add_option("-o,--output", ba.out_path, "CSV file (default stdout)");
    bench_cmd->add_option("--t-min", ba.t_min, "scaling-N: smallest doubling count");
    bench_cmd->add_option("--t-max", ba.t_max, "scaling-N: largest doubling count");
    bench_cmd->add_option("--m-list", ba.m_list, "scaling-m: comma-separated m values");
    bench_cmd->add_option("--n", ba.n, "clique: vertex count");
    bench_cmd->add_option("--k", ba.k, "clique: parameter k");
    bench_cmd->add_option("--seed", ba.seed, "workload seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (build_slp_cmd->parsed()) {
            const SymbolString text =
                io::read_text_file(bs_in, mode_of(bs_tokens));
            io::write_slp_file(bs_out, build_balanced_slp(text));
            return kExitOk;
        }
        if (solve_cmd->parsed()) {
            if (ec_opt->count()) sa.expand_check = sa_expand_check;
            if (wit_opt->count()) sa.witness_limit = sa_witness;
            return run_solve(sa);
        }
        if (index_cmd->parsed()) {
            const Slp slp = io::read_slp_file(ix_slp);
            const Dictionary dict(io::read_dict_file(ix_dict, mode_of(ix_tokens)));
            IndexBuildOptions opts;
            opts.balance_first = !ix_no_balance;
            opts.memory_cap_bytes = ix_cap;
            const WordBreakIndex idx = WordBreakIndex::build(slp, dict, opts);
            io::save_index_file(ix_out, idx, io::sha256_file(ix_slp),
                                io::sha256_file(ix_dict));
            std::cout << "wrote " << ix_out << " (" << idx.stats().rules
                      << " rules, m=" << idx.stats().max_word_len << ", "
                      << idx.stats().matrix_bytes << " matrix bytes)\n";
            return kExitOk;
        }
        if (query_cmd->parsed()) return run_query(qa);
        if (gen_cmd->parsed()) {
            if (rand_opt->count()) ga.random_p = ga_p;
            return run_gen_clique(ga);
        }
        if (expand_cmd->parsed()) return run_expand(ea);
        if (bench_cmd->parsed()) return run_bench(ba);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
