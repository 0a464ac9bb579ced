// Copyright 2026 The qcut Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// qcut: graph clustering and partitioning through QUBO/Ising models.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcut/bench.hpp"
#include "qcut/bipartition.hpp"
#include "qcut/community.hpp"
#include "qcut/fixtures.hpp"
#include "qcut/graph_io.hpp"
#include "qcut/kconcurrent.hpp"
#include "qcut/report.hpp"

namespace {

using namespace qcut;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBenchFailed = 3;

// Solver flags as typed; only the ones given override the config file.
struct SolverFlags {
    std::string config;
    std::optional<std::string> solver;
    std::optional<int> restarts;
    std::optional<int> sweeps;
    std::optional<double> t_initial;
    std::optional<double> t_final;
    std::optional<int> tenure;
    std::optional<int> max_no_improve;
    std::optional<int> sub_size;
    std::optional<int> rounds;
    std::optional<int> anneal_sweeps;
    std::optional<std::string> inner;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App& app) {
        app.add_option("--config", config, "JSON solver config; flags given here override it")->check(CLI::ExistingFile);
        app.add_option("--solver", solver, "exact | sa | tabu | hybrid");
        app.add_option("--restarts", restarts, "SA/tabu restarts");
        app.add_option("--sweeps", sweeps, "SA sweeps per restart");
        app.add_option("--t-initial", t_initial, "SA start temperature (default: max |coefficient|)");
        app.add_option("--t-final", t_final, "SA end temperature (default: 1e-3 of the start)");
        app.add_option("--tenure", tenure, "tabu tenure");
        app.add_option("--max-no-improve", max_no_improve, "tabu stall limit");
        app.add_option("--sub-size", sub_size, "hybrid sub-problem size");
        app.add_option("--rounds", rounds, "hybrid non-improving rounds before stopping");
        app.add_option("--anneal-sweeps", anneal_sweeps, "hybrid opening anneal sweeps (0 skips it)");
        app.add_option("--inner", inner, "hybrid inner solver: exact | tabu");
        app.add_option("--threads", threads, "worker threads (0 = all cores)");
        app.add_option("--seed", seed, "random seed");
    }

    SolverConfig resolve() const {
        SolverConfig cfg;
        if (!config.empty()) cfg = load_solver_config(config, cfg);
        nlohmann::json j = nlohmann::json::object();
        if (solver) j["solver"] = *solver;
        if (restarts) j["restarts"] = *restarts;
        if (sweeps) j["sweeps"] = *sweeps;
        if (t_initial) j["t_initial"] = *t_initial;
        if (t_final) j["t_final"] = *t_final;
        if (tenure) j["tenure"] = *tenure;
        if (max_no_improve) j["max_no_improve"] = *max_no_improve;
        if (sub_size) j["sub_size"] = *sub_size;
        if (rounds) j["rounds"] = *rounds;
        if (anneal_sweeps) j["anneal_sweeps"] = *anneal_sweeps;
        if (inner) j["inner"] = *inner;
        if (threads) j["threads"] = *threads;
        if (seed) j["seed"] = *seed;
        return merge_solver_config(cfg, j);
    }
};

// Where results go.
struct OutputFlags {
    std::string report;
    std::string partition;
    bool json = false;
    bool timing = false;

    void attach(CLI::App& app) {
        app.add_option("--report", report, "write the JSON-lines report here");
        app.add_option("--partition-out", partition, "write `node part` lines here");
        app.add_flag("--json", json, "print the JSON report line instead of the table");
        app.add_flag("--timing", timing, "include wall_time in JSON output");
    }

    void emit(const std::vector<RunReport>& rows, const Assignment* a) const {
        if (!report.empty()) {
            std::ofstream out(report);
            if (!out) throw std::runtime_error("cannot write " + report);
            for (const auto& r : rows) write_report_line(out, r, timing);
        }
        if (!partition.empty() && a != nullptr) {
            std::ofstream out(partition);
            if (!out) throw std::runtime_error("cannot write " + partition);
            write_partition(out, *a);
        }
        if (json) {
            for (const auto& r : rows) write_report_line(std::cout, r, timing);
        } else {
            print_table(std::cout, rows);
        }
    }
};

struct GraphInput {
    std::string path;
    std::string format;

    void attach(CLI::App& app) {
        app.add_option("graph", path, "graph file")->required();
        app.add_option("--format", format, "metis | edgelist | mtx (default: by extension)");
    }

    Graph load() const {
        const auto fmt = format.empty() ? guess_format(path) : parse_format_name(format);
        return load_graph(path, fmt);
    }

    nlohmann::json descriptor() const { return {{"file", path}}; }
};

int run_cluster(const GraphInput& in, int depth, double tau, const std::string& encoding, const SolverFlags& sf,
                const OutputFlags& of) {
    const Graph g = in.load();
    const SolverConfig cfg = sf.resolve();
    const auto enc = encoding == "spin" ? CdEncoding::kSpin : CdEncoding::kBinary;
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = detect_communities(g, depth, cfg, tau, enc);
    RunReport r = make_report(g, res.assignment, "cluster");
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.input = in.descriptor();
    r.solver = solver_config_json(cfg);
    r.seed = cfg.seed;
    r.couplers = res.tree.nodes.front().couplers;
    of.emit({r}, &res.assignment);
    if (!of.json) {
        std::cout << "couplers after thresholding (tau " << tau << "): " << *r.couplers << '\n';
    }
    return 0;
}

int run_partition(const GraphInput& in, int k, const std::string& mode, std::optional<double> alpha,
                  std::optional<double> beta, const SolverFlags& sf, const OutputFlags& of) {
    if (k < 2) throw CLI::ValidationError("--k", "k must be at least 2");
    const Graph g = in.load();
    const SolverConfig cfg = sf.resolve();
    std::optional<PenaltyConfig> pen;
    if (alpha || beta) {
        pen = default_penalties(g);
        if (alpha) pen->alpha = *alpha;
        if (beta) pen->beta = *beta;
    }

    RunReport r;
    Assignment a;
    if (mode == "concurrent") {
        auto p = default_kway_penalties(g, k);
        if (beta) p.beta = *beta;
        if (alpha) p.alpha.assign(static_cast<std::size_t>(k), *alpha);
        const auto km = build_kway_qubo(g, k, p);
        const auto res = solve(km.model, cfg);
        const auto dec = decode_onehot(g, res.best_assignment, km.layout);
        a = dec.assignment;
        r = make_report(g, a, "kway");
        r.repairs = dec.repairs;
        r.energy = res.best_energy;
        r.wall_time = res.wall_time;
    } else {
        int levels = 0;
        while ((1 << levels) < k) ++levels;
        if ((1 << levels) != k) throw CLI::ValidationError("--k", "recursive mode needs k to be a power of two");
        if (k == 2) {
            const PenaltyConfig p = pen ? *pen : default_penalties(g);
            const auto res = solve(build_bipartition_qubo(g, p), cfg);
            a = decode_bipartition(res.best_assignment).assignment;
            r = make_report(g, a, "bisect");
            r.energy = res.best_energy;
            r.wall_time = res.wall_time;
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            const auto res = recursive_bisect(g, levels, pen, cfg);
            a = res.assignment;
            r = make_report(g, a, "recursive");
            r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.energy = res.energy;
        }
    }
    r.input = in.descriptor();
    r.solver = solver_config_json(cfg);
    r.seed = cfg.seed;
    of.emit({r}, &a);
    return 0;
}

int run_bench(const std::string& suite, const std::string& dir_flag, const std::vector<std::string>& graphs,
              const std::string& karate_path, std::uint64_t oracle_seed, bool strict, const SolverFlags& sf,
              const OutputFlags& of) {
    BenchResult res;
    if (suite == "oracle-small") {
        res = bench_oracle_small(oracle_seed);
    } else if (suite == "tables") {
        res = bench_tables(load_graph(karate_path, guess_format(karate_path)), sf.resolve());
    } else {
        std::string dir = dir_flag;
        if (dir.empty()) {
            if (const char* env = std::getenv(kWalshawDirEnv)) dir = env;
        }
        if (dir.empty()) {
            throw MissingFixture(std::string("no Walshaw directory given; download the graphs from ") + kWalshawArchiveUrl +
                                 " and pass --dir or set " + kWalshawDirEnv);
        }
        SolverConfig cfg = sf.resolve();
        if (!sf.solver && sf.config.empty()) cfg.kind = SolverKind::kHybrid;
        res = bench_walshaw(dir, graphs, cfg);
    }

    std::vector<RunReport> rows;
    for (const auto& row : res.rows) rows.push_back(row.report);
    OutputFlags quiet = of;
    quiet.json = true;
    if (!of.report.empty()) quiet.emit(rows, nullptr);
    for (const auto& row : res.rows) {
        std::cout << (row.pass ? "PASS " : "FAIL ") << row.name << ": " << row.detail << '\n';
    }
    std::cout << res.suite << ": " << res.passed() << "/" << res.rows.size() << " passed\n";
    return strict && !res.all_passed() ? kExitBenchFailed : 0;
}

int run_gen(const std::string& kind, std::size_t n, double p, std::size_t m, std::size_t count, std::size_t size,
            std::uint64_t seed, const std::string& out_path, const std::string& format) {
    Graph g;
    if (kind == "erdos-renyi") {
        g = erdos_renyi(n, p, seed);
    } else if (kind == "powerlaw-cluster") {
        g = powerlaw_cluster(n, m, p, seed);
    } else if (kind == "disjoint-cliques") {
        g = disjoint_cliques(count, size);
    } else if (kind == "path") {
        g = path_graph(n);
    } else {
        g = random_connected(n, p, seed);
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        out = &file;
    }
    if (format == "metis") {
        write_metis(*out, g);
    } else {
        *out << "# " << kind << " n=" << g.num_nodes() << " m=" << g.num_edges() << " seed=" << seed << '\n';
        for (const auto& e : g.edges()) *out << e.u << ' ' << e.v << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcut: graph clustering and partitioning via QUBO/Ising models"};
    app.require_subcommand(1);

    GraphInput cluster_in;
    SolverFlags cluster_sf;
    OutputFlags cluster_of;
    int depth = 1;
    double tau = 0.0;
    std::string encoding = "binary";
    auto* cluster = app.add_subcommand("cluster", "modularity clustering into up to 2^depth communities");
    cluster_in.attach(*cluster);
    cluster->add_option("--depth", depth, "recursion levels")->check(CLI::Range(1, 30));
    cluster->add_option("--threshold", tau, "drop modularity couplers with |B_ij| < tau")->check(CLI::NonNegativeNumber);
    cluster->add_option("--encoding", encoding, "binary | spin")->check(CLI::IsMember({"binary", "spin"}));
    cluster_sf.attach(*cluster);
    cluster_of.attach(*cluster);

    GraphInput part_in;
    SolverFlags part_sf;
    OutputFlags part_of;
    int k = 2;
    std::string mode = "recursive";
    std::optional<double> alpha;
    std::optional<double> beta;
    auto* partition = app.add_subcommand("partition", "balanced k-way partitioning");
    part_in.attach(*partition);
    partition->add_option("--k", k, "number of parts")->check(CLI::Range(2, 1 << 20));
    partition->add_option("--mode", mode, "recursive | concurrent")->check(CLI::IsMember({"recursive", "concurrent"}));
    partition->add_option("--alpha", alpha, "balance penalty (default: derived from the graph)");
    partition->add_option("--beta", beta, "cut weight (default 1)");
    part_sf.attach(*partition);
    part_of.attach(*partition);

    std::string suite;
    std::string dir;
    std::vector<std::string> graphs{"add20", "data", "3elt", "bcsstk33"};
    std::string karate = QCUT_DEFAULT_KARATE;
    std::uint64_t oracle_seed = 1;
    bool strict = false;
    SolverFlags bench_sf;
    OutputFlags bench_of;
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("suite", suite, "oracle-small | walshaw | tables")
        ->required()
        ->check(CLI::IsMember({"oracle-small", "walshaw", "tables"}));
    bench->add_option("--dir", dir, std::string("Walshaw graph directory (default: $") + kWalshawDirEnv + ")");
    bench->add_option("--graphs", graphs, "Walshaw graphs to run");
    bench->add_option("--karate", karate, "karate club edge list");
    bench->add_option("--oracle-seed", oracle_seed, "seed for the generated oracle instances");
    bench->add_flag("--strict", strict, "exit with status 3 when any row fails");
    bench_sf.attach(*bench);
    bench->add_option("--report", bench_of.report, "write the JSON-lines report here");
    bench->add_flag("--timing", bench_of.timing, "include wall_time in JSON output");

    std::string kind;
    std::size_t n = 10;
    double p = 0.5;
    std::size_t m = 2;
    std::size_t count = 2;
    std::size_t size = 3;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string out_format = "edgelist";
    auto* gen = app.add_subcommand("gen", "write a generated graph");
    gen->add_option("kind", kind, "erdos-renyi | powerlaw-cluster | disjoint-cliques | path | random-connected")
        ->required()
        ->check(CLI::IsMember({"erdos-renyi", "powerlaw-cluster", "disjoint-cliques", "path", "random-connected"}));
    gen->add_option("--n", n, "nodes");
    gen->add_option("--p", p, "edge / triad probability");
    gen->add_option("--m", m, "links per new node (powerlaw-cluster)");
    gen->add_option("--count", count, "clique count");
    gen->add_option("--size", size, "clique size");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out_path, "output file (default stdout)");
    gen->add_option("--out-format", out_format, "edgelist | metis")->check(CLI::IsMember({"edgelist", "metis"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*cluster) return run_cluster(cluster_in, depth, tau, encoding, cluster_sf, cluster_of);
        if (*partition) return run_partition(part_in, k, mode, alpha, beta, part_sf, part_of);
        if (*bench) return run_bench(suite, dir, graphs, karate, oracle_seed, strict, bench_sf, bench_of);
        if (*gen) return run_gen(kind, n, p, m, count, size, seed, out_path, out_format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "qcut: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "qcut: config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qcut: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
