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

#include "qcut/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcut/bipartition.hpp"
#include "qcut/community.hpp"
#include "qcut/fixtures.hpp"
#include "qcut/graph_io.hpp"
#include "qcut/kconcurrent.hpp"
#include "qcut/rng.hpp"

namespace qcut {

namespace {

constexpr std::array<WalshawReference, 4> kWalshaw{{
    {"add20", 2395, 596, 723, 760, 647},
    {"data", 2851, 189, 225, 221, 191},
    {"3elt", 4720, 90, 91, 92, 90},
    {"bcsstk33", 8738, 10171, 10244, 10175, 10171},
}};

constexpr std::array<ThresholdReference, 9> kKarate{{
    {0.00, 561, 0.37179487},
    {0.02, 544, 0.37179487},
    {0.05, 411, 0.37146614},
    {0.07, 300, 0.37146614},
    {0.08, 244, 0.27714497},
    {0.10, 227, 0.27714497},
    {0.11, 212, 0.25509533},
    {0.12, 194, 0.25509533},
    {0.13, 169, 0.0},
}};

std::string fmt(double v, int precision = 8) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

nlohmann::json generator_input(const std::string& name, nlohmann::json params, std::uint64_t seed) {
    return {{"generator", name}, {"params", std::move(params)}, {"seed", seed}};
}

}  // namespace

std::span<const WalshawReference> walshaw_references() { return kWalshaw; }
std::span<const ThresholdReference> karate_threshold_references() { return kKarate; }

std::size_t BenchResult::passed() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.pass; }));
}

double brute_force_balanced_cut(const Graph& g, int k) {
    const std::size_t n = g.num_nodes();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (n > 12) throw std::invalid_argument("brute-force cut oracle is limited to 12 nodes");
    std::vector<int> label(n, 0);
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    double best = std::numeric_limits<double>::infinity();
    // Odometer over all k^n labelings.
    for (;;) {
        std::fill(size.begin(), size.end(), 0);
        for (int l : label) ++size[l];
        const auto [lo, hi] = std::minmax_element(size.begin(), size.end());
        if (*hi - *lo <= 1) {
            double cut = 0.0;
            for (const auto& e : g.edges()) {
                if (label[e.u] != label[e.v]) cut += e.weight;
            }
            best = std::min(best, cut);
        }
        std::size_t pos = 0;
        while (pos < n && ++label[pos] == k) label[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

BenchResult bench_oracle_small(std::uint64_t seed) {
    BenchResult out{"oracle-small", {}};
    const SolverConfig exact{SolverKind::kExact};
    for (std::uint64_t i = 0; i < 100; ++i) {
        const std::size_t n = 3 + i % 8;
        const double p = std::array{0.3, 0.5, 0.7}[i % 3];
        const std::uint64_t gseed = derive_seed(seed, i);
        const Graph g = random_connected(n, p, gseed);
        const auto r = solve_exact(build_bipartition_qubo(g, default_penalties(g)), ExactOptions{1, 1});
        const auto dec = decode_bipartition(r.best_assignment);
        BenchRow row;
        row.name = "bisect-" + std::to_string(i);
        row.report = make_report(g, dec.assignment, "bisect");
        row.report.input = generator_input("random_connected", {{"n", n}, {"p", p}}, gseed);
        row.report.solver = solver_config_json(exact);
        row.report.energy = r.best_energy;
        const double oracle = brute_force_balanced_cut(g, 2);
        row.pass = row.report.cut_edges == oracle && dec.imbalance <= static_cast<int>(n % 2);
        row.detail = "cut " + fmt(row.report.cut_edges) + " oracle " + fmt(oracle) + " imbalance " +
                     std::to_string(dec.imbalance);
        out.rows.push_back(std::move(row));
    }
    for (std::uint64_t i = 0; i < 50; ++i) {
        const int k = 2 + static_cast<int>(i % 3);
        const std::size_t max_n = k == 4 ? 6 : 8;
        const std::size_t n = static_cast<std::size_t>(k) + (i / 3) % (max_n - k + 1);
        const std::uint64_t gseed = derive_seed(seed, 1000 + i);
        const Graph g = erdos_renyi(n, 0.5, gseed);
        const auto km = build_kway_qubo(g, k, default_kway_penalties(g, k));
        const auto r = solve_exact(km.model, ExactOptions{1, 0});
        const auto dec = decode_onehot(g, r.best_assignment, km.layout);
        BenchRow row;
        row.name = "kway-" + std::to_string(i);
        row.report = make_report(g, dec.assignment, "kway");
        row.report.input = generator_input("erdos_renyi", {{"n", n}, {"p", 0.5}, {"k", k}}, gseed);
        row.report.solver = solver_config_json(exact);
        row.report.energy = r.best_energy;
        row.report.repairs = dec.repairs;
        const auto sizes = dec.assignment.part_sizes();
        const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
        const double oracle = brute_force_balanced_cut(g, k);
        row.pass = dec.repairs == 0 && *hi - *lo <= 1 && row.report.cut_edges == oracle;
        row.detail = "k " + std::to_string(k) + " cut " + fmt(row.report.cut_edges) + " oracle " + fmt(oracle) +
                     " repairs " + std::to_string(dec.repairs);
        out.rows.push_back(std::move(row));
    }
    return out;
}

BenchResult bench_tables(const Graph& karate, const SolverConfig& solver) {
    BenchResult out{"tables", {}};
    const auto full = modularity_matrix(karate);
    for (const auto& ref : kKarate) {
        BenchRow row;
        row.name = "couplers tau=" + fmt(ref.tau, 3);
        const auto thr = threshold_couplers(full, ref.tau);
        row.report.task = "threshold";
        row.report.input = {{"file", "karate"}, {"tau", ref.tau}};
        row.report.couplers = thr.coupler_count;
        row.pass = thr.coupler_count == ref.couplers;
        row.detail = std::to_string(thr.coupler_count) + " vs " + std::to_string(ref.couplers);
        out.rows.push_back(std::move(row));
    }
    for (const auto& ref : kKarate) {
        BenchRow row;
        row.name = "modularity tau=" + fmt(ref.tau, 3);
        const auto res = detect_communities(karate, 1, solver, ref.tau);
        row.report = make_report(karate, res.assignment, "cluster");
        row.report.input = {{"file", "karate"}, {"tau", ref.tau}};
        row.report.solver = solver_config_json(solver);
        row.report.seed = solver.seed;
        row.report.couplers = res.tree.nodes.front().couplers;
        const double q = *row.report.modularity;
        if (ref.modularity == 0.0) {
            row.pass = q == 0.0;
        } else if (ref.tau <= 0.07) {
            row.pass = std::abs(q - ref.modularity) <= 1e-5;
        } else {
            row.pass = q >= ref.modularity - 1e-5;
        }
        row.detail = fmt(q) + " vs " + fmt(ref.modularity);
        out.rows.push_back(std::move(row));
    }
    return out;
}

BenchResult bench_walshaw(const std::filesystem::path& dir, const std::vector<std::string>& names,
                          const SolverConfig& solver) {
    std::vector<const WalshawReference*> refs;
    std::vector<std::string> missing;
    for (const auto& name : names) {
        const auto it = std::find_if(kWalshaw.begin(), kWalshaw.end(), [&](const auto& r) { return name == r.name; });
        if (it == kWalshaw.end()) throw std::invalid_argument("no reference data for graph '" + name + "'");
        refs.push_back(&*it);
        if (!std::filesystem::exists(dir / (name + ".graph"))) missing.push_back((dir / (name + ".graph")).string());
    }
    if (!missing.empty()) {
        std::string msg = "missing fixture files:";
        for (const auto& m : missing) msg += "\n  " + m;
        msg += std::string("\ndownload them from ") + kWalshawArchiveUrl + " and point " + kWalshawDirEnv +
               " (or --dir) at the directory";
        throw MissingFixture(msg);
    }

    BenchResult out{"walshaw", {}};
    for (const auto* ref : refs) {
        const auto path = dir / (std::string(ref->name) + ".graph");
        const Graph g = load_graph(path, GraphFormat::kMetis);
        const auto r = solve(build_bipartition_qubo(g, default_penalties(g)), solver);
        const auto dec = decode_bipartition(r.best_assignment);
        BenchRow row;
        row.name = ref->name;
        row.report = make_report(g, dec.assignment, "bisect");
        row.report.input = {{"file", path.filename().string()}};
        row.report.solver = solver_config_json(solver);
        row.report.energy = r.best_energy;
        row.report.seed = solver.seed;
        row.report.wall_time = r.wall_time;
        const double limit = 1.2 * ref->best_known;
        row.pass = dec.imbalance <= static_cast<int>(g.num_nodes() % 2) && row.report.cut_edges <= limit;
        row.detail = "cut " + fmt(row.report.cut_edges) + " (best known " + std::to_string(ref->best_known) +
                     ", METIS " + std::to_string(ref->metis) + ", KaHIP " + std::to_string(ref->kahip) +
                     ") imbalance " + std::to_string(dec.imbalance);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace qcut
