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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "oracles.hpp"
#include "qcut/bipartition.hpp"
#include "qcut/fixtures.hpp"
#include "qcut/rng.hpp"

using namespace qcut;

namespace {

// alpha (sum s)^2 - beta s^T A s, written out edge by edge.
double direct_objective(const Graph& g, const PenaltyConfig& p, const std::vector<int>& s) {
    const int sum = std::accumulate(s.begin(), s.end(), 0);
    double sas = 0.0;
    for (const auto& e : g.edges()) sas += 2.0 * e.weight * s[e.u] * s[e.v];
    return p.alpha * sum * sum - p.beta * sas;
}

std::vector<int> bits_of(const std::vector<int>& s) {
    std::vector<int> x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = (s[i] + 1) / 2;
    return x;
}

SolverConfig exact_solver() {
    SolverConfig cfg;
    cfg.kind = SolverKind::kExact;
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("cut counting examples") {
    CHECK(count_cut_edges(path_graph(4), Assignment{{0, 0, 1, 1}, 2}) == 1.0);
    CHECK(count_cut_edges(path_graph(4), Assignment{{0, 1, 0, 1}, 2}) == 3.0);
    CHECK(count_cut_edges(complete_graph(4), Assignment{{0, 0, 1, 1}, 2}) == 4.0);
    CHECK(count_cut_edges(Graph::from_edges(3, {{0, 2, 2.5}}), Assignment{{0, 0, 1}, 2}) == 2.5);
    CHECK(count_cut_edges(path_graph(3), Assignment{{0, 0, 0}, 1}) == 0.0);
    CHECK_THROWS_AS(count_cut_edges(path_graph(3), Assignment{{0, 2, 0}, 2}), std::invalid_argument);
}

TEST_CASE("Laplacian and adjacency identities for every spin vector") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = erdos_renyi(4 + seed % 7, 0.5, seed);
        const auto l = laplacian(g);
        double m = 0.0;
        for (const auto& e : g.edges()) m += e.weight;
        oracle::for_each_assignment(g.num_nodes(), -1, 1, [&](const std::vector<int>& s) {
            const double cut = oracle::cut_weight(g, bits_of(s));
            CHECK(l.quadratic_form<int>(s) / 4.0 == cut);
            double sas = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                for (std::size_t j = 0; j < s.size(); ++j) {
                    sas += oracle::edge_weight(g, static_cast<int>(i), static_cast<int>(j)) * s[i] * s[j];
                }
            }
            CHECK(sas == 2.0 * (m - 2.0 * cut));
        });
    }
}

TEST_CASE("bit and spin models equal the objective on every assignment") {
    const PenaltyConfig p{1.5, 1.0};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = erdos_renyi(10, 0.3, seed);
        const auto qubo = build_bipartition_qubo(g, p);
        const auto ising = build_bipartition_ising(g, p);
        const auto coef = bipartition_coefficients(g, p);
        const double offset = qubo.offset();
        double worst = 0.0;
        oracle::for_each_assignment(10, -1, 1, [&](const std::vector<int>& s) {
            const double want = direct_objective(g, p, s);
            const auto x = bits_of(s);
            worst = std::max(worst, std::abs(qubo.energy(oracle::to_state(x)) - want));
            worst = std::max(worst, std::abs(ising.energy(oracle::to_state(s)) - want));
            worst = std::max(worst, std::abs(4.0 * coef.quadratic_form<int>(x) + offset - want));
        });
        CHECK(worst <= 1e-9);
    }
    // Weighted graph, other penalties.
    const Graph w = Graph::from_edges(5, {{0, 1, 2.0}, {1, 2, 0.5}, {2, 4, 3.0}, {0, 3, 1.0}});
    const PenaltyConfig q{0.75, 2.0};
    const auto model = build_bipartition_qubo(w, q);
    oracle::for_each_assignment(5, -1, 1, [&](const std::vector<int>& s) {
        CHECK(model.energy(oracle::to_state(bits_of(s))) == doctest::Approx(direct_objective(w, q, s)));
    });
}

TEST_CASE("balanced energy is 4 beta cut - 2 beta m") {
    const Graph g = complete_graph(4);
    const auto m = build_bipartition_qubo(g, PenaltyConfig{3.0, 1.0});
    CHECK(m.energy(State{1, 1, 0, 0}) == 4.0);
    const Graph p4 = path_graph(4);
    const auto mp = build_bipartition_qubo(p4, PenaltyConfig{2.0, 0.5});
    CHECK(mp.energy(State{0, 0, 1, 1}) == 4 * 0.5 * 1 - 2 * 0.5 * 3);
    CHECK(mp.energy(State{0, 1, 0, 1}) == 4 * 0.5 * 3 - 2 * 0.5 * 3);
}

TEST_CASE("coefficient matrix examples") {
    const auto k3 = bipartition_coefficients(complete_graph(3), PenaltyConfig{2.0, 1.0});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(k3(i, j) == (i == j ? -2.0 : 1.0));
    }
    // P2 at alpha == beta: no coupling, every assignment costs the same.
    const PenaltyConfig eq{1.0, 1.0};
    const auto p2 = bipartition_coefficients(path_graph(2), eq);
    CHECK(p2(0, 1) == 0.0);
    const auto p2m = build_bipartition_qubo(path_graph(2), eq);
    CHECK(p2m.quadratic(0, 1) == 0.0);
    oracle::for_each_assignment(2, 0, 1, [&](const std::vector<int>& x) {
        CHECK(p2m.energy(oracle::to_state(x)) == 2.0);
    });
}

TEST_CASE("spin model example and conversion") {
    const PenaltyConfig p{1.0, 2.0};
    const auto ising = build_bipartition_ising(complete_graph(3), p);
    for (VarId i = 0; i < 3; ++i) {
        CHECK(ising.linear(i) == 0.0);
        for (VarId j = i + 1; j < 3; ++j) CHECK(ising.quadratic(i, j) == -2.0);
    }
    CHECK(ising.offset() == 3.0);
    const auto converted = ising_to_qubo(ising);
    const auto direct = build_bipartition_qubo(complete_graph(3), p);
    oracle::for_each_assignment(3, 0, 1, [&](const std::vector<int>& x) {
        CHECK(converted.energy(oracle::to_state(x)) == doctest::Approx(direct.energy(oracle::to_state(x))));
    });
}

TEST_CASE("at alpha == beta the couplers form the complement graph") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 3 + seed % 10;
        const Graph g = erdos_renyi(n, 0.2 + 0.06 * static_cast<double>(seed % 10), seed);
        const Graph c = complement(g);
        const double a = 0.5 + static_cast<double>(seed % 4);
        const auto m = build_bipartition_qubo(g, PenaltyConfig{a, a});
        const auto coef = bipartition_coefficients(g, PenaltyConfig{a, a});
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool in_c = c.weight(static_cast<NodeId>(i), static_cast<NodeId>(j)) != 0.0;
                ok &= (m.quadratic(static_cast<VarId>(i), static_cast<VarId>(j)) != 0.0) == in_c;
                ok &= (coef(i, j) != 0.0) == in_c;
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("default penalties") {
    CHECK(default_penalties(complete_graph(4)).alpha == 3.0);
    CHECK(default_penalties(complete_graph(4)).beta == 1.0);
    CHECK(default_penalties(path_graph(4)).alpha == 3.0);
    CHECK(default_penalties(complete_graph(10)).alpha == 6.0);
    CHECK(default_penalties(Graph::from_edges(3, {})).alpha == 1.0);
    // Weighted: min(2 * 5, 3 * 2.5) / 2 + 1.
    CHECK(default_penalties(Graph::from_edges(3, {{0, 1, 2.5}, {1, 2, 2.5}})).alpha == 4.75);
}

TEST_CASE("default penalties make every minimizer a minimum balanced cut") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 4 + seed % 9;
        const Graph g = erdos_renyi(n, 0.25 + 0.05 * static_cast<double>(seed % 8), 1000 + seed);
        const auto m = build_bipartition_qubo(g, default_penalties(g));
        ExactOptions opts;
        opts.max_samples = 1 << 12;
        opts.threads = 1;
        const auto r = solve_exact(m, opts);
        REQUIRE_FALSE(r.co_optima_truncated);
        const double want = oracle::min_balanced_cut(g, 2);
        for (const auto& s : r.samples) {
            if (s.energy != r.best_energy) break;
            const auto d = decode_bipartition(s.state);
            CHECK(d.imbalance == static_cast<int>(n % 2));
            CHECK(count_cut_edges(g, d.assignment) == want);
        }
    }
}

TEST_CASE("scaling both penalties keeps the minimizers") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = erdos_renyi(9, 0.4, seed);
        const auto p = default_penalties(g);
        const auto r1 = solve_exact(build_bipartition_qubo(g, p));
        const auto r2 = solve_exact(build_bipartition_qubo(g, PenaltyConfig{3.5 * p.alpha, 3.5 * p.beta}));
        CHECK(r1.best_assignment == r2.best_assignment);
        CHECK(r2.best_energy == doctest::Approx(3.5 * r1.best_energy));
    }
}

TEST_CASE("decode examples") {
    const auto even = decode_bipartition(State{1, 0, 1, 0});
    CHECK(even.imbalance == 0);
    CHECK(even.assignment.labels == std::vector<int>{1, 0, 1, 0});
    CHECK(even.assignment.k == 2);
    CHECK(decode_bipartition(State{1, 0, 1}).imbalance == 1);
    CHECK(decode_bipartition(State{1, 1, 1}).imbalance == 2);
    CHECK(decode_bipartition(State{0, 0, 0, 0}).imbalance == 2);
    CHECK(decode_bipartition(State{}).imbalance == 0);
    CHECK_THROWS_AS(decode_bipartition(State{1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(decode_bipartition(State{2}), std::invalid_argument);
}

TEST_CASE("recursive bisection") {
    const Graph cliques = disjoint_cliques(4, 3);
    const auto r = recursive_bisect(cliques, 2, std::nullopt, exact_solver());
    CHECK(r.assignment.k == 4);
    CHECK(r.subproblems == 3);
    CHECK(count_cut_edges(cliques, r.assignment) == 0.0);
    CHECK(oracle::same_partition(r.assignment.labels, oracle::components(cliques)));

    const Graph p8 = path_graph(8);
    const auto rp = recursive_bisect(p8, 2, std::nullopt, exact_solver());
    CHECK(count_cut_edges(p8, rp.assignment) == 3.0);
    for (auto s : rp.assignment.part_sizes()) CHECK(s == 2);

    // One level is a single bisection with the level-0 seed.
    SolverConfig sa;
    sa.seed = 21;
    sa.threads = 1;
    const Graph g = erdos_renyi(16, 0.3, 4);
    const auto one = recursive_bisect(g, 1, std::nullopt, sa);
    const auto single = solve(build_bipartition_qubo(g, default_penalties(g)), sa, derive_seed(21, 1));
    CHECK(one.assignment.labels == decode_bipartition(single.best_assignment).assignment.labels);
    CHECK(one.energy == single.best_energy);

    // Tiny parts are left alone.
    const auto tiny = recursive_bisect(path_graph(3), 3, std::nullopt, exact_solver());
    CHECK(tiny.assignment.k == 8);
    CHECK(count_cut_edges(path_graph(3), tiny.assignment) == 2.0);
}

TEST_CASE("penalty and argument errors") {
    const Graph g = path_graph(4);
    for (const PenaltyConfig bad : {PenaltyConfig{0.0, 1.0}, PenaltyConfig{1.0, -1.0},
                                    PenaltyConfig{std::numeric_limits<double>::infinity(), 1.0},
                                    PenaltyConfig{1.0, std::nan("")}}) {
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        CHECK_THROWS_AS(build_bipartition_qubo(g, bad), std::invalid_argument);
        CHECK_THROWS_AS(build_bipartition_ising(g, bad), std::invalid_argument);
        CHECK_THROWS_AS(bipartition_coefficients(g, bad), std::invalid_argument);
        CHECK_THROWS_AS(recursive_bisect(g, 1, bad, exact_solver()), std::invalid_argument);
    }
    CHECK_THROWS_AS(recursive_bisect(g, 0, std::nullopt, exact_solver()), std::invalid_argument);
    CHECK_THROWS_AS(recursive_bisect(g, 31, std::nullopt, exact_solver()), std::invalid_argument);
}
