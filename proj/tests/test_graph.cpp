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

#include "oracles.hpp"
#include "qcut/fixtures.hpp"
#include "qcut/graph.hpp"

using namespace qcut;

namespace {

Graph graph(std::size_t n, std::vector<std::pair<int, int>> pairs) {
    std::vector<Edge> e;
    for (auto [u, v] : pairs) e.push_back({u, v, 1.0});
    return Graph::from_edges(n, e);
}

// C C^T by explicit triple loop.
DenseSymMatrix gram(const DenseMatrix& c) {
    DenseSymMatrix out(c.rows);
    for (std::size_t i = 0; i < c.rows; ++i) {
        for (std::size_t j = i; j < c.rows; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < c.cols; ++l) s += c(i, l) * c(j, l);
            out.set(i, j, s);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("graph invariants: symmetry, degrees, 2m") {
    const Graph g = Graph::from_edges(4, {{2, 0, 1.5}, {1, 2, 2.0}, {3, 2, 0.5}});
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_edges() == 3);
    for (const auto& e : g.edges()) {
        CHECK(e.u < e.v);
        CHECK(g.weight(e.u, e.v) == e.weight);
        CHECK(g.weight(e.v, e.u) == e.weight);
    }
    CHECK(g.weight(1, 1) == 0.0);
    CHECK(g.degree(2) == 4.0);
    CHECK(g.degree(0) == 1.5);
    CHECK(g.total_weight_2m() == 8.0);
    CHECK(g.max_degree() == 3);
    CHECK(g.max_weighted_degree() == 4.0);
    CHECK_FALSE(g.is_unweighted());
    const auto nb = g.neighbors(2);
    REQUIRE(nb.size() == 3);
    CHECK(nb[0].node == 0);
    CHECK(nb[1].node == 1);
    CHECK(nb[2].node == 3);
}

TEST_CASE("from_edges rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0, 1.0}}), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2, 1.0}}), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{-1, 1, 1.0}}), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, 0.0}}), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, -2.0}}), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, std::numeric_limits<double>::infinity()}}), GraphError);
    // The same undirected edge in both orientations is a duplicate.
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, 1.0}, {1, 0, 1.0}}), GraphError);
}

TEST_CASE("empty and edgeless graphs") {
    const Graph g0 = Graph::from_edges(0, {});
    CHECK(g0.num_nodes() == 0);
    const Graph g = Graph::from_edges(3, {});
    CHECK(g.num_edges() == 0);
    CHECK(g.total_weight_2m() == 0.0);
    CHECK(g.max_degree() == 0);
    CHECK(g.is_unweighted());
}

TEST_CASE("laplacian examples") {
    const auto l2 = laplacian(path_graph(2));
    CHECK(l2(0, 0) == 1.0);
    CHECK(l2(0, 1) == -1.0);
    CHECK(l2(1, 0) == -1.0);
    CHECK(l2(1, 1) == 1.0);
    const auto l3 = laplacian(complete_graph(3));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(l3(i, j) == (i == j ? 2.0 : -1.0));
    }
}

TEST_CASE("incidence examples") {
    const auto c2 = incidence(path_graph(2));
    REQUIRE(c2.rows == 2);
    REQUIRE(c2.cols == 1);
    CHECK(c2(0, 0) == 1.0);
    CHECK(c2(1, 0) == -1.0);
    const auto c3 = incidence(path_graph(3));
    REQUIRE(c3.rows == 3);
    REQUIRE(c3.cols == 2);
    const auto p = gram(c3);
    const double expect[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(p(i, j) == expect[i][j]);
    }
}

TEST_CASE("L = C C^T on random graphs, weighted too") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 2 + seed % 7;
        const Graph g = erdos_renyi(n, seed % 2 ? 0.5 : 0.4, seed);
        CHECK(gram(incidence(g)) == laplacian(g));
    }
    // Squares of weights are exact in binary, so this holds to the bit.
    const Graph w = Graph::from_edges(3, {{0, 1, 4.0}, {1, 2, 0.25}});
    const auto cc = gram(incidence(w));
    const auto l = laplacian(w);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(cc(i, j) == doctest::Approx(l(i, j)).epsilon(1e-15));
    }
}

TEST_CASE("laplacian rows sum to zero and the form is PSD") {
    SplitMix64 rng(11);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = erdos_renyi(9, 0.5, seed);
        const auto l = laplacian(g);
        for (std::size_t i = 0; i < l.size(); ++i) {
            double s = 0.0;
            for (double v : l.row(i)) s += v;
            CHECK(s == 0.0);
        }
        for (int t = 0; t < 10; ++t) {
            std::vector<double> x(9);
            for (auto& v : x) v = rng.uniform() * 2.0 - 1.0;
            CHECK(l.quadratic_form<double>(x) >= -1e-12);
        }
    }
}

TEST_CASE("s^T L s equals the edge sum of (s_i - s_j)^2 for every s") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 5 + seed;
        const Graph g = erdos_renyi(n, 0.5, 100 + seed);
        const auto l = laplacian(g);
        oracle::for_each_assignment(n, -1, 1, [&](const std::vector<int>& s) {
            double direct = 0.0;
            for (const auto& e : g.edges()) direct += e.weight * (s[e.u] - s[e.v]) * (s[e.u] - s[e.v]);
            CHECK(l.quadratic_form<int>(s) == direct);
        });
    }
}

TEST_CASE("complement examples") {
    const Graph k4c = complement(complete_graph(4));
    CHECK(k4c.num_nodes() == 4);
    CHECK(k4c.num_edges() == 0);
    CHECK(complement(Graph::from_edges(3, {})) == complete_graph(3));
    CHECK(complement(path_graph(4)) == graph(4, {{0, 2}, {0, 3}, {1, 3}}));
}

TEST_CASE("complement is an involution on unweighted graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = erdos_renyi(1 + seed % 9, 0.45, seed);
        const Graph c = complement(g);
        CHECK(c.is_unweighted());
        CHECK(c.num_edges() + g.num_edges() == g.num_nodes() * (g.num_nodes() - 1) / 2);
        CHECK(complement(c) == g);
    }
}

TEST_CASE("complement ignores weights") {
    const Graph g = Graph::from_edges(3, {{0, 1, 5.0}});
    const Graph c = complement(g);
    CHECK(c == graph(3, {{0, 2}, {1, 2}}));
}

TEST_CASE("induced subgraph renumbers nodes in the given order") {
    const Graph g = Graph::from_edges(5, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}, {3, 4, 4.0}, {0, 4, 5.0}});
    const std::vector<NodeId> keep{4, 2, 3};
    const Graph s = g.induced_subgraph(keep);
    CHECK(s.num_nodes() == 3);
    CHECK(s.num_edges() == 2);
    CHECK(s.weight(1, 2) == 3.0);  // 2-3
    CHECK(s.weight(0, 2) == 4.0);  // 4-3
    CHECK(s.weight(0, 1) == 0.0);
}

TEST_CASE("DenseSymMatrix keeps symmetry") {
    DenseSymMatrix m(3);
    m.set(0, 2, 1.5);
    m.add(1, 0, 2.0);
    m.add(1, 1, 3.0);
    CHECK(m(2, 0) == 1.5);
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 1) == 3.0);
    const std::vector<int> v{1, 1, 1};
    CHECK(m.quadratic_form<int>(v) == doctest::Approx(2 * 1.5 + 2 * 2.0 + 3.0));
}
