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
#include <set>

#include "oracles.hpp"
#include "qcut/model.hpp"

using namespace qcut;

namespace {

// Random model with sparse terms plus a couple of blocks, mirrored into a
// plain coefficient list for the naive evaluator.
template <Vartype V>
std::pair<QuadraticModel<V>, oracle::Coefficients> random_with_blocks(std::size_t n, std::uint64_t seed) {
    auto c = oracle::random_coefficients(n, 0.4, seed);
    auto m = oracle::to_model<V>(c);
    SplitMix64 rng(seed ^ 0xABCDEF);
    for (int b = 0; b < 2; ++b) {
        std::vector<VarId> vars;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.uniform() < 0.5) vars.push_back(static_cast<VarId>(i));
        }
        const double coupling = static_cast<double>(rng.below(7)) - 3.0;
        m.add_block(vars, coupling);
        for (std::size_t a = 0; a < vars.size(); ++a) {
            for (std::size_t d = a + 1; d < vars.size(); ++d) c.J[{vars[a], vars[d]}] += coupling;
        }
    }
    return {m, c};
}

}  // namespace

TEST_CASE("energy_ising examples") {
    IsingModel a(1);
    a.add_linear(0, 1.0);
    CHECK(energy_ising(a, State{-1}) == -1.0);
    IsingModel b(2);
    b.add_quadratic(0, 1, 1.0);
    CHECK(energy_ising(b, State{1, -1}) == -1.0);
}

TEST_CASE("energy_qubo examples") {
    QuboModel a(1);
    a.add_linear(0, -1.0);
    CHECK(energy_qubo(a, State{1}) == -1.0);
    const auto c = oracle::random_coefficients(7, 0.5, 3);
    const auto m = oracle::to_model<Vartype::kBinary>(c);
    CHECK(energy_qubo(m, State(7, 0)) == c.offset);
}

TEST_CASE("energy matches the naive evaluator on random 12-variable models") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto [ising, ci] = random_with_blocks<Vartype::kSpin>(12, seed);
        const auto [qubo, cq] = random_with_blocks<Vartype::kBinary>(12, seed + 1000);
        SplitMix64 rng(seed);
        for (int t = 0; t < 20; ++t) {
            std::vector<int> s(12), x(12);
            for (int i = 0; i < 12; ++i) {
                x[i] = static_cast<int>(rng.below(2));
                s[i] = 2 * x[i] - 1;
            }
            CHECK(energy_ising(ising, oracle::to_state(s)) == oracle::naive_energy(ci, s));
            CHECK(energy_qubo(qubo, oracle::to_state(x)) == oracle::naive_energy(cq, x));
        }
    }
}

TEST_CASE("energy rejects bad states") {
    IsingModel m(2);
    CHECK_THROWS_AS(m.energy(State{1}), ModelError);
    CHECK_THROWS_AS(m.energy(State{1, 0}), ModelError);
    QuboModel q(2);
    CHECK_THROWS_AS(q.energy(State{1, -1}), ModelError);
    CHECK_THROWS_AS(q.energy(State{1, 1, 0}), ModelError);
}

TEST_CASE("construction errors") {
    IsingModel m(3);
    CHECK_THROWS_AS(m.add_linear(3, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_linear(-1, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_linear(0, std::numeric_limits<double>::quiet_NaN()), ModelError);
    CHECK_THROWS_AS(m.add_quadratic(1, 1, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_quadratic(0, 5, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_quadratic(0, 1, std::numeric_limits<double>::infinity()), ModelError);
    CHECK_THROWS_AS(m.add_block({0, 1, 0}, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_block({0, 7}, 1.0), ModelError);
    CHECK_THROWS_AS(m.add_block({0, 1}, std::numeric_limits<double>::quiet_NaN()), ModelError);
}

TEST_CASE("coefficient accessors") {
    QuboModel m(4);
    m.add_quadratic(2, 0, 1.5);
    m.add_quadratic(0, 2, 0.5);
    m.add_block({0, 1, 2}, -4.0);
    CHECK(m.sparse_quadratic(0, 2) == 2.0);
    CHECK(m.sparse_quadratic(2, 0) == 2.0);
    CHECK(m.quadratic(0, 2) == -2.0);
    CHECK(m.quadratic(0, 1) == -4.0);
    CHECK(m.quadratic(0, 3) == 0.0);
    CHECK(m.num_interactions() == 1);
    CHECK(m.max_abs_coefficient() == 4.0);
    CHECK(m.num_couplers() == 3);
    const auto terms = m.quadratic_terms();
    REQUIRE(terms.size() == 1);
    CHECK(std::get<0>(terms[0]) == 0);
    CHECK(std::get<1>(terms[0]) == 2);
    // A block cancelling a sparse term leaves no coupler there.
    QuboModel z(2);
    z.add_quadratic(0, 1, 3.0);
    z.add_block({0, 1}, -3.0);
    CHECK(z.num_couplers() == 0);
}

TEST_CASE("materialized keeps energies") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [m, c] = random_with_blocks<Vartype::kBinary>(8, seed);
        const auto flat = m.materialized();
        CHECK(flat.blocks().empty());
        oracle::for_each_assignment(8, 0, 1, [&](const std::vector<int>& x) {
            CHECK(flat.energy(oracle::to_state(x)) == m.energy(oracle::to_state(x)));
        });
    }
}

TEST_CASE("ising_to_qubo examples") {
    IsingModel a(1);
    a.add_linear(0, 1.0);
    const auto q = ising_to_qubo(a);
    CHECK(q.linear(0) == 2.0);
    CHECK(q.offset() == -1.0);
    CHECK(q.energy(State{1}) == 1.0);
    CHECK(q.energy(State{0}) == -1.0);
    const auto zero = ising_to_qubo(IsingModel(3));
    CHECK(zero.offset() == 0.0);
    CHECK(zero.num_interactions() == 0);
    for (double v : zero.linear()) CHECK(v == 0.0);
}

TEST_CASE("qubo_to_ising examples") {
    QuboModel q(1);
    q.add_linear(0, 2.0);
    q.add_offset(-1.0);
    const auto i = qubo_to_ising(q);
    CHECK(i.linear(0) == 1.0);
    CHECK(i.offset() == 0.0);
    const auto zero = qubo_to_ising(QuboModel(2));
    CHECK(zero.offset() == 0.0);
    CHECK(zero.num_interactions() == 0);
}

TEST_CASE("transforms agree on all assignments") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto [ising, ci] = random_with_blocks<Vartype::kSpin>(10, seed);
        const auto qubo = ising_to_qubo(ising);
        double worst = 0.0;
        oracle::for_each_assignment(10, -1, 1, [&](const std::vector<int>& s) {
            const State spins = oracle::to_state(s);
            worst = std::max(worst, std::abs(qubo.energy(spins_to_bits(spins)) - oracle::naive_energy(ci, s)));
        });
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("round trips preserve energies") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto [qubo, cq] = random_with_blocks<Vartype::kBinary>(8, seed);
        const auto back = ising_to_qubo(qubo_to_ising(qubo));
        const auto [ising, ci] = random_with_blocks<Vartype::kSpin>(8, seed + 50);
        const auto back_i = qubo_to_ising(ising_to_qubo(ising));
        oracle::for_each_assignment(8, 0, 1, [&](const std::vector<int>& x) {
            const State bits = oracle::to_state(x);
            CHECK(std::abs(back.energy(bits) - oracle::naive_energy(cq, x)) <= 1e-9);
            CHECK(std::abs(back_i.energy(bits_to_spins(bits)) - ising.energy(bits_to_spins(bits))) <= 1e-9);
        });
    }
}

TEST_CASE("argmin sets correspond under s = 2x - 1") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto c = oracle::random_coefficients(8, 0.5, seed + 77);
        const auto ising = oracle::to_model<Vartype::kSpin>(c);
        const auto qubo = ising_to_qubo(ising);
        const double best = oracle::brute_min(c, -1, 1);
        std::set<std::vector<int>> from_ising, from_qubo;
        double qbest = std::numeric_limits<double>::infinity();
        oracle::for_each_assignment(8, 0, 1, [&](const std::vector<int>& x) {
            qbest = std::min(qbest, qubo.energy(oracle::to_state(x)));
        });
        oracle::for_each_assignment(8, -1, 1, [&](const std::vector<int>& s) {
            if (oracle::naive_energy(c, s) == best) from_ising.insert(s);
            std::vector<int> x(8);
            for (int i = 0; i < 8; ++i) x[i] = (s[i] + 1) / 2;
            if (qubo.energy(oracle::to_state(x)) == qbest) from_qubo.insert(s);
        });
        CHECK(qbest == best);
        CHECK(from_ising == from_qubo);
    }
}

TEST_CASE("spin/bit conversions") {
    CHECK(spins_to_bits(State{-1, 1, 1}) == State{0, 1, 1});
    CHECK(bits_to_spins(State{0, 1, 0}) == State{-1, 1, -1});
}

TEST_CASE("JSON round trip") {
    const auto [m, c] = random_with_blocks<Vartype::kSpin>(6, 9);
    const auto j = to_json(m);
    CHECK(j.at("vartype") == "SPIN");
    CHECK(j.at("n") == 6);
    const auto back = ising_from_json(nlohmann::json::parse(j.dump()));
    oracle::for_each_assignment(6, -1, 1, [&](const std::vector<int>& s) {
        CHECK(back.energy(oracle::to_state(s)) == m.energy(oracle::to_state(s)));
    });
    CHECK_THROWS_AS(qubo_from_json(j), ModelError);
    const auto q = qubo_from_json(nlohmann::json::parse(R"({"vartype":"BINARY","n":2,"terms":[[0,0,-1],[0,1,2]],"offset":0.5})"));
    CHECK(q.energy(State{1, 1}) == 1.5);
    CHECK(q.energy(State{1, 0}) == -0.5);
}
