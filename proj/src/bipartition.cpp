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

#include "qcut/bipartition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcut/rng.hpp"

namespace qcut {

void PenaltyConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive and finite");
}

double count_cut_edges(const Graph& g, const Assignment& a) {
    a.validate(g.num_nodes());
    double cut = 0.0;
    for (const auto& e : g.edges()) {
        if (a.labels[e.u] != a.labels[e.v]) cut += e.weight;
    }
    return cut;
}

namespace {

std::vector<VarId> all_vars(std::size_t n) {
    std::vector<VarId> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

IsingModel build_bipartition_ising(const Graph& g, const PenaltyConfig& p) {
    p.validate();
    const std::size_t n = g.num_nodes();
    IsingModel m(n);
    if (n >= 2) m.add_block(all_vars(n), 2.0 * p.alpha);
    for (const auto& e : g.edges()) m.add_quadratic(e.u, e.v, -2.0 * p.beta * e.weight);
    m.add_offset(static_cast<double>(n) * p.alpha);
    return m;
}

QuboModel build_bipartition_qubo(const Graph& g, const PenaltyConfig& p) {
    p.validate();
    const std::size_t n = g.num_nodes();
    const double nd = static_cast<double>(n);
    QuboModel m(n);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = 4.0 * (p.beta * g.degree(static_cast<NodeId>(i)) - p.alpha * (nd - 1.0));
        if (q != 0.0) m.add_linear(static_cast<VarId>(i), q);
    }
    if (n >= 2) m.add_block(all_vars(n), 8.0 * p.alpha);
    for (const auto& e : g.edges()) {
        m.add_quadratic(e.u, e.v, -8.0 * p.beta * e.weight);
        total_weight += e.weight;
    }
    m.add_offset(p.alpha * nd * nd - 2.0 * p.beta * total_weight);
    return m;
}

DenseSymMatrix bipartition_coefficients(const Graph& g, const PenaltyConfig& p) {
    p.validate();
    const std::size_t n = g.num_nodes();
    DenseSymMatrix q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.set(i, i, p.beta * g.degree(static_cast<NodeId>(i)) - p.alpha * (static_cast<double>(n) - 1.0));
        for (std::size_t j = i + 1; j < n; ++j) q.set(i, j, p.alpha);
    }
    for (const auto& e : g.edges()) q.add(e.u, e.v, -p.beta * e.weight);
    return q;
}

PenaltyConfig default_penalties(const Graph& g) {
    double w_max = 0.0;
    for (const auto& e : g.edges()) w_max = std::max(w_max, e.weight);
    const double bound = std::min(2.0 * g.max_weighted_degree(), static_cast<double>(g.num_nodes()) * w_max);
    return {bound / 2.0 + 1.0, 1.0};
}

BisectionDecode decode_bipartition(std::span<const Value> bits) {
    BisectionDecode out;
    out.assignment.k = 2;
    out.assignment.labels.resize(bits.size());
    long long ones = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("bit vector holds a value other than 0 or 1");
        out.assignment.labels[i] = bits[i];
        ones += bits[i];
    }
    const long long twice_gap = std::llabs(2 * ones - static_cast<long long>(bits.size()));
    out.imbalance = static_cast<int>((twice_gap + 1) / 2);
    return out;
}

RecursiveBisection recursive_bisect(const Graph& g, int levels, const std::optional<PenaltyConfig>& p,
                                    const SolverConfig& solver) {
    if (levels < 1) throw std::invalid_argument("levels must be at least 1");
    if (levels > 30) throw std::invalid_argument("levels must be at most 30");
    if (p) p->validate();
    const std::size_t n = g.num_nodes();

    RecursiveBisection out;
    std::vector<int> label(n, 0);
    for (int level = 0; level < levels; ++level) {
        const int parts = 1 << level;
        std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(parts));
        for (std::size_t i = 0; i < n; ++i) members[label[i]].push_back(static_cast<NodeId>(i));
        for (int part = 0; part < parts; ++part) {
            const auto& nodes = members[part];
            for (NodeId v : nodes) label[v] = 2 * part;
            if (nodes.size() < 2) continue;
            const Graph sub = g.induced_subgraph(nodes);
            const PenaltyConfig pen = p ? *p : default_penalties(sub);
            const std::uint64_t path = (std::uint64_t{1} << level) | static_cast<std::uint64_t>(part);
            const auto r = solve(build_bipartition_qubo(sub, pen), solver, derive_seed(solver.seed, path));
            out.energy += r.best_energy;
            ++out.subproblems;
            for (std::size_t a = 0; a < nodes.size(); ++a) label[nodes[a]] = 2 * part + r.best_assignment[a];
        }
    }
    out.assignment.labels = std::move(label);
    out.assignment.k = 1 << levels;
    return out;
}

}  // namespace qcut
