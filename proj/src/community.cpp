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

#include "qcut/community.hpp"

#include <cmath>
#include <stdexcept>

#include "qcut/rng.hpp"

namespace qcut {

ModularityMatrix modularity_matrix(const Graph& g) {
    const double two_m = g.total_weight_2m();
    if (two_m <= 0.0) throw GraphError("modularity is undefined for a graph without edges");
    const std::size_t n = g.num_nodes();
    ModularityMatrix out{DenseSymMatrix(n), two_m};
    const auto deg = g.degrees();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) out.B.set(i, j, -deg[i] * deg[j] / two_m);
    }
    for (const auto& e : g.edges()) out.B.add(e.u, e.v, e.weight);
    return out;
}

ModularityMatrix community_matrix(const ModularityMatrix& full, std::span<const NodeId> nodes) {
    const std::size_t k = nodes.size();
    ModularityMatrix out{DenseSymMatrix(k), full.source_2m};
    for (std::size_t a = 0; a < k; ++a) {
        double row_sum = 0.0;
        for (std::size_t b = 0; b < k; ++b) {
            const double v = full.B(nodes[a], nodes[b]);
            row_sum += v;
            if (b >= a) out.B.set(a, b, v);
        }
        out.B.add(a, a, -row_sum);
    }
    return out;
}

ThresholdResult threshold_couplers(const ModularityMatrix& m, double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("threshold must be a finite non-negative number");
    ThresholdResult out{m, 0};
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(m.B(i, j)) < tau) out.matrix.B.set(i, j, 0.0);
            if (j > i && out.matrix.B(i, j) != 0.0) ++out.coupler_count;
        }
    }
    return out;
}

IsingModel build_cd_ising(const ModularityMatrix& m) {
    const std::size_t n = m.size();
    IsingModel model(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.add_offset(-m.B(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m.B(i, j) != 0.0) model.add_quadratic(static_cast<VarId>(i), static_cast<VarId>(j), -2.0 * m.B(i, j));
        }
    }
    return model;
}

QuboModel build_cd_qubo(const ModularityMatrix& m) {
    const std::size_t n = m.size();
    QuboModel model(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (m.B(i, i) != 0.0) model.add_linear(static_cast<VarId>(i), -m.B(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m.B(i, j) != 0.0) model.add_quadratic(static_cast<VarId>(i), static_cast<VarId>(j), -2.0 * m.B(i, j));
        }
    }
    return model;
}

double modularity_score(const Graph& g, const Assignment& a) {
    a.validate(g.num_nodes());
    const double two_m = g.total_weight_2m();
    if (two_m <= 0.0) throw GraphError("modularity is undefined for a graph without edges");
    std::vector<double> inside(static_cast<std::size_t>(a.k), 0.0);
    std::vector<double> degree_sum(static_cast<std::size_t>(a.k), 0.0);
    for (const auto& e : g.edges()) {
        if (a.labels[e.u] == a.labels[e.v]) inside[a.labels[e.u]] += e.weight;
    }
    for (std::size_t i = 0; i < g.num_nodes(); ++i) degree_sum[a.labels[i]] += g.degree(static_cast<NodeId>(i));
    double q = 0.0;
    for (int c = 0; c < a.k; ++c) {
        const double frac = degree_sum[c] / two_m;
        q += 2.0 * inside[c] / two_m - frac * frac;
    }
    return q;
}

nlohmann::json ClusterTree::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : nodes) {
        nlohmann::json j{{"nodes", c.nodes},
                         {"depth", c.depth},
                         {"parent", c.parent},
                         {"attempted", c.attempted},
                         {"couplers", c.couplers},
                         {"gain", c.gain},
                         {"split_order", c.split_order}};
        if (!c.is_leaf()) j["children"] = {c.children[0], c.children[1]};
        list.push_back(std::move(j));
    }
    return {{"tau", tau}, {"max_depth", max_depth}, {"leaves", leaves}, {"clusters", list}};
}

namespace {

struct SplitOutcome {
    std::vector<bool> side;
    std::size_t couplers = 0;
};

SplitOutcome solve_split(const ModularityMatrix& sub, double tau, const SolverConfig& solver, std::uint64_t seed,
                         CdEncoding encoding) {
    const auto thr = threshold_couplers(sub, tau);
    SplitOutcome out;
    out.couplers = thr.coupler_count;
    out.side.resize(sub.size());
    if (encoding == CdEncoding::kBinary) {
        const auto r = solve(build_cd_qubo(thr.matrix), solver, seed);
        for (std::size_t i = 0; i < sub.size(); ++i) out.side[i] = r.best_assignment[i] == 1;
    } else {
        const auto r = solve(build_cd_ising(thr.matrix), solver, seed);
        for (std::size_t i = 0; i < sub.size(); ++i) out.side[i] = r.best_assignment[i] == 1;
    }
    return out;
}

}  // namespace

CommunityResult detect_communities(const Graph& g, int depth, const SolverConfig& solver, double tau,
                                   CdEncoding encoding) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    const auto full = modularity_matrix(g);
    const std::size_t n = g.num_nodes();

    ClusterTree tree;
    tree.tau = tau;
    ClusterNode root;
    root.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) root.nodes[i] = static_cast<NodeId>(i);
    tree.nodes.push_back(std::move(root));
    // Each community's solver seed hangs off its parent's, so results do
    // not depend on the order communities are visited in.
    std::vector<std::uint64_t> seeds{solver.seed};

    int splits = 0;
    std::vector<int> frontier{0};
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int idx : frontier) {
            if (tree.nodes[idx].nodes.size() < 2) continue;
            const auto members = tree.nodes[idx].nodes;
            const auto sub = community_matrix(full, members);
            const auto split = solve_split(sub, tau, solver, seeds[idx], encoding);

            std::vector<Value> s(members.size());
            std::vector<NodeId> parts[2];
            for (std::size_t a = 0; a < members.size(); ++a) {
                s[a] = split.side[a] ? 1 : -1;
                parts[split.side[a] ? 1 : 0].push_back(members[a]);
            }
            const double gain = sub.B.quadratic_form(std::span<const Value>(s)) / (2.0 * full.source_2m);
            auto& node = tree.nodes[idx];
            node.attempted = true;
            node.couplers = split.couplers;
            node.gain = gain;
            if (parts[0].empty() || parts[1].empty() || !(gain > 1e-12)) continue;

            node.split_order = splits++;
            // Child holding the community's first node comes first.
            if (parts[0].front() > parts[1].front()) std::swap(parts[0], parts[1]);
            for (int c = 0; c < 2; ++c) {
                ClusterNode child;
                child.nodes = std::move(parts[c]);
                child.depth = level + 1;
                child.parent = idx;
                tree.nodes[idx].children[c] = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(std::move(child));
                seeds.push_back(derive_seed(seeds[idx], static_cast<std::uint64_t>(c) + 1));
                next.push_back(tree.nodes[idx].children[c]);
            }
            tree.max_depth = std::max(tree.max_depth, level + 1);
        }
        frontier = std::move(next);
    }

    std::vector<int> leaf_of(n, -1);
    for (std::size_t idx = 0; idx < tree.nodes.size(); ++idx) {
        if (!tree.nodes[idx].is_leaf()) continue;
        for (NodeId v : tree.nodes[idx].nodes) leaf_of[v] = static_cast<int>(idx);
    }
    CommunityResult out;
    std::vector<int> label_of_leaf(tree.nodes.size(), -1);
    out.assignment.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int& label = label_of_leaf[leaf_of[i]];
        if (label < 0) {
            label = static_cast<int>(tree.leaves.size());
            tree.leaves.push_back(leaf_of[i]);
        }
        out.assignment.labels[i] = label;
    }
    out.assignment.k = static_cast<int>(tree.leaves.size());
    out.tree = std::move(tree);
    return out;
}

}  // namespace qcut
