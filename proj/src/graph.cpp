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

#include "qcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace qcut {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n ||
            static_cast<std::size_t>(e.v) >= n) {
            throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") references a node outside [0, " + std::to_string(n) + ")");
        }
        if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
        if (!std::isfinite(e.weight) || e.weight <= 0.0) {
            throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") has non-positive or non-finite weight");
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v) {
            throw GraphError("duplicate edge (" + std::to_string(edges[k].u) + ", " +
                             std::to_string(edges[k].v) + ")");
        }
    }

    Graph g;
    g.edges_ = std::move(edges);
    g.degree_.assign(n, 0.0);
    std::vector<std::size_t> count(n, 0);
    for (const auto& e : g.edges_) {
        ++count[e.u];
        ++count[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + count[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
        g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
        g.degree_[e.u] += e.weight;
        g.degree_[e.v] += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1],
                  [](const Adjacent& a, const Adjacent& b) { return a.node < b.node; });
    }
    g.total_2m_ = 0.0;
    for (double d : g.degree_) g.total_2m_ += d;
    return g;
}

double Graph::weight(NodeId i, NodeId j) const {
    auto nbrs = neighbors(i);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j,
                               [](const Adjacent& a, NodeId v) { return a.node < v; });
    return (it != nbrs.end() && it->node == j) ? it->weight : 0.0;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) best = std::max(best, offsets_[i + 1] - offsets_[i]);
    return best;
}

double Graph::max_weighted_degree() const {
    double best = 0.0;
    for (double d : degree_) best = std::max(best, d);
    return best;
}

bool Graph::is_unweighted() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
    std::unordered_map<NodeId, NodeId> local;
    local.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) local.emplace(nodes[k], static_cast<NodeId>(k));
    std::vector<Edge> sub;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (const auto& a : neighbors(nodes[k])) {
            auto it = local.find(a.node);
            if (it != local.end() && static_cast<NodeId>(k) < it->second) {
                sub.push_back({static_cast<NodeId>(k), it->second, a.weight});
            }
        }
    }
    return from_edges(nodes.size(), std::move(sub));
}

DenseSymMatrix laplacian(const Graph& g) {
    DenseSymMatrix lap(g.num_nodes());
    for (std::size_t i = 0; i < g.num_nodes(); ++i) lap.set(i, i, g.degree(static_cast<NodeId>(i)));
    for (const auto& e : g.edges()) lap.set(e.u, e.v, -e.weight);
    return lap;
}

DenseMatrix incidence(const Graph& g) {
    DenseMatrix c(g.num_nodes(), g.num_edges());
    std::size_t l = 0;
    for (const auto& e : g.edges()) {
        const double root = std::sqrt(e.weight);
        c(e.u, l) = root;
        c(e.v, l) = -root;
        ++l;
    }
    return c;
}

Graph complement(const Graph& g) {
    const auto n = static_cast<NodeId>(g.num_nodes());
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        auto nbrs = g.neighbors(i);
        auto it = nbrs.begin();
        for (NodeId j = i + 1; j < n; ++j) {
            while (it != nbrs.end() && it->node < j) ++it;
            if (it != nbrs.end() && it->node == j) continue;
            edges.push_back({i, j, 1.0});
        }
    }
    return Graph::from_edges(g.num_nodes(), std::move(edges));
}

}  // namespace qcut
