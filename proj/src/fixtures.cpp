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

#include "qcut/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "qcut/rng.hpp"

namespace qcut {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw GraphError("probability must lie in [0, 1]");
}

bool connected(const Graph& g) {
    const std::size_t n = g.num_nodes();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (const auto& nb : g.neighbors(v)) {
            if (!seen[nb.node]) {
                seen[nb.node] = true;
                ++reached;
                stack.push_back(nb.node);
            }
        }
    }
    return reached == n;
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    check_probability(p);
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.uniform() < p) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph powerlaw_cluster(std::size_t n, std::size_t m, double p, std::uint64_t seed) {
    if (m < 1 || m >= n) throw GraphError("powerlaw_cluster needs 1 <= m < n");
    check_probability(p);
    SplitMix64 rng(seed);
    std::vector<std::set<NodeId>> adj(n);
    std::vector<NodeId> repeated(m);
    std::iota(repeated.begin(), repeated.end(), 0);

    auto link = [&](NodeId a, NodeId b) {
        adj[a].insert(b);
        adj[b].insert(a);
        repeated.push_back(b);
    };

    for (std::size_t s = m; s < n; ++s) {
        const auto src = static_cast<NodeId>(s);
        std::vector<NodeId> targets;
        while (targets.size() < m) {
            const NodeId t = repeated[rng.below(repeated.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        NodeId target = targets.back();
        targets.pop_back();
        link(src, target);
        for (std::size_t count = 1; count < m;) {
            if (rng.uniform() < p) {
                std::vector<NodeId> candidates;
                for (NodeId nb : adj[target]) {
                    if (nb != src && !adj[src].contains(nb)) candidates.push_back(nb);
                }
                if (!candidates.empty()) {
                    link(src, candidates[rng.below(candidates.size())]);
                    ++count;
                    continue;
                }
            }
            // Remaining targets may already be linked through triads.
            while (!targets.empty() && adj[src].contains(targets.back())) targets.pop_back();
            if (targets.empty()) break;
            target = targets.back();
            targets.pop_back();
            link(src, target);
            ++count;
        }
        for (std::size_t r = 0; r < m; ++r) repeated.push_back(src);
    }

    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (NodeId v : adj[u]) {
            if (static_cast<std::size_t>(v) > u) edges.push_back({static_cast<NodeId>(u), v, 1.0});
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph disjoint_cliques(std::size_t count, std::size_t size) {
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t base = c * size;
        for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = a + 1; b < size; ++b) {
                edges.push_back({static_cast<NodeId>(base + a), static_cast<NodeId>(base + b), 1.0});
            }
        }
    }
    return Graph::from_edges(count * size, std::move(edges));
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1), 1.0});
    return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(std::size_t n) { return disjoint_cliques(1, n); }

Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
        Graph g = erdos_renyi(n, p, derive_seed(seed, attempt));
        if (connected(g)) return g;
    }
    throw GraphError("no connected G(n, p) sample found; p is too small for n");
}

}  // namespace qcut
