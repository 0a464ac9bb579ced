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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcut/assignment.hpp"
#include "qcut/graph.hpp"
#include "qcut/model.hpp"
#include "qcut/solvers.hpp"

namespace qcut {

/// B = A - g g^T / 2m, dense.
struct ModularityMatrix {
    DenseSymMatrix B;
    double source_2m = 0.0;

    std::size_t size() const { return B.size(); }
};

/// Throws GraphError for a graph without edges.
ModularityMatrix modularity_matrix(const Graph& g);

/// Matrix for splitting the community `nodes` further:
/// B'_ab = B_ab - [a == b] * sum_{c in nodes} B_ac. Its quadratic form
/// s^T B' s / (4m) is the modularity change of the split given by s.
ModularityMatrix community_matrix(const ModularityMatrix& full, std::span<const NodeId> nodes);

struct ThresholdResult {
    ModularityMatrix matrix;
    /// Unordered pairs i != j with a nonzero entry after thresholding.
    std::size_t coupler_count = 0;
};

/// Zeroes every entry (diagonal included) with |B_ij| < tau. tau must be
/// non-negative.
ThresholdResult threshold_couplers(const ModularityMatrix& m, double tau);

/// Spins, E(s) = -s^T B s: h = 0, J_ij = -2 B_ij, offset -trace(B).
IsingModel build_cd_ising(const ModularityMatrix& m);

/// Bits, E(x) = -x^T B x: Q_ii = -B_ii, Q_ij = -2 B_ij. x = 1 marks one
/// side of the split. Same argmin as the spin model while rows of B sum
/// to zero.
QuboModel build_cd_qubo(const ModularityMatrix& m);

/// Newman modularity Q = (1/2m) sum_{i,j same part} B_ij. Throws for an
/// edgeless graph or an invalid assignment.
double modularity_score(const Graph& g, const Assignment& a);

enum class CdEncoding { kBinary, kSpin };

/// One community in the subdivision hierarchy.
struct ClusterNode {
    std::vector<NodeId> nodes;  // sorted
    int depth = 0;
    int parent = -1;
    int children[2] = {-1, -1};
    /// Position in the sequence of kept splits; -1 for leaves.
    int split_order = -1;
    /// Modularity change of the split that was attempted (kept or not).
    double gain = 0.0;
    /// Couplers in the thresholded model solved for this community.
    std::size_t couplers = 0;
    bool attempted = false;

    bool is_leaf() const { return children[0] < 0; }
};

struct ClusterTree {
    std::vector<ClusterNode> nodes;  // nodes[0] is the whole graph
    double tau = 0.0;
    int max_depth = 0;

    /// Leaf indices in label order.
    std::vector<int> leaves;

    nlohmann::json to_json() const;
};

struct CommunityResult {
    Assignment assignment;
    ClusterTree tree;
};

/// Recursive 2-way modularity splits, at most `depth` levels. Each
/// community's matrix is thresholded at `tau` and solved with `solver`; a
/// split is kept only if both sides are non-empty and its modularity
/// change (on the unthresholded matrix) exceeds 1e-12. Labels are numbered
/// by first appearance, so node 0 is always in part 0.
CommunityResult detect_communities(const Graph& g, int depth, const SolverConfig& solver, double tau,
                                   CdEncoding encoding = CdEncoding::kBinary);

}  // namespace qcut
