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

#include <optional>
#include <span>

#include "qcut/assignment.hpp"
#include "qcut/graph.hpp"
#include "qcut/model.hpp"
#include "qcut/solvers.hpp"

namespace qcut {

/// Balance weight alpha, cut weight beta. Both positive and finite.
struct PenaltyConfig {
    double alpha = 1.0;
    double beta = 1.0;

    void validate() const;
};

/// Total weight of edges whose endpoints carry different labels.
double count_cut_edges(const Graph& g, const Assignment& a);

/// Objective s^T (alpha 1 - beta A) s over spins; h = 0,
/// J_ij = 2(alpha - beta A_ij), offset n alpha.
IsingModel build_bipartition_ising(const Graph& g, const PenaltyConfig& p);

/// The same objective over bits x = (s + 1) / 2, so both models give equal
/// energies on corresponding assignments. Pairs carry 8(alpha - beta A_ij),
/// bits carry 4(beta g_i - alpha(n - 1)). The all-pairs alpha term is kept
/// as one uniform block.
QuboModel build_bipartition_qubo(const Graph& g, const PenaltyConfig& p);

/// Symmetric coefficient matrix M with x^T M x the bit objective up to
/// scale and constant: alpha - beta A_ij off the diagonal, beta g_i -
/// alpha(n - 1) on it. At alpha == beta its off-diagonal support is the
/// complement graph.
DenseSymMatrix bipartition_coefficients(const Graph& g, const PenaltyConfig& p);

/// beta = 1, alpha = min(2 D, n w_max) / 2 + 1, D the largest weighted
/// degree and w_max the largest edge weight.
PenaltyConfig default_penalties(const Graph& g);

struct BisectionDecode {
    Assignment assignment;
    /// ceil(|sum x - n/2|): 0 for an even split, 1 for the best odd split.
    int imbalance = 0;
};

BisectionDecode decode_bipartition(std::span<const Value> bits);

struct RecursiveBisection {
    Assignment assignment;  // k = 2^levels; parts may be empty for tiny graphs
    /// Sum of the best energies of all solved sub-problems.
    double energy = 0.0;
    std::size_t subproblems = 0;
};

/// 2^levels parts by bisecting every part `levels` times. Without explicit
/// penalties each induced subgraph gets its own default_penalties. The
/// bisection at label path p uses seed derive_seed(solver.seed, p).
RecursiveBisection recursive_bisect(const Graph& g, int levels, const std::optional<PenaltyConfig>& p,
                                    const SolverConfig& solver);

}  // namespace qcut
