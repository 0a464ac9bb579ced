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

#include "qcut/assignment.hpp"
#include "qcut/graph.hpp"
#include "qcut/model.hpp"

namespace qcut {

/// beta weighs the cut, alpha[j] the size of part j, gamma[i] the one-hot
/// constraint of node i.
struct KWayPenalties {
    double beta = 1.0;
    std::vector<double> alpha;
    std::vector<double> gamma;
};

/// Part-major layout: bit (i, j) "node i is in part j" is variable j n + i.
struct KWayLayout {
    std::size_t n = 0;
    std::size_t k = 0;

    std::size_t num_variables() const { return n * k; }
    VarId var(std::size_t node, std::size_t part) const { return static_cast<VarId>(part * n + node); }
};

struct KWayModel {
    QuboModel model;
    KWayLayout layout;
};

/// Energy, for every bit vector X:
///   beta sum_j x_j^T L x_j + sum_j alpha_j (sum_i x_ij - n/k)^2
///     + sum_i gamma_i (sum_j x_ij - 1)^2
/// Throws std::invalid_argument unless 2 <= k <= n and the penalties are
/// positive, finite and sized k (alpha) and n (gamma).
KWayModel build_kway_qubo(const Graph& g, int k, const KWayPenalties& p);

/// beta = 1, alpha_j = min(D, ceil(n/k)) + 1 with D the largest weighted
/// degree, gamma_i = g_i + 1 + alpha.
KWayPenalties default_kway_penalties(const Graph& g, int k);

struct OneHotDecode {
    Assignment assignment;
    /// Nodes whose row did not have exactly one bit set.
    std::size_t repairs = 0;
};

/// Reads node i's part from its one set bit. Rows that are not one-hot are
/// repaired after all valid rows are placed, in node order: an empty row
/// goes to the currently smallest part, a row with several bits to the set
/// part with the least cut weight to already placed neighbors. Ties go to
/// the lower part index.
OneHotDecode decode_onehot(const Graph& g, std::span<const Value> bits, const KWayLayout& layout);

/// (1/2) sum_j x_j^T L x_j over the part indicator vectors, i.e. the
/// weight of edges between different parts.
double kway_cut(const Graph& g, const Assignment& a);

}  // namespace qcut
