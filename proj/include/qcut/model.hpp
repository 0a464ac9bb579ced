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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

namespace qcut {

enum class Vartype { kSpin, kBinary };

using VarId = std::int32_t;
/// One variable's value: {-1, +1} for spin models, {0, 1} for binary ones.
using Value = std::int8_t;
using State = std::vector<Value>;

struct Neighbor {
    VarId var;
    double bias;
};

/// A set of variables sharing one pairwise coefficient: contributes
/// coupling * sum_{a<b in vars} v_a v_b. Keeps dense all-pairs terms
/// (balance penalties) at O(|vars|) storage.
struct UniformBlock {
    std::vector<VarId> vars;
    double coupling = 0.0;
};

class ModelError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Quadratic pseudo-boolean objective
///
///     E(v) = offset + sum_i linear_i v_i + sum_{i<j} q_ij v_i v_j
///
/// over spins (IsingModel) or bits (QuboModel). q_ij is the sum of a sparse
/// term and any uniform blocks containing both i and j. Sparse terms are
/// kept as sorted per-variable neighborhoods so solvers can query local
/// fields directly.
template <Vartype V>
class QuadraticModel {
 public:
    static constexpr Vartype vartype = V;
    static constexpr Value kLow = V == Vartype::kSpin ? -1 : 0;
    static constexpr Value kHigh = 1;

    QuadraticModel() = default;
    explicit QuadraticModel(std::size_t n) : linear_(n, 0.0), adj_(n) {}

    std::size_t num_variables() const { return linear_.size(); }

    double linear(VarId i) const { return linear_.at(i); }
    std::span<const double> linear() const { return linear_; }
    void add_linear(VarId i, double bias);

    /// Adds `bias` to the sparse coefficient of v_i v_j (i != j).
    void add_quadratic(VarId i, VarId j, double bias);

    /// Sparse coefficient only; 0 when absent.
    double sparse_quadratic(VarId i, VarId j) const;

    /// Full coefficient of v_i v_j: sparse part plus every block holding both.
    double quadratic(VarId i, VarId j) const;

    std::span<const Neighbor> neighborhood(VarId i) const { return adj_.at(i); }

    /// Number of stored sparse pairs.
    std::size_t num_interactions() const;

    void add_block(std::vector<VarId> vars, double coupling);
    const std::vector<UniformBlock>& blocks() const { return blocks_; }

    double offset() const { return offset_; }
    void add_offset(double c) { offset_ += c; }

    /// Sparse upper-triangular terms (i < j, sorted), excluding blocks.
    std::vector<std::tuple<VarId, VarId, double>> quadratic_terms() const;

    /// Largest |linear| or |full pairwise coefficient|.
    double max_abs_coefficient() const;

    /// Energy of `state`; throws on length mismatch or out-of-domain values.
    double energy(std::span<const Value> state) const;

    /// Same model with every block expanded into sparse pairs.
    QuadraticModel materialized() const;

    /// Number of distinct pairs with a nonzero full coefficient (couplers).
    std::size_t num_couplers() const;

 private:
    void check_index(VarId i) const;

    std::vector<double> linear_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<UniformBlock> blocks_;
    double offset_ = 0.0;
};

using IsingModel = QuadraticModel<Vartype::kSpin>;
using QuboModel = QuadraticModel<Vartype::kBinary>;

extern template class QuadraticModel<Vartype::kSpin>;
extern template class QuadraticModel<Vartype::kBinary>;

double energy_ising(const IsingModel& m, std::span<const Value> spins);
double energy_qubo(const QuboModel& m, std::span<const Value> bits);

/// s = 2x - 1. Energies agree on corresponding assignments.
QuboModel ising_to_qubo(const IsingModel& m);
/// x = (s + 1) / 2.
IsingModel qubo_to_ising(const QuboModel& m);

State spins_to_bits(std::span<const Value> spins);
State bits_to_spins(std::span<const Value> bits);

/// {"vartype", "n", "terms": [[i, j, value], ...] (i == j for linear),
///  "offset", "blocks": [{"vars": [...], "coupling": c}, ...]}
template <Vartype V>
nlohmann::json to_json(const QuadraticModel<V>& m);
IsingModel ising_from_json(const nlohmann::json& j);
QuboModel qubo_from_json(const nlohmann::json& j);

}  // namespace qcut
