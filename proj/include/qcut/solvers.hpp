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
#include <vector>

#include "qcut/model.hpp"

namespace qcut {

enum class SolverKind { kExact, kSimulatedAnnealing, kTabu, kHybrid };

std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(const std::string& name);

class SolverError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration refuses models larger than this.
inline constexpr std::size_t kExactMaxVariables = 30;

/// Geometric single-flip Metropolis schedule. Non-positive temperatures mean
/// "derive from the model": t_initial = max |coefficient|,
/// t_final = 1e-3 * t_initial.
struct SaSchedule {
    double t_initial = 0.0;
    double t_final = 0.0;
    int sweeps = 1000;
    int restarts = 20;
};

struct TabuParams {
    int tenure = 10;
    /// Non-improving iterations before a run stops; 0 means max(1000, 20 n).
    long max_no_improve = 0;
    int restarts = 1;
};

struct HybridParams {
    int sub_size = 40;
    /// Consecutive non-improving rounds before stopping.
    int rounds = 20;
    /// Sub-problem solver. Sub-problems at or under the exact cap use
    /// enumeration when this is kExact; otherwise tabu. A model no larger
    /// than sub_size is handed to this solver whole.
    SolverKind inner = SolverKind::kTabu;
    TabuParams inner_tabu{};
    /// Whole-model tabu pass after the opening anneal and after every
    /// improving round.
    bool full_passes = true;
    /// Sweeps of the opening whole-model anneal, which starts with block
    /// couplings weakened and restores them by the end; 0 skips it.
    int anneal_sweeps = 10000;
};

/// Everything needed to run a solver; passed wherever an algorithm needs
/// "a solver" (community detection, recursive bisection, the CLI).
struct SolverConfig {
    SolverKind kind = SolverKind::kSimulatedAnnealing;
    SaSchedule sa{};
    TabuParams tabu{};
    HybridParams hybrid{};
    std::uint64_t seed = 0;
    /// Worker threads for restarts and exact enumeration; 0 = hardware.
    unsigned threads = 0;
};

struct Sample {
    State state;
    double energy = 0.0;
};

struct SolveResult {
    State best_assignment;
    /// Always a fresh evaluation of best_assignment.
    double best_energy = 0.0;
    std::uint64_t samples_evaluated = 0;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
    std::string solver_name;
    /// Best energy after each restart (SA, tabu) or round (hybrid).
    std::vector<double> history;
    /// Exact: lowest states sorted by (energy, lexicographic), holding every
    /// co-optimum unless `co_optima_truncated`. Heuristics: best state per
    /// restart, sorted.
    std::vector<Sample> samples;
    bool co_optima_truncated = false;
};

struct ExactOptions {
    /// States kept in `samples` (co-optima beyond this are dropped).
    std::size_t max_samples = 4096;
    unsigned threads = 0;
};

template <Vartype V>
SolveResult solve_exact(const QuadraticModel<V>& m, const ExactOptions& opts = {});

template <Vartype V>
SolveResult solve_sa(const QuadraticModel<V>& m, const SaSchedule& sched, std::uint64_t seed, unsigned threads = 0);

template <Vartype V>
SolveResult solve_tabu(const QuadraticModel<V>& m, const TabuParams& params, std::uint64_t seed);

template <Vartype V>
SolveResult solve_hybrid(const QuadraticModel<V>& m, const HybridParams& params, std::uint64_t seed);

/// Dispatches on `cfg.kind` with `cfg.seed`.
template <Vartype V>
SolveResult solve(const QuadraticModel<V>& m, const SolverConfig& cfg);

/// Same as solve() with the seed replaced.
template <Vartype V>
SolveResult solve(const QuadraticModel<V>& m, const SolverConfig& cfg, std::uint64_t seed);

/// A model over `vars` with every other variable fixed to its value in
/// `state`. `sub.energy(y) == full.energy(state with vars := y)`; the
/// clamped part lives in sub's offset (`constant`).
template <Vartype V>
struct ClampedModel {
    QuadraticModel<V> sub;
    std::vector<VarId> vars;
    double constant = 0.0;
};

template <Vartype V>
ClampedModel<V> clamp(const QuadraticModel<V>& m, std::span<const Value> state, std::span<const VarId> vars);

}  // namespace qcut
