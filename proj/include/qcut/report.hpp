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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcut/assignment.hpp"
#include "qcut/graph.hpp"
#include "qcut/solvers.hpp"

namespace qcut {

class ConfigError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Reads a JSON object with any of the keys solver, restarts, sweeps,
/// t_initial, t_final, tenure, max_no_improve, sub_size, rounds, anneal_sweeps, inner,
/// threads, seed on top of `base`. Unknown keys and wrong types throw
/// ConfigError.
SolverConfig merge_solver_config(SolverConfig base, const nlohmann::json& j);
SolverConfig load_solver_config(const std::filesystem::path& path, SolverConfig base = {});

/// The keys that affect the chosen solver, in the config file's vocabulary.
nlohmann::json solver_config_json(const SolverConfig& cfg);

/// One result row. Graph-derived numbers are filled by make_report from the
/// final assignment, never taken from a solver.
struct RunReport {
    nlohmann::json input;  // {"file": ...} or {"generator": ..., "params": ..., "seed": ...}
    std::string task;      // cluster | bisect | recursive | kway
    int k = 0;
    nlohmann::json solver;
    double cut_edges = 0.0;
    std::optional<double> modularity;
    std::vector<std::size_t> part_sizes;
    int imbalance = 0;
    std::size_t repairs = 0;
    std::optional<std::size_t> couplers;
    double energy = 0.0;
    double wall_time = 0.0;
    std::uint64_t seed = 0;

    /// wall_time is left out unless asked for, so reruns with one seed give
    /// identical bytes.
    nlohmann::json to_json(bool with_time = false) const;
};

/// Fills cut_edges, part_sizes, imbalance and (for graphs with edges)
/// modularity from `a` on `g`. imbalance = max_j ceil(|size_j - n/k|).
RunReport make_report(const Graph& g, const Assignment& a, std::string task);

/// Appends one JSON line.
void write_report_line(std::ostream& out, const RunReport& r, bool with_time = false);

/// `node_id part_id` per line.
void write_partition(std::ostream& out, const Assignment& a);

/// Fixed-width table for terminals.
void print_table(std::ostream& out, const std::vector<RunReport>& rows);

}  // namespace qcut
