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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcut/graph.hpp"
#include "qcut/report.hpp"
#include "qcut/solvers.hpp"

namespace qcut {

inline constexpr const char* kWalshawArchiveUrl = "https://chriswalshaw.co.uk/partition/";
inline constexpr const char* kWalshawDirEnv = "QCUT_WALSHAW_DIR";

/// Reference bisection cuts for one archive graph. best_known is the
/// archive's record when these numbers were collected, not a live value.
struct WalshawReference {
    const char* name;
    std::size_t nodes;
    int best_known;
    int metis;
    int kahip;
    int qbsolv;
};

std::span<const WalshawReference> walshaw_references();

/// Karate-club rows of the thresholding experiment: tau, couplers left,
/// modularity of the resulting 2-split.
struct ThresholdReference {
    double tau;
    std::size_t couplers;
    double modularity;
};

std::span<const ThresholdReference> karate_threshold_references();

struct BenchRow {
    std::string name;
    RunReport report;
    bool pass = false;
    std::string detail;
};

struct BenchResult {
    std::string suite;
    std::vector<BenchRow> rows;

    std::size_t passed() const;
    bool all_passed() const { return passed() == rows.size(); }
};

class MissingFixture : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Smallest total weight of cut edges over partitions into k parts whose
/// sizes differ by at most one. Exhaustive; n <= 12.
double brute_force_balanced_cut(const Graph& g, int k);

/// 100 random connected graphs (n 3..10) bisected exactly with default
/// penalties, and 50 k-way instances (n <= 8, k in 2..4, at most 24 bits)
/// solved exactly; every row is checked against brute_force_balanced_cut.
BenchResult bench_oracle_small(std::uint64_t seed);

/// Coupler counts and 2-split modularity on the karate club for every
/// reference threshold, one row per count and one per modularity.
BenchResult bench_tables(const Graph& karate, const SolverConfig& solver);

/// Hybrid bisection of the named archive graphs found in `dir`; a row
/// passes when the split is balanced and the cut is within 1.2x the best
/// known. Throws MissingFixture naming absent files and the archive URL.
BenchResult bench_walshaw(const std::filesystem::path& dir, const std::vector<std::string>& names,
                          const SolverConfig& solver);

}  // namespace qcut
