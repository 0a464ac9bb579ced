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

#include "qcut/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qcut/bipartition.hpp"
#include "qcut/community.hpp"

namespace qcut {

namespace {

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

int get_positive_int(const nlohmann::json& j, const std::string& key, int min) {
    if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    const auto v = j.get<long long>();
    if (v < min || v > 1'000'000'000) throw ConfigError("config key '" + key + "' out of range");
    return static_cast<int>(v);
}

}  // namespace

SolverConfig merge_solver_config(SolverConfig cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("solver config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "solver") {
            try {
                cfg.kind = parse_solver_kind(get_as<std::string>(value, key));
            } catch (const SolverError& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "restarts") {
            cfg.sa.restarts = get_positive_int(value, key, 1);
            cfg.tabu.restarts = cfg.sa.restarts;
        } else if (key == "sweeps") {
            cfg.sa.sweeps = get_positive_int(value, key, 1);
        } else if (key == "t_initial") {
            cfg.sa.t_initial = get_as<double>(value, key);
        } else if (key == "t_final") {
            cfg.sa.t_final = get_as<double>(value, key);
        } else if (key == "tenure") {
            cfg.tabu.tenure = get_positive_int(value, key, 1);
            cfg.hybrid.inner_tabu.tenure = cfg.tabu.tenure;
        } else if (key == "max_no_improve") {
            cfg.tabu.max_no_improve = get_positive_int(value, key, 0);
            cfg.hybrid.inner_tabu.max_no_improve = cfg.tabu.max_no_improve;
        } else if (key == "sub_size") {
            cfg.hybrid.sub_size = get_positive_int(value, key, 1);
        } else if (key == "rounds") {
            cfg.hybrid.rounds = get_positive_int(value, key, 1);
        } else if (key == "anneal_sweeps") {
            cfg.hybrid.anneal_sweeps = get_positive_int(value, key, 0);
        } else if (key == "inner") {
            try {
                cfg.hybrid.inner = parse_solver_kind(get_as<std::string>(value, key));
            } catch (const SolverError& e) {
                throw ConfigError(e.what());
            }
            if (cfg.hybrid.inner != SolverKind::kExact && cfg.hybrid.inner != SolverKind::kTabu) {
                throw ConfigError("inner solver must be exact or tabu");
            }
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(get_positive_int(value, key, 0));
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
                throw ConfigError("config key 'seed' must be a non-negative integer");
            }
            cfg.seed = value.get<std::uint64_t>();
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

SolverConfig load_solver_config(const std::filesystem::path& path, SolverConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return merge_solver_config(std::move(base), j);
}

nlohmann::json solver_config_json(const SolverConfig& cfg) {
    nlohmann::json j{{"solver", to_string(cfg.kind)}, {"seed", cfg.seed}};
    switch (cfg.kind) {
        case SolverKind::kExact: break;
        case SolverKind::kSimulatedAnnealing:
            j["restarts"] = cfg.sa.restarts;
            j["sweeps"] = cfg.sa.sweeps;
            j["t_initial"] = cfg.sa.t_initial;
            j["t_final"] = cfg.sa.t_final;
            break;
        case SolverKind::kTabu:
            j["restarts"] = cfg.tabu.restarts;
            j["tenure"] = cfg.tabu.tenure;
            j["max_no_improve"] = cfg.tabu.max_no_improve;
            break;
        case SolverKind::kHybrid:
            j["sub_size"] = cfg.hybrid.sub_size;
            j["rounds"] = cfg.hybrid.rounds;
            j["inner"] = to_string(cfg.hybrid.inner);
            j["tenure"] = cfg.hybrid.inner_tabu.tenure;
            j["anneal_sweeps"] = cfg.hybrid.anneal_sweeps;
            break;
    }
    return j;
}

nlohmann::json RunReport::to_json(bool with_time) const {
    nlohmann::json j{{"input", input},
                     {"task", task},
                     {"k", k},
                     {"solver", solver},
                     {"cut_edges", cut_edges},
                     {"part_sizes", part_sizes},
                     {"imbalance", imbalance},
                     {"repairs", repairs},
                     {"energy", energy},
                     {"seed", seed}};
    j["modularity"] = modularity ? nlohmann::json(*modularity) : nlohmann::json(nullptr);
    if (couplers) j["couplers"] = *couplers;
    if (with_time) j["wall_time"] = wall_time;
    return j;
}

RunReport make_report(const Graph& g, const Assignment& a, std::string task) {
    a.validate(g.num_nodes());
    RunReport r;
    r.task = std::move(task);
    r.k = a.k;
    r.cut_edges = count_cut_edges(g, a);
    r.part_sizes = a.part_sizes();
    if (g.total_weight_2m() > 0.0) r.modularity = modularity_score(g, a);
    const double target = static_cast<double>(g.num_nodes()) / a.k;
    for (std::size_t s : r.part_sizes) {
        const double gap = std::abs(static_cast<double>(s) - target);
        r.imbalance = std::max(r.imbalance, static_cast<int>(std::ceil(gap - 1e-9)));
    }
    return r;
}

void write_report_line(std::ostream& out, const RunReport& r, bool with_time) {
    out << r.to_json(with_time).dump() << '\n';
}

void write_partition(std::ostream& out, const Assignment& a) {
    for (std::size_t i = 0; i < a.labels.size(); ++i) out << i << ' ' << a.labels[i] << '\n';
}

void print_table(std::ostream& out, const std::vector<RunReport>& rows) {
    out << std::left << std::setw(10) << "task" << std::right << std::setw(5) << "k" << std::setw(12) << "cut"
        << std::setw(13) << "modularity" << std::setw(11) << "imbalance" << std::setw(9) << "repairs" << std::setw(16)
        << "energy" << "  sizes\n";
    for (const auto& r : rows) {
        std::ostringstream sizes;
        for (std::size_t i = 0; i < r.part_sizes.size(); ++i) sizes << (i ? "/" : "") << r.part_sizes[i];
        std::ostringstream mod;
        if (r.modularity) {
            mod << std::fixed << std::setprecision(8) << *r.modularity;
        } else {
            mod << "-";
        }
        out << std::left << std::setw(10) << r.task << std::right << std::setw(5) << r.k << std::setw(12) << r.cut_edges
            << std::setw(13) << mod.str() << std::setw(11) << r.imbalance << std::setw(9) << r.repairs << std::setw(16)
            << std::setprecision(10) << r.energy << "  " << sizes.str() << '\n';
    }
}

}  // namespace qcut
