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

#include "qcut/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace qcut {

namespace {

auto neighbor_less = [](const Neighbor& a, VarId v) { return a.var < v; };

void insert_or_add(std::vector<Neighbor>& list, VarId v, double bias) {
    auto it = std::lower_bound(list.begin(), list.end(), v, neighbor_less);
    if (it != list.end() && it->var == v) {
        it->bias += bias;
    } else {
        list.insert(it, Neighbor{v, bias});
    }
}

}  // namespace

template <Vartype V>
void QuadraticModel<V>::check_index(VarId i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= linear_.size()) {
        throw ModelError("variable " + std::to_string(i) + " out of range");
    }
}

template <Vartype V>
void QuadraticModel<V>::add_linear(VarId i, double bias) {
    check_index(i);
    if (!std::isfinite(bias)) throw ModelError("non-finite linear bias");
    linear_[i] += bias;
}

template <Vartype V>
void QuadraticModel<V>::add_quadratic(VarId i, VarId j, double bias) {
    check_index(i);
    check_index(j);
    if (i == j) throw ModelError("quadratic term on the diagonal; use add_linear");
    if (!std::isfinite(bias)) throw ModelError("non-finite quadratic bias");
    insert_or_add(adj_[i], j, bias);
    insert_or_add(adj_[j], i, bias);
}

template <Vartype V>
double QuadraticModel<V>::sparse_quadratic(VarId i, VarId j) const {
    check_index(i);
    check_index(j);
    const auto& list = adj_[i];
    auto it = std::lower_bound(list.begin(), list.end(), j, neighbor_less);
    return (it != list.end() && it->var == j) ? it->bias : 0.0;
}

template <Vartype V>
double QuadraticModel<V>::quadratic(VarId i, VarId j) const {
    double q = sparse_quadratic(i, j);
    if (i == j) return q;
    for (const auto& b : blocks_) {
        const bool has_i = std::find(b.vars.begin(), b.vars.end(), i) != b.vars.end();
        if (has_i && std::find(b.vars.begin(), b.vars.end(), j) != b.vars.end()) q += b.coupling;
    }
    return q;
}

template <Vartype V>
std::size_t QuadraticModel<V>::num_interactions() const {
    std::size_t total = 0;
    for (const auto& list : adj_) total += list.size();
    return total / 2;
}

template <Vartype V>
void QuadraticModel<V>::add_block(std::vector<VarId> vars, double coupling) {
    if (!std::isfinite(coupling)) throw ModelError("non-finite block coupling");
    std::unordered_set<VarId> seen;
    for (VarId v : vars) {
        check_index(v);
        if (!seen.insert(v).second) throw ModelError("variable repeated inside a block");
    }
    std::sort(vars.begin(), vars.end());
    blocks_.push_back({std::move(vars), coupling});
}

template <Vartype V>
std::vector<std::tuple<VarId, VarId, double>> QuadraticModel<V>::quadratic_terms() const {
    std::vector<std::tuple<VarId, VarId, double>> out;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        for (const auto& nb : adj_[i]) {
            if (static_cast<std::size_t>(nb.var) > i) out.emplace_back(static_cast<VarId>(i), nb.var, nb.bias);
        }
    }
    return out;
}

template <Vartype V>
double QuadraticModel<V>::max_abs_coefficient() const {
    double best = 0.0;
    for (double b : linear_) best = std::max(best, std::abs(b));
    std::vector<std::vector<std::size_t>> member(linear_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        best = std::max(best, std::abs(blocks_[k].coupling));
        for (VarId v : blocks_[k].vars) member[v].push_back(k);
    }
    for (std::size_t i = 0; i < adj_.size(); ++i) {
        for (const auto& nb : adj_[i]) {
            double q = nb.bias;
            for (std::size_t k : member[i]) {
                if (std::binary_search(member[nb.var].begin(), member[nb.var].end(), k)) q += blocks_[k].coupling;
            }
            best = std::max(best, std::abs(q));
        }
    }
    return best;
}

template <Vartype V>
double QuadraticModel<V>::energy(std::span<const Value> state) const {
    if (state.size() != linear_.size()) {
        throw ModelError("state has " + std::to_string(state.size()) + " values, model has " +
                         std::to_string(linear_.size()) + " variables");
    }
    double e = offset_;
    for (std::size_t i = 0; i < linear_.size(); ++i) {
        const Value v = state[i];
        if (v != kLow && v != kHigh) throw ModelError("value out of domain at variable " + std::to_string(i));
        if (v == 0) continue;
        e += linear_[i] * v;
        double pair = 0.0;
        for (const auto& nb : adj_[i]) {
            if (static_cast<std::size_t>(nb.var) > i) pair += nb.bias * state[nb.var];
        }
        e += v * pair;
    }
    for (const auto& b : blocks_) {
        // sum_{a<b} v_a v_b = (S^2 - sum v^2) / 2, exact in integers.
        long long s = 0;
        long long sq = 0;
        for (VarId v : b.vars) {
            s += state[v];
            sq += static_cast<long long>(state[v]) * state[v];
        }
        e += b.coupling * static_cast<double>((s * s - sq) / 2);
    }
    return e;
}

template <Vartype V>
QuadraticModel<V> QuadraticModel<V>::materialized() const {
    QuadraticModel out(num_variables());
    out.linear_ = linear_;
    out.adj_ = adj_;
    out.offset_ = offset_;
    for (const auto& b : blocks_) {
        for (std::size_t a = 0; a < b.vars.size(); ++a) {
            for (std::size_t c = a + 1; c < b.vars.size(); ++c) out.add_quadratic(b.vars[a], b.vars[c], b.coupling);
        }
    }
    return out;
}

template <Vartype V>
std::size_t QuadraticModel<V>::num_couplers() const {
    const auto full = blocks_.empty() ? *this : materialized();
    std::size_t count = 0;
    for (std::size_t i = 0; i < full.adj_.size(); ++i) {
        for (const auto& nb : full.adj_[i]) {
            if (static_cast<std::size_t>(nb.var) > i && nb.bias != 0.0) ++count;
        }
    }
    return count;
}

template class QuadraticModel<Vartype::kSpin>;
template class QuadraticModel<Vartype::kBinary>;

double energy_ising(const IsingModel& m, std::span<const Value> spins) { return m.energy(spins); }
double energy_qubo(const QuboModel& m, std::span<const Value> bits) { return m.energy(bits); }

QuboModel ising_to_qubo(const IsingModel& m) {
    const auto n = m.num_variables();
    QuboModel out(n);
    out.add_offset(m.offset());
    for (std::size_t i = 0; i < n; ++i) {
        // h s = 2h x - h
        const double h = m.linear(static_cast<VarId>(i));
        if (h != 0.0) {
            out.add_linear(static_cast<VarId>(i), 2.0 * h);
            out.add_offset(-h);
        }
    }
    for (const auto& [i, j, J] : m.quadratic_terms()) {
        // J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J
        out.add_quadratic(i, j, 4.0 * J);
        out.add_linear(i, -2.0 * J);
        out.add_linear(j, -2.0 * J);
        out.add_offset(J);
    }
    for (const auto& b : m.blocks()) {
        const double size = static_cast<double>(b.vars.size());
        out.add_block(b.vars, 4.0 * b.coupling);
        for (VarId v : b.vars) out.add_linear(v, -2.0 * b.coupling * (size - 1.0));
        out.add_offset(b.coupling * size * (size - 1.0) / 2.0);
    }
    return out;
}

IsingModel qubo_to_ising(const QuboModel& m) {
    const auto n = m.num_variables();
    IsingModel out(n);
    out.add_offset(m.offset());
    for (std::size_t i = 0; i < n; ++i) {
        // q x = q/2 s + q/2
        const double q = m.linear(static_cast<VarId>(i));
        if (q != 0.0) {
            out.add_linear(static_cast<VarId>(i), q / 2.0);
            out.add_offset(q / 2.0);
        }
    }
    for (const auto& [i, j, q] : m.quadratic_terms()) {
        // q x_i x_j = q/4 (s_i s_j + s_i + s_j + 1)
        out.add_quadratic(i, j, q / 4.0);
        out.add_linear(i, q / 4.0);
        out.add_linear(j, q / 4.0);
        out.add_offset(q / 4.0);
    }
    for (const auto& b : m.blocks()) {
        const double size = static_cast<double>(b.vars.size());
        out.add_block(b.vars, b.coupling / 4.0);
        for (VarId v : b.vars) out.add_linear(v, b.coupling * (size - 1.0) / 4.0);
        out.add_offset(b.coupling * size * (size - 1.0) / 8.0);
    }
    return out;
}

State spins_to_bits(std::span<const Value> spins) {
    State out(spins.size());
    std::transform(spins.begin(), spins.end(), out.begin(), [](Value s) { return static_cast<Value>((s + 1) / 2); });
    return out;
}

State bits_to_spins(std::span<const Value> bits) {
    State out(bits.size());
    std::transform(bits.begin(), bits.end(), out.begin(), [](Value x) { return static_cast<Value>(2 * x - 1); });
    return out;
}

template <Vartype V>
nlohmann::json to_json(const QuadraticModel<V>& m) {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < m.num_variables(); ++i) {
        const double b = m.linear(static_cast<VarId>(i));
        if (b != 0.0) terms.push_back({i, i, b});
    }
    for (const auto& [i, j, q] : m.quadratic_terms()) terms.push_back({i, j, q});
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : m.blocks()) blocks.push_back({{"vars", b.vars}, {"coupling", b.coupling}});
    return {{"vartype", V == Vartype::kSpin ? "SPIN" : "BINARY"},
            {"n", m.num_variables()},
            {"terms", terms},
            {"offset", m.offset()},
            {"blocks", blocks}};
}

template nlohmann::json to_json(const IsingModel&);
template nlohmann::json to_json(const QuboModel&);

namespace {

template <Vartype V>
QuadraticModel<V> model_from_json(const nlohmann::json& j) {
    const std::string expected = V == Vartype::kSpin ? "SPIN" : "BINARY";
    if (j.at("vartype").get<std::string>() != expected) throw ModelError("expected a " + expected + " model");
    QuadraticModel<V> m(j.at("n").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
        const auto i = t.at(0).get<VarId>();
        const auto k = t.at(1).get<VarId>();
        const auto b = t.at(2).get<double>();
        if (i == k) {
            m.add_linear(i, b);
        } else {
            m.add_quadratic(i, k, b);
        }
    }
    m.add_offset(j.value("offset", 0.0));
    if (j.contains("blocks")) {
        for (const auto& b : j.at("blocks")) m.add_block(b.at("vars").get<std::vector<VarId>>(), b.at("coupling").get<double>());
    }
    return m;
}

}  // namespace

IsingModel ising_from_json(const nlohmann::json& j) { return model_from_json<Vartype::kSpin>(j); }
QuboModel qubo_from_json(const nlohmann::json& j) { return model_from_json<Vartype::kBinary>(j); }

}  // namespace qcut
