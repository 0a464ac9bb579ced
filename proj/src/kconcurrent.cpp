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

#include "qcut/kconcurrent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcut {

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace

KWayModel build_kway_qubo(const Graph& g, int k, const KWayPenalties& p) {
    const std::size_t n = g.num_nodes();
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the node count " + std::to_string(n));
    }
    check_positive(p.beta, "beta");
    if (p.alpha.size() != static_cast<std::size_t>(k)) throw std::invalid_argument("need one alpha per part");
    if (p.gamma.size() != n) throw std::invalid_argument("need one gamma per node");
    for (double a : p.alpha) check_positive(a, "alpha");
    for (double c : p.gamma) check_positive(c, "gamma");

    const KWayLayout layout{n, static_cast<std::size_t>(k)};
    QuboModel m(layout.num_variables());
    const double target = static_cast<double>(n) / k;

    for (std::size_t j = 0; j < layout.k; ++j) {
        const double a = p.alpha[j];
        // alpha_j (sum_i x_ij - n/k)^2 with x^2 = x
        std::vector<VarId> part(n);
        for (std::size_t i = 0; i < n; ++i) {
            part[i] = layout.var(i, j);
            m.add_linear(part[i], a * (1.0 - 2.0 * target) + p.beta * g.degree(static_cast<NodeId>(i)));
        }
        m.add_block(std::move(part), 2.0 * a);
        m.add_offset(a * target * target);
        for (const auto& e : g.edges()) m.add_quadratic(layout.var(e.u, j), layout.var(e.v, j), -2.0 * p.beta * e.weight);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double c = p.gamma[i];
        // gamma_i (sum_j x_ij - 1)^2
        for (std::size_t j = 0; j < layout.k; ++j) {
            m.add_linear(layout.var(i, j), -c);
            for (std::size_t l = j + 1; l < layout.k; ++l) m.add_quadratic(layout.var(i, j), layout.var(i, l), 2.0 * c);
        }
        m.add_offset(c);
    }
    return {std::move(m), layout};
}

KWayPenalties default_kway_penalties(const Graph& g, int k) {
    const std::size_t n = g.num_nodes();
    if (k < 1) throw std::invalid_argument("k must be positive");
    const double per_part = std::ceil(static_cast<double>(n) / k);
    const double alpha = std::min(g.max_weighted_degree(), per_part) + 1.0;
    KWayPenalties p;
    p.beta = 1.0;
    p.alpha.assign(static_cast<std::size_t>(k), alpha);
    p.gamma.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.gamma[i] = p.beta * (g.degree(static_cast<NodeId>(i)) + 1.0) + alpha;
    return p;
}

OneHotDecode decode_onehot(const Graph& g, std::span<const Value> bits, const KWayLayout& layout) {
    if (layout.n != g.num_nodes()) throw std::invalid_argument("layout does not match the graph");
    if (bits.size() != layout.num_variables()) {
        throw std::invalid_argument("expected " + std::to_string(layout.num_variables()) + " bits, got " +
                                    std::to_string(bits.size()));
    }
    for (Value b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("bit vector holds a value other than 0 or 1");
    }
    const std::size_t n = layout.n;
    OneHotDecode out;
    out.assignment.k = static_cast<int>(layout.k);
    auto& label = out.assignment.labels;
    label.assign(n, -1);
    std::vector<std::size_t> load(layout.k, 0);
    std::vector<std::size_t> broken;
    for (std::size_t i = 0; i < n; ++i) {
        int set = 0;
        int part = -1;
        for (std::size_t j = 0; j < layout.k; ++j) {
            if (bits[layout.var(i, j)] == 1) {
                ++set;
                part = static_cast<int>(j);
            }
        }
        if (set == 1) {
            label[i] = part;
            ++load[part];
        } else {
            broken.push_back(i);
        }
    }
    for (std::size_t i : broken) {
        int pick = -1;
        bool any_set = false;
        for (std::size_t j = 0; j < layout.k; ++j) any_set |= bits[layout.var(i, j)] == 1;
        if (!any_set) {
            for (std::size_t j = 0; j < layout.k; ++j) {
                if (pick < 0 || load[j] < load[pick]) pick = static_cast<int>(j);
            }
        } else {
            // Cut to placed neighbors if i joins part j = placed weight not in j.
            std::vector<double> toward(layout.k, 0.0);
            double placed = 0.0;
            for (const auto& nb : g.neighbors(static_cast<NodeId>(i))) {
                if (label[nb.node] >= 0) {
                    toward[label[nb.node]] += nb.weight;
                    placed += nb.weight;
                }
            }
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < layout.k; ++j) {
                if (bits[layout.var(i, j)] != 1) continue;
                const double cut = placed - toward[j];
                if (cut < best) {
                    best = cut;
                    pick = static_cast<int>(j);
                }
            }
        }
        label[i] = pick;
        ++load[pick];
        ++out.repairs;
    }
    return out;
}

double kway_cut(const Graph& g, const Assignment& a) {
    a.validate(g.num_nodes());
    // x_j^T L x_j = sum over edges of w (x_j(u) - x_j(v))^2: an edge across
    // parts shows up in exactly two of the k terms.
    double total = 0.0;
    for (int j = 0; j < a.k; ++j) {
        for (const auto& e : g.edges()) {
            const int du = a.labels[e.u] == j ? 1 : 0;
            const int dv = a.labels[e.v] == j ? 1 : 0;
            total += e.weight * (du - dv) * (du - dv);
        }
    }
    return total / 2.0;
}

}  // namespace qcut
