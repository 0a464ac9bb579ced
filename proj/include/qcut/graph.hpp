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

namespace qcut {

using NodeId = std::int32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
    NodeId u;
    NodeId v;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Adjacent {
    NodeId node;
    double weight;
};

class GraphError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// Weighted undirected simple graph with sorted adjacency lists.
///
/// Immutable once built. Edge weights are positive and finite, there are no
/// self-loops and no parallel edges; `from_edges` rejects anything else.
class Graph {
 public:
    Graph() = default;

    /// Builds a graph on `n` nodes. Each undirected edge must appear exactly
    /// once, in either orientation.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges);

    std::size_t num_nodes() const { return degree_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    /// Edges sorted by (u, v) with u < v.
    std::span<const Edge> edges() const { return edges_; }

    /// Neighbors of `i` sorted by node id.
    std::span<const Adjacent> neighbors(NodeId i) const {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }

    /// Weighted degree g_i = sum_j A_ij.
    double degree(NodeId i) const { return degree_[i]; }
    std::span<const double> degrees() const { return degree_; }

    /// 2m = sum_i g_i.
    double total_weight_2m() const { return total_2m_; }

    /// A_ij; zero for non-adjacent pairs and on the diagonal.
    double weight(NodeId i, NodeId j) const;
    bool has_edge(NodeId i, NodeId j) const { return weight(i, j) != 0.0; }

    /// Largest number of neighbors of any node.
    std::size_t max_degree() const;
    double max_weighted_degree() const;

    /// True when every edge has weight exactly 1.
    bool is_unweighted() const;

    /// Subgraph induced by `nodes`; node `nodes[k]` becomes node k.
    Graph induced_subgraph(std::span<const NodeId> nodes) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.num_nodes() == b.num_nodes() && a.edges_ == b.edges_;
    }

 private:
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Adjacent> adjacency_;
    std::vector<double> degree_;
    double total_2m_ = 0.0;
};

/// Dense square matrix constrained to stay symmetric.
class DenseSymMatrix {
 public:
    DenseSymMatrix() = default;
    explicit DenseSymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    /// Sets entries (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value) {
        data_[i * n_ + j] = value;
        data_[j * n_ + i] = value;
    }
    void add(std::size_t i, std::size_t j, double value) {
        data_[i * n_ + j] += value;
        if (i != j) data_[j * n_ + i] += value;
    }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    /// v^T M v.
    template <class T>
    double quadratic_form(std::span<const T> v) const {
        double total = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (v[i] == T{0}) continue;
            double row_sum = 0.0;
            for (std::size_t j = 0; j < n_; ++j) row_sum += data_[i * n_ + j] * static_cast<double>(v[j]);
            total += static_cast<double>(v[i]) * row_sum;
        }
        return total;
    }

    friend bool operator==(const DenseSymMatrix&, const DenseSymMatrix&) = default;

 private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Dense rectangular matrix, row-major.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// L = D - A.
DenseSymMatrix laplacian(const Graph& g);

/// n x m incidence matrix. Edge l = (u, v), u < v, is oriented u -> v:
/// C(u, l) = +sqrt(w), C(v, l) = -sqrt(w), so that C C^T = L also for
/// weighted graphs.
DenseMatrix incidence(const Graph& g);

/// Non-edges of `g` as unit-weight edges on the same node set.
Graph complement(const Graph& g);

}  // namespace qcut
