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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qcut/graph.hpp"

namespace qcut {

enum class GraphFormat { kMetis, kEdgeList, kMatrixMarket };

/// Malformed graph input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

 private:
    std::size_t line_;
};

/// METIS/Walshaw `.graph`: header `n m [fmt]` followed by one adjacency line
/// per node (1-based ids). fmt 0 = unweighted, 1 = edge weights. '%' lines
/// are comments. Every edge must be listed from both endpoints with the same
/// weight.
Graph parse_metis(std::istream& in);

/// One edge per line: `i j [w]`, 0-based ids, '#' starts a comment. Each
/// undirected edge appears once. The node count is the largest id + 1.
Graph parse_edge_list(std::istream& in);

/// Matrix Market coordinate format (`real`, `integer` or `pattern`;
/// `symmetric` or `general`). Diagonal entries are dropped and |value| is
/// used as the edge weight; explicit zeros are skipped. A `general` matrix
/// must be numerically symmetric.
Graph parse_matrix_market(std::istream& in);

Graph load_graph(const std::filesystem::path& path, GraphFormat format);

/// `.graph`/`.metis` -> METIS, `.mtx` -> Matrix Market, anything else -> edge list.
GraphFormat guess_format(const std::filesystem::path& path);

GraphFormat parse_format_name(const std::string& name);

void write_metis(std::ostream& out, const Graph& g);

}  // namespace qcut
