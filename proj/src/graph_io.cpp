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

#include "qcut/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace qcut {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Reads one integer or real token; fails on trailing garbage.
template <class T>
bool read_token(std::istringstream& ss, T& out) {
    std::string tok;
    if (!(ss >> tok)) return false;
    std::istringstream conv(tok);
    conv >> out;
    if (conv.fail() || !conv.eof()) throw std::invalid_argument("bad number '" + tok + "'");
    return true;
}

Graph build(std::size_t n, std::vector<Edge> edges, std::size_t line) {
    try {
        return Graph::from_edges(n, std::move(edges));
    } catch (const GraphError& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Graph parse_metis(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, raw)) {
            ++lineno;
            if (!raw.empty() && raw[0] == '%') continue;
            out = raw;
            return true;
        }
        return false;
    };

    std::string header;
    do {
        if (!next_line(header)) throw ParseError(lineno, "missing METIS header");
    } while (trim(header).empty());

    long long n = 0;
    long long m = 0;
    std::string fmt = "0";
    {
        std::istringstream ss(header);
        try {
            if (!read_token(ss, n) || !read_token(ss, m)) throw std::invalid_argument("expected 'n m [fmt]'");
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, std::string("bad header: ") + e.what());
        }
        ss >> fmt;
        std::string extra;
        if (ss >> extra && extra != "1") throw ParseError(lineno, "multi-constraint vertex weights are not supported");
    }
    if (n < 0 || m < 0) throw ParseError(lineno, "negative node or edge count in header");
    while (fmt.size() < 3) fmt.insert(fmt.begin(), '0');
    if (fmt.size() != 3 || fmt.find_first_not_of("01") != std::string::npos) {
        throw ParseError(lineno, "unknown fmt field '" + fmt + "'");
    }
    if (fmt[0] == '1' || fmt[1] == '1') throw ParseError(lineno, "vertex sizes/weights are not supported");
    const bool edge_weights = fmt[2] == '1';

    // Directed half-edges, keyed by (min, max), tracking both orientations.
    struct Half {
        double forward = 0.0;   // listed by the smaller endpoint
        double backward = 0.0;  // listed by the larger endpoint
        std::size_t line = 0;
    };
    std::map<std::pair<NodeId, NodeId>, Half> halves;
    std::size_t listed = 0;

    for (long long node = 0; node < n; ++node) {
        std::string line;
        if (!next_line(line)) {
            throw ParseError(lineno, "expected " + std::to_string(n) + " adjacency lines, found " +
                                         std::to_string(node));
        }
        std::istringstream ss(line);
        while (true) {
            long long nbr = 0;
            double w = 1.0;
            try {
                if (!read_token(ss, nbr)) break;
                if (edge_weights && !read_token(ss, w)) throw std::invalid_argument("missing edge weight");
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
            if (nbr < 1 || nbr > n) throw ParseError(lineno, "neighbor " + std::to_string(nbr) + " out of range");
            const auto u = static_cast<NodeId>(node);
            const auto v = static_cast<NodeId>(nbr - 1);
            if (u == v) throw ParseError(lineno, "self-loop on node " + std::to_string(node + 1));
            if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(lineno, "non-positive edge weight");
            auto& h = halves[{std::min(u, v), std::max(u, v)}];
            double& slot = u < v ? h.forward : h.backward;
            if (slot != 0.0) {
                throw ParseError(lineno, "duplicate edge " + std::to_string(node + 1) + " " + std::to_string(nbr));
            }
            slot = w;
            if (h.line == 0) h.line = lineno;
            ++listed;
        }
    }
    std::string rest;
    while (next_line(rest)) {
        if (!trim(rest).empty()) throw ParseError(lineno, "more adjacency lines than the header's node count");
    }

    std::vector<Edge> edges;
    edges.reserve(halves.size());
    for (const auto& [key, h] : halves) {
        if (h.forward == 0.0 || h.backward == 0.0) {
            throw ParseError(h.line, "asymmetric adjacency: edge " + std::to_string(key.first + 1) + " " +
                                         std::to_string(key.second + 1) + " listed from one endpoint only");
        }
        if (h.forward != h.backward) {
            throw ParseError(h.line, "asymmetric weights on edge " + std::to_string(key.first + 1) + " " +
                                         std::to_string(key.second + 1));
        }
        edges.push_back({key.first, key.second, h.forward});
    }
    if (static_cast<long long>(edges.size()) != m) {
        throw ParseError(0, "header declares " + std::to_string(m) + " edges, body has " +
                                std::to_string(edges.size()) + " (" + std::to_string(listed) + " adjacency entries)");
    }
    return build(static_cast<std::size_t>(n), std::move(edges), 0);
}

Graph parse_edge_list(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    std::vector<Edge> edges;
    std::vector<std::size_t> lines;
    long long max_id = -1;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        std::istringstream ss(body);
        long long i = 0;
        long long j = 0;
        double w = 1.0;
        try {
            if (!read_token(ss, i) || !read_token(ss, j)) throw std::invalid_argument("expected 'i j [w]'");
            read_token(ss, w);
            std::string extra;
            if (ss >> extra) throw std::invalid_argument("unexpected token '" + extra + "'");
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        if (i < 0 || j < 0) throw ParseError(lineno, "negative node id");
        if (i == j) throw ParseError(lineno, "self-loop on node " + std::to_string(i));
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
        lines.push_back(lineno);
        max_id = std::max({max_id, i, j});
    }
    // Report duplicates with the offending line before handing over.
    std::map<std::pair<NodeId, NodeId>, std::size_t> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto key = std::minmax(edges[k].u, edges[k].v);
        auto [it, fresh] = seen.emplace(std::pair{key.first, key.second}, lines[k]);
        if (!fresh) {
            throw ParseError(lines[k], "duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second) +
                                           " (first seen on line " + std::to_string(it->second) + ")");
        }
    }
    return build(static_cast<std::size_t>(max_id + 1), std::move(edges), 0);
}

Graph parse_matrix_market(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    if (!std::getline(in, raw)) throw ParseError(0, "empty Matrix Market file");
    ++lineno;
    std::istringstream banner(raw);
    std::string tag, object, layout, field, symmetry;
    banner >> tag >> object >> layout >> field >> symmetry;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(layout) != "coordinate") {
        throw ParseError(lineno, "expected '%%MatrixMarket matrix coordinate ...' banner");
    }
    field = lower(field);
    symmetry = lower(symmetry);
    if (field != "real" && field != "integer" && field != "pattern") {
        throw ParseError(lineno, "unsupported field '" + field + "'");
    }
    if (symmetry != "symmetric" && symmetry != "general") {
        throw ParseError(lineno, "unsupported symmetry '" + symmetry + "'");
    }

    long long rows = -1, cols = -1, nnz = -1;
    while (std::getline(in, raw)) {
        ++lineno;
        if (raw.empty() || raw[0] == '%' || trim(raw).empty()) continue;
        std::istringstream ss(raw);
        try {
            if (!read_token(ss, rows) || !read_token(ss, cols) || !read_token(ss, nnz)) {
                throw std::invalid_argument("expected 'rows cols nnz'");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        break;
    }
    if (rows < 0) throw ParseError(lineno, "missing size line");
    if (rows != cols) throw ParseError(lineno, "matrix is not square");

    std::map<std::pair<NodeId, NodeId>, std::pair<double, std::size_t>> entries;
    long long read = 0;
    while (read < nnz && std::getline(in, raw)) {
        ++lineno;
        if (raw.empty() || raw[0] == '%' || trim(raw).empty()) continue;
        std::istringstream ss(raw);
        long long i = 0, j = 0;
        double v = 1.0;
        try {
            if (!read_token(ss, i) || !read_token(ss, j)) throw std::invalid_argument("expected 'i j [value]'");
            if (field != "pattern" && !read_token(ss, v)) throw std::invalid_argument("missing value");
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
        ++read;
        if (i < 1 || j < 1 || i > rows || j > rows) throw ParseError(lineno, "index out of range");
        if (i == j || v == 0.0) continue;
        const auto key = std::pair{static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1)};
        if (!entries.emplace(key, std::pair{v, lineno}).second) throw ParseError(lineno, "duplicate entry");
    }
    if (read != nnz) throw ParseError(lineno, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(read));

    std::vector<Edge> edges;
    for (const auto& [key, val] : entries) {
        const auto [i, j] = key;
        if (symmetry == "symmetric") {
            if (i < j) throw ParseError(val.second, "symmetric file stores an upper-triangle entry");
            edges.push_back({j, i, std::abs(val.first)});
            continue;
        }
        auto mirror = entries.find({j, i});
        if (mirror == entries.end() || mirror->second.first != val.first) {
            throw ParseError(val.second, "asymmetric entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
        }
        if (i < j) edges.push_back({i, j, std::abs(val.first)});
    }
    return build(static_cast<std::size_t>(rows), std::move(edges), 0);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path.string());
    try {
        switch (format) {
            case GraphFormat::kMetis: return parse_metis(in);
            case GraphFormat::kEdgeList: return parse_edge_list(in);
            case GraphFormat::kMatrixMarket: return parse_matrix_market(in);
        }
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
    throw std::logic_error("unknown graph format");
}

GraphFormat guess_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".graph" || ext == ".metis") return GraphFormat::kMetis;
    if (ext == ".mtx") return GraphFormat::kMatrixMarket;
    return GraphFormat::kEdgeList;
}

GraphFormat parse_format_name(const std::string& name) {
    if (name == "metis") return GraphFormat::kMetis;
    if (name == "edge_list" || name == "edgelist") return GraphFormat::kEdgeList;
    if (name == "matrix_market" || name == "mtx") return GraphFormat::kMatrixMarket;
    throw std::invalid_argument("unknown graph format '" + name + "' (metis, edge_list, matrix_market)");
}

void write_metis(std::ostream& out, const Graph& g) {
    const bool weighted = !g.is_unweighted();
    out << std::setprecision(17);
    out << g.num_nodes() << ' ' << g.num_edges();
    if (weighted) out << " 1";
    out << '\n';
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        bool first = true;
        for (const auto& a : g.neighbors(static_cast<NodeId>(i))) {
            if (!first) out << ' ';
            first = false;
            out << a.node + 1;
            if (weighted) out << ' ' << a.weight;
        }
        out << '\n';
    }
}

}  // namespace qcut
