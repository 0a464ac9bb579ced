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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcut/fixtures.hpp"
#include "qcut/graph_io.hpp"

using namespace qcut;

namespace {

Graph metis(const std::string& text) {
    std::istringstream in(text);
    return parse_metis(in);
}

Graph edges(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Graph mtx(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_market(in);
}

// Line number carried by the ParseError `fn` throws; 0 if it throws none.
template <class Fn>
std::size_t error_line(Fn&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("METIS: path graph") {
    const Graph g = metis("4 3\n2\n1 3\n2 4\n3\n");
    CHECK(g == path_graph(4));
    CHECK(g.is_unweighted());
}

TEST_CASE("METIS: comments, edge weights, isolated node") {
    const Graph g = metis("% comment\n3 1 1\n2 2.5\n1 2.5\n\n");
    CHECK(g.num_nodes() == 3);
    CHECK(g.weight(0, 1) == 2.5);
    CHECK(g.degree(2) == 0.0);
    CHECK(metis("2 1 001\n2 3\n1 3\n").weight(0, 1) == 3.0);
}

TEST_CASE("METIS: errors carry line numbers") {
    CHECK(error_line([] { metis("3 2\n2\n1 3\n2\n9\n"); }) == 5);      // extra line
    CHECK(error_line([] { metis("3 2\n2\n1\n"); }) != 0);              // too few lines
    CHECK(error_line([] { metis("3 1\n2\n3\n2\n"); }) == 2);           // asymmetric 1-2
    CHECK(error_line([] { metis("2 1\n1\n\n"); }) == 2);               // self-loop
    CHECK(error_line([] { metis("2 1\n3\n1\n"); }) == 2);              // out of range
    CHECK(error_line([] { metis("2 1 1\n2 1\n1 2\n"); }) != 0);        // asymmetric weight
    CHECK(error_line([] { metis("2 1 1\n2 0\n1 0\n"); }) == 2);        // zero weight
    CHECK(error_line([] { metis("2 1 10\n1 2\n1 1\n"); }) == 1);       // vertex weights
    CHECK(error_line([] { metis("2 1 2\n2\n1\n"); }) == 1);            // bad fmt
    CHECK(error_line([] { metis("x 1\n"); }) == 1);
    CHECK(error_line([] { metis("2 1\n2 2\n1 1\n"); }) == 2);          // duplicate
    CHECK_THROWS_WITH_AS(metis(""), doctest::Contains("missing METIS header"), ParseError);
    CHECK_THROWS_WITH_AS(metis("3 3\n2\n1 3\n2\n"), doctest::Contains("header declares 3 edges"), ParseError);
}

TEST_CASE("edge list: karate fixture") {
    const std::filesystem::path path = std::filesystem::path(QCUT_DATA_DIR) / "karate.edgelist";
    const Graph g = load_graph(path, GraphFormat::kEdgeList);
    CHECK(g.num_nodes() == 34);
    // Independent count of edge lines in the file.
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') ++lines;
    }
    CHECK(g.num_edges() == lines);
    CHECK(g.num_edges() == 78);
    CHECK(g.total_weight_2m() == 156.0);
}

TEST_CASE("edge list: weights, comments, errors") {
    const Graph g = edges("# header\n0 1 2.5  # trailing\n\n1 3\n");
    CHECK(g.num_nodes() == 4);
    CHECK(g.weight(0, 1) == 2.5);
    CHECK(g.weight(1, 3) == 1.0);
    CHECK(error_line([] { edges("0 1\n1 1\n"); }) == 2);
    CHECK(error_line([] { edges("0 1\n1 0\n"); }) == 2);
    CHECK(error_line([] { edges("0 -1\n"); }) == 1);
    CHECK(error_line([] { edges("0 1 2 3\n"); }) == 1);
    CHECK(error_line([] { edges("0 a\n"); }) == 1);
    CHECK_THROWS_AS(edges("0 1 0\n"), ParseError);
    CHECK_THROWS_AS(edges("0 1 -3\n"), ParseError);
}

TEST_CASE("Matrix Market: symmetric, general, pattern") {
    const Graph s = mtx("%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 4\n1 1 9\n2 1 -0.5\n3 2 2\n3 3 1\n");
    CHECK(s.num_nodes() == 3);
    CHECK(s.num_edges() == 2);
    CHECK(s.weight(0, 1) == 0.5);  // |value|, diagonal dropped
    CHECK(s.weight(1, 2) == 2.0);
    const Graph gen = mtx("%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 2 3\n2 1 3\n");
    CHECK(gen.weight(0, 1) == 3.0);
    const Graph pat = mtx("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 1\n");
    CHECK(pat.num_edges() == 2);
    CHECK(pat.is_unweighted());
    const Graph zeros = mtx("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 0\n");
    CHECK(zeros.num_edges() == 0);
}

TEST_CASE("Matrix Market: errors") {
    CHECK_THROWS_AS(mtx(""), ParseError);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix array real general\n"); }) == 1);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate complex general\n"); }) == 1);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real skew-symmetric\n"); }) == 1);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real general\n2 3 0\n"); }) == 2);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 1\n"); }) == 3);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 1\n2 1 2\n"); }) != 0);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n"); }) == 3);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n3 1 1\n"); }) == 3);
    CHECK(error_line([] { mtx("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1\n"); }) != 0);
}

TEST_CASE("write_metis round-trips") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = erdos_renyi(12, 0.3, seed);
        std::ostringstream out;
        write_metis(out, g);
        CHECK(metis(out.str()) == g);
    }
    const Graph w = Graph::from_edges(3, {{0, 1, 2.5}, {1, 2, 4.0}});
    std::ostringstream out;
    write_metis(out, w);
    CHECK(metis(out.str()) == w);
}

TEST_CASE("format names and guessing") {
    CHECK(guess_format("a/3elt.graph") == GraphFormat::kMetis);
    CHECK(guess_format("x.metis") == GraphFormat::kMetis);
    CHECK(guess_format("m.mtx") == GraphFormat::kMatrixMarket);
    CHECK(guess_format("k.edgelist") == GraphFormat::kEdgeList);
    CHECK(parse_format_name("metis") == GraphFormat::kMetis);
    CHECK(parse_format_name("edge_list") == GraphFormat::kEdgeList);
    CHECK(parse_format_name("matrix_market") == GraphFormat::kMatrixMarket);
    CHECK_THROWS_AS(parse_format_name("csv"), std::invalid_argument);
}

TEST_CASE("load_graph names the file in errors") {
    CHECK_THROWS_AS(load_graph("/nonexistent/file.graph", GraphFormat::kMetis), std::runtime_error);
    const auto path = std::filesystem::temp_directory_path() / "qcut_bad_test.graph";
    {
        std::ofstream out(path);
        out << "2 1\n2\n2\n";
    }
    CHECK_THROWS_WITH_AS(load_graph(path, GraphFormat::kMetis), doctest::Contains("qcut_bad_test.graph"), ParseError);
    std::filesystem::remove(path);
}
