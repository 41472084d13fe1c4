// Copyright 2026 The gdpurify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gdpurify/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "gdpurify/errors.h"

using namespace gdpurify;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::ParseError;
}

void expect_properly_colored(const Graph &g) {
    for (const Edge &e : g.edges()) {
        EXPECT_NE(g.color(e.u), g.color(e.v)) << e.u << "-" << e.v;
    }
    EXPECT_EQ(g.a_mask() & g.b_mask(), 0u);
    EXPECT_EQ(g.a_mask() | g.b_mask(), g.full_mask());
    for (std::size_t u = 0; u < g.num_vertices(); u++) {
        EXPECT_FALSE((g.neighbor_mask(u) >> u) & 1);
        for (std::size_t v = 0; v < g.num_vertices(); v++) {
            EXPECT_EQ((g.neighbor_mask(u) >> v) & 1, (g.neighbor_mask(v) >> u) & 1);
        }
    }
}

}  // namespace

TEST(graph, single_edge_coloring) {
    Graph g = build_graph(2, {{0, 1}});
    EXPECT_EQ(g.color(0), Color::A);
    EXPECT_EQ(g.color(1), Color::B);
    EXPECT_EQ(g.a_mask(), 0b01u);
    EXPECT_EQ(g.b_mask(), 0b10u);
}

TEST(graph, triangle_is_odd_cycle) {
    EXPECT_EQ(code_of([] { build_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }), ErrorCode::OddCycle);
}

TEST(graph, duplicate_and_bad_edges) {
    EXPECT_EQ(code_of([] { build_graph(3, {{0, 1}, {1, 0}}); }), ErrorCode::DuplicateEdge);
    EXPECT_EQ(code_of([] { build_graph(3, {{1, 1}}); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { build_graph(3, {{0, 3}}); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { build_graph(0, {}); }), ErrorCode::InvalidParam);
}

TEST(graph, path_alternates) {
    Graph g = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(g.a_vertices(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(g.b_vertices(), (std::vector<std::size_t>{1, 3}));
}

TEST(graph, disconnected_components_root_in_a) {
    Graph g = build_graph(5, {{1, 2}, {3, 4}});
    EXPECT_EQ(g.color(0), Color::A);
    EXPECT_EQ(g.color(1), Color::A);
    EXPECT_EQ(g.color(2), Color::B);
    EXPECT_EQ(g.color(3), Color::A);
    EXPECT_EQ(g.color(4), Color::B);
}

TEST(graph, standard_ghz) {
    Graph g = standard_graph(GraphKind::GHZ, 4);
    ASSERT_EQ(g.edges().size(), 3u);
    EXPECT_EQ(g.num_a(), 1u);
    EXPECT_EQ(g.num_b(), 3u);
    EXPECT_EQ(g.neighbor_mask(0), 0b1110u);
    EXPECT_EQ(g.max_degree(), 3u);
}

TEST(graph, standard_two_vertex_graphs_agree) {
    EXPECT_EQ(standard_graph(GraphKind::GHZ, 2).edges(), standard_graph(GraphKind::LinearCluster, 2).edges());
}

TEST(graph, standard_ring) {
    Graph g = standard_graph(GraphKind::ClosedCluster, 6);
    for (std::size_t v = 0; v < 6; v++) {
        EXPECT_EQ(g.degree(v), 2u);
        EXPECT_EQ(g.color(v), v % 2 == 0 ? Color::A : Color::B);
    }
    EXPECT_EQ(code_of([] { standard_graph(GraphKind::ClosedCluster, 5); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { standard_graph(GraphKind::ClosedCluster, 2); }), ErrorCode::InvalidParam);
    EXPECT_EQ(code_of([] { standard_graph(GraphKind::GHZ, 1); }), ErrorCode::InvalidParam);
}

TEST(graph, edge_and_degree_counts) {
    for (std::size_t n = 2; n <= 20; n++) {
        Graph path = standard_graph(GraphKind::LinearCluster, n);
        Graph ghz = standard_graph(GraphKind::GHZ, n);
        EXPECT_EQ(path.edges().size(), n - 1);
        EXPECT_EQ(path.max_degree(), n == 2 ? 1u : 2u);
        EXPECT_EQ(ghz.edges().size(), n - 1);
        EXPECT_EQ(ghz.max_degree(), n - 1);
        expect_properly_colored(path);
        expect_properly_colored(ghz);
        if (n % 2 == 0 && n >= 4) {
            expect_properly_colored(standard_graph(GraphKind::ClosedCluster, n));
        }
    }
    expect_properly_colored(grid_cluster(3, 4));
    EXPECT_EQ(grid_cluster(3, 4).edges().size(), 17u);
}

TEST(graph, syndrome_parts) {
    Graph ghz = standard_graph(GraphKind::GHZ, 3);
    EXPECT_EQ(syndrome_parts(ghz, 0b011).a_part, 0b001u);
    EXPECT_EQ(syndrome_parts(ghz, 0b011).b_part, 0b010u);
    EXPECT_EQ(syndrome_parts(ghz, 0).a_part, 0u);
    EXPECT_EQ(syndrome_parts(ghz, 0).b_part, 0u);
    Graph path = standard_graph(GraphKind::LinearCluster, 4);
    EXPECT_EQ(syndrome_parts(path, 0b1111).a_part, 0b0101u);
    EXPECT_EQ(syndrome_parts(path, 0b1111).b_part, 0b1010u);
}

TEST(graph, relabeling_permutes_neighbor_masks) {
    std::mt19937_64 rng(5);
    const Graph base = grid_cluster(2, 3);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<std::size_t> perm(base.num_vertices());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> edges;
        for (const Edge &e : base.edges()) {
            edges.push_back({perm[e.u], perm[e.v]});
        }
        Graph g = build_graph(base.num_vertices(), edges);
        for (std::size_t v = 0; v < base.num_vertices(); v++) {
            Syndrome expected = 0;
            for (std::size_t u = 0; u < base.num_vertices(); u++) {
                if ((base.neighbor_mask(v) >> u) & 1) {
                    expected |= Syndrome{1} << perm[u];
                }
            }
            EXPECT_EQ(g.neighbor_mask(perm[v]), expected);
        }
    }
}

TEST(graph, text_round_trip) {
    Graph g = grid_cluster(2, 3);
    std::stringstream ss;
    write_graph_text(g, ss);
    Graph back = read_graph_text(ss);
    EXPECT_EQ(back.num_vertices(), g.num_vertices());
    EXPECT_EQ(back.edges(), g.edges());
}

TEST(graph, text_errors_carry_line_numbers) {
    std::stringstream bad_edge("3 2\n0 1\n\n1 x\n");
    try {
        read_graph_text(bad_edge);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
    std::stringstream short_list("3 2\n0 1\n");
    EXPECT_EQ(code_of([&] { read_graph_text(short_list); }), ErrorCode::ParseError);
}

TEST(graph, file_errors_name_the_file) {
    const std::string path = std::string(GDPURIFY_TEST_DATA_DIR) + "/triangle.graph";
    try {
        read_graph_file(path);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OddCycle);
        EXPECT_NE(std::string(e.what()).find("triangle.graph"), std::string::npos);
    }
    EXPECT_EQ(read_graph_file(std::string(GDPURIFY_TEST_DATA_DIR) + "/star4.graph").neighbor_mask(0), 0b1110u);
}
