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

#ifndef GDPURIFY_GRAPH_H
#define GDPURIFY_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gdpurify {

/// Index into the graph-state basis. Bit v holds the eigenvalue exponent of the
/// correlation operator K_v (vertex v <-> bit v, bit 0 least significant).
using Syndrome = std::uint64_t;

/// Largest vertex count whose syndrome space fits the mask type.
inline constexpr std::size_t kMaxGraphVertices = 62;

enum class Color : std::uint8_t { A, B };

struct Edge {
    std::size_t u;
    std::size_t v;

    bool operator==(const Edge &) const = default;
};

enum class GraphKind { GHZ, LinearCluster, ClosedCluster, GridCluster, Custom };

std::string graph_kind_name(GraphKind kind);

/// Immutable two-colorable graph. Copies share the underlying data, so a Graph
/// can be held by value in every state derived from it.
class Graph {
   public:
    std::size_t num_vertices() const {
        return data_->n;
    }
    const std::vector<Edge> &edges() const {
        return data_->edges;
    }
    GraphKind kind() const {
        return data_->kind;
    }
    /// Short label used in CSV output, e.g. "path".
    std::string kind_name() const {
        return graph_kind_name(data_->kind);
    }

    Color color(std::size_t v) const;
    Syndrome neighbor_mask(std::size_t v) const;
    Syndrome a_mask() const {
        return data_->a_mask;
    }
    Syndrome b_mask() const {
        return data_->b_mask;
    }
    Syndrome full_mask() const {
        return data_->a_mask | data_->b_mask;
    }
    std::size_t num_a() const;
    std::size_t num_b() const;
    std::vector<std::size_t> a_vertices() const;
    std::vector<std::size_t> b_vertices() const;

    std::size_t degree(std::size_t v) const;
    std::size_t max_degree() const;

    /// Size of the syndrome space, 2^n.
    std::size_t basis_size() const {
        return std::size_t{1} << data_->n;
    }

    bool operator==(const Graph &other) const;

   private:
    struct Data {
        std::size_t n = 0;
        std::vector<Edge> edges;
        std::vector<Color> colors;
        std::vector<Syndrome> neighbors;
        Syndrome a_mask = 0;
        Syndrome b_mask = 0;
        GraphKind kind = GraphKind::Custom;
    };
    explicit Graph(std::shared_ptr<const Data> data) : data_(std::move(data)) {
    }
    std::shared_ptr<const Data> data_;

    friend Graph build_graph(std::size_t n, std::span<const Edge> edges, GraphKind kind);
};

/// Builds a graph and two-colors it by breadth-first search. Components are rooted
/// at their smallest vertex, which is colored A; neighbors are visited in
/// ascending order.
///
/// Throws OddCycle if the graph is not bipartite, DuplicateEdge on a repeated pair,
/// InvalidParam on self-loops, out-of-range endpoints or n outside [1, 62].
Graph build_graph(std::size_t n, std::span<const Edge> edges, GraphKind kind = GraphKind::Custom);
Graph build_graph(std::size_t n, std::initializer_list<Edge> edges);

/// GHZ (star centered at 0), LinearCluster (path), ClosedCluster (ring, even n >= 4).
Graph standard_graph(GraphKind kind, std::size_t n);
/// rows x cols lattice, vertex r*cols+c, checkerboard coloring.
Graph grid_cluster(std::size_t rows, std::size_t cols);

struct SyndromeParts {
    Syndrome a_part;
    Syndrome b_part;

    bool operator==(const SyndromeParts &) const = default;
};

inline SyndromeParts syndrome_parts(const Graph &g, Syndrome idx) {
    return {idx & g.a_mask(), idx & g.b_mask()};
}

/// Reads the "n m" + m lines of "u v" text format.
Graph read_graph_text(std::istream &in);
Graph read_graph_file(const std::string &path);
void write_graph_text(const Graph &g, std::ostream &out);

}  // namespace gdpurify

#endif
