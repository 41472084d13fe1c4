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

#include <algorithm>
#include <bit>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "gdpurify/errors.h"

namespace gdpurify {

std::string graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::GHZ:
            return "ghz";
        case GraphKind::LinearCluster:
            return "path";
        case GraphKind::ClosedCluster:
            return "ring";
        case GraphKind::GridCluster:
            return "grid";
        case GraphKind::Custom:
            return "custom";
    }
    return "custom";
}

Color Graph::color(std::size_t v) const {
    return data_->colors.at(v);
}

Syndrome Graph::neighbor_mask(std::size_t v) const {
    return data_->neighbors.at(v);
}

std::size_t Graph::num_a() const {
    return static_cast<std::size_t>(std::popcount(data_->a_mask));
}

std::size_t Graph::num_b() const {
    return static_cast<std::size_t>(std::popcount(data_->b_mask));
}

std::vector<std::size_t> Graph::a_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < data_->n; v++) {
        if (data_->colors[v] == Color::A) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<std::size_t> Graph::b_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < data_->n; v++) {
        if (data_->colors[v] == Color::B) {
            out.push_back(v);
        }
    }
    return out;
}

std::size_t Graph::degree(std::size_t v) const {
    return static_cast<std::size_t>(std::popcount(neighbor_mask(v)));
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < data_->n; v++) {
        best = std::max(best, degree(v));
    }
    return best;
}

bool Graph::operator==(const Graph &other) const {
    return data_->n == other.data_->n && data_->neighbors == other.data_->neighbors &&
           data_->colors == other.data_->colors;
}

Graph build_graph(std::size_t n, std::span<const Edge> edges, GraphKind kind) {
    if (n == 0 || n > kMaxGraphVertices) {
        throw Error(ErrorCode::InvalidParam,
                    "vertex count must be in [1, " + std::to_string(kMaxGraphVertices) + "], got " +
                        std::to_string(n));
    }
    auto data = std::make_shared<Graph::Data>();
    data->n = n;
    data->kind = kind;
    data->neighbors.assign(n, 0);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Edge &e : edges) {
        if (e.u >= n || e.v >= n) {
            throw Error(ErrorCode::InvalidParam, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                                     ") has an endpoint >= n=" + std::to_string(n));
        }
        if (e.u == e.v) {
            throw Error(ErrorCode::InvalidParam, "self-loop at vertex " + std::to_string(e.u));
        }
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) {
            throw Error(ErrorCode::DuplicateEdge,
                        "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ") repeated");
        }
        data->edges.push_back({key.first, key.second});
        data->neighbors[e.u] |= Syndrome{1} << e.v;
        data->neighbors[e.v] |= Syndrome{1} << e.u;
    }

    constexpr std::uint8_t kUncolored = 2;
    std::vector<std::uint8_t> side(n, kUncolored);
    std::deque<std::size_t> queue;
    for (std::size_t root = 0; root < n; root++) {
        if (side[root] != kUncolored) {
            continue;
        }
        side[root] = 0;
        queue.push_back(root);
        while (!queue.empty()) {
            std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y = 0; y < n; y++) {
                if (!((data->neighbors[x] >> y) & 1)) {
                    continue;
                }
                if (side[y] == kUncolored) {
                    side[y] = side[x] ^ 1;
                    queue.push_back(y);
                } else if (side[y] == side[x]) {
                    throw Error(ErrorCode::OddCycle, "vertices " + std::to_string(x) + " and " + std::to_string(y) +
                                                         " are adjacent but forced onto the same side");
                }
            }
        }
    }
    data->colors.resize(n);
    for (std::size_t v = 0; v < n; v++) {
        data->colors[v] = side[v] == 0 ? Color::A : Color::B;
        (side[v] == 0 ? data->a_mask : data->b_mask) |= Syndrome{1} << v;
    }
    return Graph(std::move(data));
}

Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
    return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

Graph standard_graph(GraphKind kind, std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidParam, "standard graphs need at least 2 vertices, got " + std::to_string(n));
    }
    std::vector<Edge> edges;
    switch (kind) {
        case GraphKind::GHZ:
            for (std::size_t k = 1; k < n; k++) {
                edges.push_back({0, k});
            }
            break;
        case GraphKind::LinearCluster:
            for (std::size_t k = 0; k + 1 < n; k++) {
                edges.push_back({k, k + 1});
            }
            break;
        case GraphKind::ClosedCluster:
            if (n % 2 != 0 || n < 4) {
                throw Error(ErrorCode::InvalidParam,
                            "closed cluster needs an even vertex count >= 4, got " + std::to_string(n));
            }
            for (std::size_t k = 0; k < n; k++) {
                edges.push_back({k, (k + 1) % n});
            }
            break;
        case GraphKind::GridCluster:
            throw Error(ErrorCode::InvalidParam, "grid clusters are built with grid_cluster(rows, cols)");
        case GraphKind::Custom:
            throw Error(ErrorCode::InvalidParam, "custom graphs are built with build_graph");
    }
    return build_graph(n, edges, kind);
}

Graph grid_cluster(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || rows * cols < 2) {
        throw Error(ErrorCode::InvalidParam, "grid needs rows*cols >= 2");
    }
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            std::size_t v = r * cols + c;
            if (c + 1 < cols) {
                edges.push_back({v, v + 1});
            }
            if (r + 1 < rows) {
                edges.push_back({v, v + cols});
            }
        }
    }
    return build_graph(rows * cols, edges, GraphKind::GridCluster);
}

namespace {

bool next_content_line(std::istream &in, std::string &line, std::size_t &line_no) {
    while (std::getline(in, line)) {
        line_no++;
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos) {
            return true;
        }
    }
    return false;
}

}  // namespace

Graph read_graph_text(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &what) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    if (!next_content_line(in, line, line_no)) {
        fail("missing header 'n m'");
    }
    long long n = -1;
    long long m = -1;
    {
        std::istringstream ss(line);
        std::string rest;
        if (!(ss >> n >> m) || (ss >> rest) || n <= 0 || m < 0) {
            fail("expected header 'n m' with n > 0 and m >= 0");
        }
    }
    std::vector<Edge> edges;
    for (long long i = 0; i < m; i++) {
        if (!next_content_line(in, line, line_no)) {
            fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        }
        std::istringstream ss(line);
        long long u = -1;
        long long v = -1;
        std::string rest;
        if (!(ss >> u >> v) || (ss >> rest) || u < 0 || v < 0) {
            fail("expected edge 'u v' with nonnegative integers");
        }
        edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
    }
    if (next_content_line(in, line, line_no)) {
        fail("trailing content after " + std::to_string(m) + " edges");
    }
    return build_graph(static_cast<std::size_t>(n), edges);
}

Graph read_graph_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open graph file '" + path + "'");
    }
    try {
        return read_graph_text(in);
    } catch (const Error &e) {
        throw Error(e.code(), "graph file '" + path + "': " + e.what());
    }
}

void write_graph_text(const Graph &g, std::ostream &out) {
    out << g.num_vertices() << ' ' << g.edges().size() << '\n';
    for (const Edge &e : g.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
}

}  // namespace gdpurify
