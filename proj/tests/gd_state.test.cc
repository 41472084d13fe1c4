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

#include "gdpurify/gd_state.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "gdpurify/errors.h"
#include "gdpurify/oracle.h"

using namespace gdpurify;

namespace {

double total(const GDState &s) {
    auto c = s.coefficients();
    return std::accumulate(c.begin(), c.end(), 0.0);
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

std::vector<Graph> small_graphs() {
    return {
        standard_graph(GraphKind::GHZ, 2),
        standard_graph(GraphKind::GHZ, 3),
        standard_graph(GraphKind::GHZ, 4),
        standard_graph(GraphKind::LinearCluster, 3),
        standard_graph(GraphKind::LinearCluster, 4),
        standard_graph(GraphKind::ClosedCluster, 4),
    };
}

}  // namespace

TEST(gd_state, pure_target) {
    GDState s = pure_target(standard_graph(GraphKind::GHZ, 3));
    EXPECT_EQ(s.fidelity(), 1.0);
    EXPECT_EQ(total(s), 1.0);
    EXPECT_EQ(s.size(), 8u);
}

TEST(gd_state, constructor_validates) {
    Graph g = standard_graph(GraphKind::GHZ, 2);
    EXPECT_THROW(GDState(g, {1, 0, 0}), Error);
    try {
        GDState(g, {1, -1e-3, 0, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeCoefficient);
    }
    GDState clamped(g, {1, -1e-16, 0, 0});
    EXPECT_EQ(clamped[1], 0.0);
    GDState scaled(g, {2, 1, 1, 0});
    EXPECT_DOUBLE_EQ(scaled.fidelity(), 0.5);
}

TEST(gd_state, pauli_flip_masks) {
    Graph ghz = standard_graph(GraphKind::GHZ, 4);
    EXPECT_EQ(pauli_flip_mask(ghz, 0, PauliAxis::X), 0b1110u);
    EXPECT_EQ(pauli_flip_mask(ghz, 0, PauliAxis::Z), 0b0001u);
    EXPECT_EQ(pauli_flip_mask(ghz, 0, PauliAxis::Y), 0b1111u);
    Graph path = standard_graph(GraphKind::LinearCluster, 4);
    EXPECT_EQ(pauli_flip_mask(path, 2, PauliAxis::X), 0b1010u);
    for (std::size_t v = 0; v < 4; v++) {
        for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
            Syndrome m = pauli_flip_mask(path, v, axis);
            EXPECT_EQ(m ^ m, 0u);
        }
    }
}

TEST(gd_state, pauli_channel_examples) {
    Graph g = standard_graph(GraphKind::GHZ, 3);
    std::mt19937_64 rng(1);
    GDState s = random_state(g, rng);
    GDState same = apply_pauli_channel(s, 1, {1, 0, 0, 0});
    EXPECT_LT(max_diff(same.coefficients(), s.coefficients()), 1e-15);

    GDState uniform(g, std::vector<double>(8, 1.0 / 8));
    GDState still = apply_pauli_channel(uniform, 2, {0.1, 0.2, 0.3, 0.4});
    EXPECT_LT(max_diff(still.coefficients(), uniform.coefficients()), 1e-15);

    const double q = 0.8;
    GDState out = apply_pauli_channel(pure_target(g), 1, {q + (1 - q) / 4, (1 - q) / 4, (1 - q) / 4, (1 - q) / 4});
    EXPECT_NEAR(out[0], 0.85, 1e-15);
    EXPECT_NEAR(out[pauli_flip_mask(g, 1, PauliAxis::X)], 0.05, 1e-15);
    EXPECT_NEAR(out[pauli_flip_mask(g, 1, PauliAxis::Y)], 0.05, 1e-15);
    EXPECT_NEAR(out[pauli_flip_mask(g, 1, PauliAxis::Z)], 0.05, 1e-15);
}

TEST(gd_state, bad_distribution) {
    Graph g = standard_graph(GraphKind::GHZ, 2);
    try {
        apply_pauli_channel(pure_target(g), 0, {0.5, 0.5, 0.5, -0.5});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadDistribution);
    }
    EXPECT_THROW(apply_pauli_channel(pure_target(g), 0, {0.5, 0.1, 0.1, 0.1}), Error);
    EXPECT_THROW(depolarizing_channel(pure_target(g), 0, 1.5), Error);
    EXPECT_THROW(bitflip_B_noise(pure_target(g), -0.1), Error);
}

TEST(gd_state, depolarizing_limits) {
    Graph g = standard_graph(GraphKind::LinearCluster, 4);
    std::mt19937_64 rng(2);
    GDState s = random_state(g, rng);
    EXPECT_LT(max_diff(depolarizing_channel(s, 2, 1.0).coefficients(), s.coefficients()), 1e-15);
    GDState mixed = s;
    for (int rep = 0; rep < 3; rep++) {
        mixed = depolarize_all(mixed, 0.0);
    }
    for (double c : mixed.coefficients()) {
        EXPECT_NEAR(c, 1.0 / 16, 1e-15);
    }
}

TEST(gd_state, prepared_with_channel_noise) {
    Graph g2 = standard_graph(GraphKind::GHZ, 2);
    EXPECT_EQ(prepared_with_channel_noise(g2, 1.0).fidelity(), 1.0);

    // Dense 4x4 reference for <Psi|rho(q)|Psi>.
    DenseState rho = dense_graph_state(g2);
    rho.depolarize(0, 0.9);
    rho.depolarize(1, 0.9);
    auto psi = graph_state_vector(g2);
    Complex f = 0;
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            f += std::conj(psi[i]) * rho.at(i, j) * psi[j];
        }
    }
    EXPECT_NEAR(prepared_with_channel_noise(g2, 0.9).fidelity(), f.real(), 1e-14);

    // Channels on distinct vertices commute.
    Graph g = grid_cluster(2, 3);
    GDState forward = pure_target(g);
    GDState backward = pure_target(g);
    for (std::size_t v = 0; v < g.num_vertices(); v++) {
        forward = depolarizing_channel(forward, v, 0.7 + 0.05 * v);
        std::size_t w = g.num_vertices() - 1 - v;
        backward = depolarizing_channel(backward, w, 0.7 + 0.05 * w);
    }
    EXPECT_LT(max_diff(forward.coefficients(), backward.coefficients()), 1e-15);
}

TEST(gd_state, pauli_channels_commute_exactly) {
    Graph g = standard_graph(GraphKind::LinearCluster, 5);
    std::mt19937_64 rng(3);
    GDState s = random_state(g, rng);
    PauliProbs a{0.7, 0.1, 0.15, 0.05};
    PauliProbs b{0.6, 0.2, 0.1, 0.1};
    GDState ab = apply_pauli_channel(apply_pauli_channel(s, 1, a), 3, b);
    GDState ba = apply_pauli_channel(apply_pauli_channel(s, 3, b), 1, a);
    EXPECT_LT(max_diff(ab.coefficients(), ba.coefficients()), 1e-15);
}

TEST(gd_state, global_white) {
    Graph g = standard_graph(GraphKind::LinearCluster, 4);
    EXPECT_EQ(global_white(g, 1).fidelity(), 1.0);
    const GDState white = global_white(g, 0);
    for (double c : white.coefficients()) {
        EXPECT_DOUBLE_EQ(c, 1.0 / 16);
    }
    EXPECT_DOUBLE_EQ(global_white(g, 0.5).fidelity(), 0.53125);
}

TEST(gd_state, rho_A_family) {
    Graph ghz = standard_graph(GraphKind::GHZ, 3);
    EXPECT_EQ(rho_A_family(ghz, 1).fidelity(), 1.0);
    GDState s = rho_A_family(ghz, 0.7);
    std::vector<double> nonzero;
    for (double c : s.coefficients()) {
        if (c != 0) {
            nonzero.push_back(c);
        }
    }
    ASSERT_EQ(nonzero.size(), 2u);
    EXPECT_DOUBLE_EQ(nonzero[0], 0.7);
    EXPECT_DOUBLE_EQ(nonzero[1], 0.3);

    GDState p4 = rho_A_family(standard_graph(GraphKind::LinearCluster, 4), 0.4);
    EXPECT_EQ(std::count_if(p4.coefficients().begin(), p4.coefficients().end(), [](double c) { return c != 0; }),
              4);
    EXPECT_NEAR(rho_A_fidelity_for_mixing(ghz, 0.5), 0.75, 1e-15);
}

TEST(gd_state, bitflip_b_noise) {
    Graph ghz = standard_graph(GraphKind::GHZ, 3);
    GDState s = pure_target(ghz);
    EXPECT_LT(max_diff(bitflip_B_noise(s, 1).coefficients(), s.coefficients()), 1e-15);
    GDState out = bitflip_B_noise(s, 0.8);
    EXPECT_NEAR(out[0], 0.82, 1e-15);
    EXPECT_NEAR(out[1], 0.18, 1e-15);

    Graph path = standard_graph(GraphKind::LinearCluster, 4);
    GDState p = bitflip_B_noise(pure_target(path), 0.8);
    const Syndrome m1 = pauli_flip_mask(path, 1, PauliAxis::X);
    const Syndrome m3 = pauli_flip_mask(path, 3, PauliAxis::X);
    EXPECT_NEAR(p[0], 0.81, 1e-15);
    EXPECT_NEAR(p[m1], 0.09, 1e-15);
    EXPECT_NEAR(p[m3], 0.09, 1e-15);
    EXPECT_NEAR(p[m1 ^ m3], 0.01, 1e-15);
}

TEST(gd_state, channels_preserve_trace) {
    std::mt19937_64 rng(4);
    for (const Graph &g : small_graphs()) {
        GDState s = random_state(g, rng);
        EXPECT_NEAR(total(depolarize_all(s, 0.37)), 1.0, 1e-14);
        EXPECT_NEAR(total(apply_pauli_channel(s, 0, {0.4, 0.3, 0.2, 0.1})), 1.0, 1e-14);
        EXPECT_NEAR(total(bitflip_B_noise(s, 0.6)), 1.0, 1e-14);
    }
}

TEST(gd_state, channels_match_dense) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const Graph &g : small_graphs()) {
        for (int trial = 0; trial < 100; trial++) {
            GDState s = random_state(g, rng);
            const std::size_t v = rng() % g.num_vertices();
            const double q = unit(rng);
            DenseState rho = dense_from_coefficients(g, s.coefficients());
            rho.depolarize(v, q);
            ASSERT_LT(max_diff(graph_basis_twirl(rho, g), depolarizing_channel(s, v, q).coefficients()), 1e-12);
        }
    }
}

TEST(gd_state, state_csv) {
    std::stringstream ss;
    write_state_csv(rho_A_family(standard_graph(GraphKind::GHZ, 3), 0.75), ss);
    EXPECT_EQ(ss.str(), "index,a_part,b_part,lambda\n0,0,0,0.75\n1,1,0,0.25\n");
}
