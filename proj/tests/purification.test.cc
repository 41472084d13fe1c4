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

#include "gdpurify/purification.h"

#include <gtest/gtest.h>

#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "gdpurify/analysis.h"
#include "gdpurify/errors.h"

using namespace gdpurify;

namespace {

double max_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

std::vector<double> random_vector(std::size_t size, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> out(size);
    for (double &x : out) {
        x = unit(rng);
    }
    return out;
}

/// sum over kept-side patterns of (sum over the other side)^2.
double acceptance_identity(const GDState &s, Protocol protocol) {
    const Graph &g = s.graph();
    const Syndrome keep = protocol == Protocol::P1 ? g.a_mask() : g.b_mask();
    std::vector<double> marginal(g.basis_size(), 0.0);
    for (Syndrome m = 0; m < s.size(); m++) {
        marginal[m & keep] += s[m];
    }
    double total = 0;
    for (double x : marginal) {
        total += x * x;
    }
    return total;
}

}  // namespace

TEST(purification, schedule_parsing) {
    EXPECT_EQ(parse_schedule("P1,P2"), (std::vector<Protocol>{Protocol::P1, Protocol::P2}));
    EXPECT_EQ(parse_schedule(" p2 "), (std::vector<Protocol>{Protocol::P2}));
    EXPECT_THROW(parse_schedule("P1,P3"), Error);
    EXPECT_THROW(parse_schedule(""), Error);
    auto s = parse_schedule("P1,P1,P2");
    EXPECT_EQ(schedule_to_string(s), "P1,P1,P2");
}

TEST(purification, pure_target_is_fixed) {
    for (Protocol protocol : {Protocol::P1, Protocol::P2}) {
        GDState s = pure_target(standard_graph(GraphKind::LinearCluster, 5));
        StepResult r = purification_step(s, protocol, GateNoise::depolarizing(1), 0);
        EXPECT_EQ(r.state.fidelity(), 1.0);
        EXPECT_EQ(r.p_succ, 1.0);
        EXPECT_EQ(r.protocol_used, protocol);
    }
}

TEST(purification, rho_a_ghz3_step) {
    Graph g = standard_graph(GraphKind::GHZ, 3);
    StepResult r = p1_step(rho_A_family(g, 0.8), 1, 0);
    EXPECT_NEAR(r.state.fidelity(), 16.0 / 17.0, 1e-15);
    EXPECT_NEAR(r.p_succ, 0.68, 1e-15);
    GDState expected = rho_A_family(g, 16.0 / 17.0);
    EXPECT_LT(max_diff(r.state.coefficients(), expected.coefficients()), 1e-15);
}

TEST(purification, p2_preserves_b_supported_states) {
    Graph g = standard_graph(GraphKind::LinearCluster, 4);
    // Support on a_part = 0 only: {0, bit1, bit3, bit1|bit3}.
    std::vector<double> lambda(16, 0.0);
    lambda[0] = 0.6;
    lambda[0b0010] = 0.2;
    lambda[0b1000] = 0.15;
    lambda[0b1010] = 0.05;
    GDState s(g, lambda);
    StepResult r = p2_step(s, 1, 0);
    const double norm = 0.6 * 0.6 + 0.2 * 0.2 + 0.15 * 0.15 + 0.05 * 0.05;
    EXPECT_NEAR(r.p_succ, norm, 1e-15);
    for (Syndrome m = 0; m < 16; m++) {
        EXPECT_NEAR(r.state[m], lambda[m] * lambda[m] / norm, 1e-15) << m;
    }
}

TEST(purification, xor_square_delta_and_uniform) {
    Graph g = standard_graph(GraphKind::LinearCluster, 6);
    std::vector<double> delta(64, 0.0);
    delta[0] = 1;
    for (KernelMode mode : {KernelMode::Fast, KernelMode::Naive}) {
        auto out = xor_square_over_B(delta, g, mode);
        EXPECT_EQ(out[0], 1.0);
        EXPECT_EQ(std::accumulate(out.begin(), out.end(), 0.0), 1.0);
    }
    std::vector<double> uniform(64, 1.0 / 64);
    auto out = xor_square_over_B(uniform, g, KernelMode::Fast);
    GDState s(g, uniform);
    EXPECT_NEAR(std::accumulate(out.begin(), out.end(), 0.0), acceptance_identity(s, Protocol::P1), 1e-15);
    for (double c : out) {
        EXPECT_NEAR(c, out[0], 1e-17);
    }
}

TEST(purification, fast_equals_naive) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 2; n <= 12; n++) {
        Graph g = n % 3 == 0 ? standard_graph(GraphKind::GHZ, n) : standard_graph(GraphKind::LinearCluster, n);
        for (int trial = 0; trial < (n <= 8 ? 10 : 2); trial++) {
            auto lambda = random_vector(g.basis_size(), rng);
            double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
            for (double &x : lambda) {
                x /= sum;
            }
            auto fast = xor_square_over_B(lambda, g, KernelMode::Fast);
            auto naive = xor_square_over_B(lambda, g, KernelMode::Naive);
            ASSERT_LT(max_diff(fast, naive), 1e-12) << "n=" << n;
        }
    }
}

TEST(purification, step_modes_agree_end_to_end) {
    std::mt19937_64 rng(12);
    Graph g = standard_graph(GraphKind::ClosedCluster, 8);
    for (int trial = 0; trial < 5; trial++) {
        GDState s = random_state(g, rng);
        for (Protocol protocol : {Protocol::P1, Protocol::P2}) {
            auto fast = purification_step(s, protocol, GateNoise::depolarizing(0.93), 0.01, KernelMode::Fast);
            auto naive = purification_step(s, protocol, GateNoise::depolarizing(0.93), 0.01, KernelMode::Naive);
            EXPECT_LT(max_diff(fast.state.coefficients(), naive.state.coefficients()), 1e-12);
            EXPECT_NEAR(fast.p_succ, naive.p_succ, 1e-12);
        }
    }
}

TEST(purification, acceptance_probability_identity) {
    std::mt19937_64 rng(13);
    for (auto kind : {GraphKind::GHZ, GraphKind::LinearCluster}) {
        for (std::size_t n = 2; n <= 7; n++) {
            GDState s = random_state(standard_graph(kind, n), rng);
            EXPECT_NEAR(p1_step(s, 1, 0).p_succ, acceptance_identity(s, Protocol::P1), 1e-14);
            EXPECT_NEAR(p2_step(s, 1, 0).p_succ, acceptance_identity(s, Protocol::P2), 1e-14);
        }
    }
}

TEST(purification, output_is_normalized) {
    std::mt19937_64 rng(14);
    GDState s = random_state(grid_cluster(2, 4), rng);
    for (double p : {1.0, 0.9, 0.6}) {
        for (double f_m : {0.0, 0.05, 0.5}) {
            StepResult r = p1_step(s, p, f_m);
            auto c = r.state.coefficients();
            EXPECT_NEAR(std::accumulate(c.begin(), c.end(), 0.0), 1.0, 1e-12);
            for (double x : c) {
                EXPECT_GE(x, 0.0);
            }
        }
    }
}

TEST(purification, rho_a_family_closure_and_squaring) {
    for (auto kind : {GraphKind::GHZ, GraphKind::LinearCluster, GraphKind::ClosedCluster}) {
        Graph g = standard_graph(kind, 6);
        GDState s = rho_A_family(g, 0.55);
        StepResult r = p1_step(s, 1, 0);
        double norm = 0;
        for (double c : s.coefficients()) {
            norm += c * c;
        }
        for (Syndrome m = 0; m < s.size(); m++) {
            EXPECT_NEAR(r.state[m], s[m] * s[m] / norm, 1e-15);
            if (s[m] == 0) {
                EXPECT_EQ(r.state[m], 0.0);
            }
        }
    }
}

TEST(purification, monotone_gain_above_threshold) {
    // GHZ N has N_A = 1; paths of 2k and 2k-1 vertices have N_A = k.
    const std::vector<Graph> graphs = {
        standard_graph(GraphKind::GHZ, 4),           standard_graph(GraphKind::LinearCluster, 4),
        standard_graph(GraphKind::LinearCluster, 6), standard_graph(GraphKind::LinearCluster, 8),
        standard_graph(GraphKind::LinearCluster, 10),
    };
    for (const Graph &g : graphs) {
        const double threshold = std::ldexp(1.0, -static_cast<int>(g.num_a()));
        for (double f : {0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
            const double in = std::max(f, threshold + 1e-3);
            EXPECT_GT(p1_step(rho_A_family(g, in), 1, 0).state.fidelity(), in) << g.num_a() << " " << in;
        }
    }
}

TEST(purification, bad_parameters) {
    GDState s = pure_target(standard_graph(GraphKind::GHZ, 3));
    EXPECT_THROW(p1_step(s, 1.2, 0), Error);
    EXPECT_THROW(p1_step(s, 1, 0.7), Error);
    EXPECT_THROW(p1_step(s, 1, -0.1), Error);
}

TEST(purification, iterate_verdicts) {
    Graph g = standard_graph(GraphKind::GHZ, 3);
    const std::vector<Protocol> p1_only{Protocol::P1};
    auto up = iterate(rho_A_family(g, 0.6), p1_only, GateNoise::depolarizing(1), 0, {});
    EXPECT_EQ(up.verdict, Verdict::Converged);
    EXPECT_GE(up.final_fidelity(), 1 - 1e-6);
    auto down = iterate(rho_A_family(g, 0.4), p1_only, GateNoise::depolarizing(1), 0, {});
    EXPECT_EQ(down.verdict, Verdict::Diverged);

    auto done = iterate(pure_target(g), default_schedule(), GateNoise::depolarizing(1), 0, {});
    EXPECT_EQ(done.verdict, Verdict::Converged);
    EXPECT_EQ(done.rounds(), 0u);
    EXPECT_EQ(done.expected_cost, 1.0);

    auto capped = iterate(rho_A_family(g, 0.51), p1_only, GateNoise::depolarizing(1), 0, {1e-6, 1e-12, 2});
    EXPECT_EQ(capped.verdict, Verdict::MaxRounds);
    EXPECT_EQ(capped.rounds(), 2u);
}

TEST(purification, iterate_stalls_below_one) {
    Graph g = standard_graph(GraphKind::LinearCluster, 6);
    auto trace = iterate(prepared_with_channel_noise(g, 0.9), default_schedule(), GateNoise::depolarizing(0.99), 0, {});
    EXPECT_EQ(trace.verdict, Verdict::Stalled);
    // Baseline from a verified run.
    EXPECT_NEAR(trace.final_fidelity(), 0.96819616689095978, 1e-9);
    EXPECT_EQ(trace.rounds() % 2, 0u);
}

TEST(purification, expected_cost_accumulates) {
    Graph g = standard_graph(GraphKind::GHZ, 4);
    auto trace = iterate(rho_A_family(g, 0.7), std::vector<Protocol>{Protocol::P1}, GateNoise::depolarizing(1), 0, {});
    double cost = 1;
    for (const TraceRow &row : trace.rows) {
        cost *= 2 / row.p_succ;
        EXPECT_NEAR(row.cumulative_expected_cost, cost, 1e-12 * cost);
    }
    EXPECT_NEAR(trace.expected_cost, cost, 1e-12 * cost);
}

TEST(purification, trace_csv) {
    Graph g = standard_graph(GraphKind::GHZ, 3);
    auto trace = iterate(rho_A_family(g, 0.8), std::vector<Protocol>{Protocol::P1}, GateNoise::depolarizing(1), 0, {1e-6, 1e-12, 1});
    std::stringstream ss;
    write_trace_csv(trace, ss);
    std::string header;
    std::string row;
    std::getline(ss, header);
    std::getline(ss, row);
    EXPECT_EQ(header, "round,protocol,F_before,F_after,p_succ,cumulative_expected_cost");
    EXPECT_EQ(row.rfind("1,P1,0.80000000000000004,0.941176470588235", 0), 0u) << row;
    EXPECT_EQ(trace.verdict, Verdict::MaxRounds);
}

TEST(purification, large_step_is_fast) {
    Graph g = standard_graph(GraphKind::LinearCluster, 20);
    GDState s = prepared_with_channel_noise(g, 0.95);
    auto start = std::chrono::steady_clock::now();
    StepResult r = p1_step(s, 0.97, 0.01);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_GT(r.p_succ, 0.0);
    EXPECT_LT(seconds, 2.0);
}
