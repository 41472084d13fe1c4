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

#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "gdpurify/csv.h"
#include "gdpurify/errors.h"

namespace gdpurify {

namespace {

void require_unit_interval(double value, const char *name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::BadParam, std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

void require_vertex(const Graph &g, std::size_t v) {
    if (v >= g.num_vertices()) {
        throw Error(ErrorCode::InvalidParam,
                    "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(g.num_vertices()));
    }
}

std::vector<double> zero_vector(const Graph &g) {
    if (g.num_vertices() > kMaxStateVertices) {
        throw Error(ErrorCode::TooLarge, "graph-diagonal state with n=" + std::to_string(g.num_vertices()) +
                                             " exceeds the limit of " + std::to_string(kMaxStateVertices));
    }
    return std::vector<double>(g.basis_size(), 0.0);
}

}  // namespace

double normalize_coefficients(std::vector<double> &lambda) {
    double total = 0;
    for (std::size_t m = 0; m < lambda.size(); m++) {
        double &c = lambda[m];
        if (c < 0) {
            if (c < -kNegativeSlack) {
                throw Error(ErrorCode::NegativeCoefficient,
                            "coefficient " + std::to_string(m) + " is " + format_double(c));
            }
            c = 0;
        }
        total += c;
    }
    if (!(total > 0) || !std::isfinite(total)) {
        throw Error(ErrorCode::BadParam, "coefficient vector has no positive mass");
    }
    for (double &c : lambda) {
        c /= total;
    }
    return total;
}

GDState::GDState(Graph graph, std::vector<double> lambda) : graph_(std::move(graph)), lambda_(std::move(lambda)) {
    if (lambda_.size() != graph_.basis_size()) {
        throw Error(ErrorCode::InvalidParam, "expected " + std::to_string(graph_.basis_size()) +
                                                 " coefficients, got " + std::to_string(lambda_.size()));
    }
    normalize_coefficients(lambda_);
}

Syndrome pauli_flip_mask(const Graph &g, std::size_t v, PauliAxis axis) {
    require_vertex(g, v);
    const Syndrome self = Syndrome{1} << v;
    switch (axis) {
        case PauliAxis::X:
            return g.neighbor_mask(v);
        case PauliAxis::Y:
            return self ^ g.neighbor_mask(v);
        case PauliAxis::Z:
            return self;
    }
    return 0;
}

GDState pure_target(const Graph &g) {
    auto lambda = zero_vector(g);
    lambda[0] = 1;
    return GDState(g, std::move(lambda));
}

void apply_pauli_channel_in_place(const Graph &g, std::vector<double> &lambda, std::size_t v,
                                  const PauliProbs &probs) {
    require_vertex(g, v);
    double parts[] = {probs.i, probs.x, probs.y, probs.z};
    double sum = 0;
    for (double w : parts) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::BadDistribution, "Pauli probabilities must be nonnegative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorCode::BadDistribution, "Pauli probabilities sum to " + format_double(sum));
    }
    if (probs.i == 1.0) {
        return;
    }
    const Syndrome mx = pauli_flip_mask(g, v, PauliAxis::X);
    const Syndrome my = pauli_flip_mask(g, v, PauliAxis::Y);
    const Syndrome mz = pauli_flip_mask(g, v, PauliAxis::Z);
    std::vector<double> out(lambda.size());
    for (Syndrome m = 0; m < lambda.size(); m++) {
        out[m] = probs.i * lambda[m] + probs.x * lambda[m ^ mx] + probs.y * lambda[m ^ my] + probs.z * lambda[m ^ mz];
    }
    lambda = std::move(out);
}

GDState apply_pauli_channel(const GDState &s, std::size_t v, const PauliProbs &probs) {
    std::vector<double> lambda(s.coefficients().begin(), s.coefficients().end());
    apply_pauli_channel_in_place(s.graph(), lambda, v, probs);
    return GDState(s.graph(), std::move(lambda));
}

namespace {

PauliProbs depolarizing_probs(double q) {
    double e = (1 - q) / 4;
    return {q + e, e, e, e};
}

}  // namespace

GDState depolarizing_channel(const GDState &s, std::size_t v, double q) {
    require_unit_interval(q, "depolarizing parameter q");
    return apply_pauli_channel(s, v, depolarizing_probs(q));
}

void depolarize_all_in_place(const Graph &g, std::vector<double> &lambda, double q) {
    require_unit_interval(q, "depolarizing parameter q");
    if (q == 1.0) {
        return;
    }
    for (std::size_t v = 0; v < g.num_vertices(); v++) {
        apply_pauli_channel_in_place(g, lambda, v, depolarizing_probs(q));
    }
}

GDState depolarize_all(const GDState &s, double q) {
    std::vector<double> lambda(s.coefficients().begin(), s.coefficients().end());
    depolarize_all_in_place(s.graph(), lambda, q);
    return GDState(s.graph(), std::move(lambda));
}

GDState prepared_with_channel_noise(const Graph &g, double q) {
    require_unit_interval(q, "channel parameter q");
    auto lambda = zero_vector(g);
    lambda[0] = 1;
    depolarize_all_in_place(g, lambda, q);
    return GDState(g, std::move(lambda));
}

GDState global_white(const Graph &g, double x) {
    require_unit_interval(x, "mixing parameter x");
    auto lambda = zero_vector(g);
    double floor = (1 - x) / static_cast<double>(lambda.size());
    std::fill(lambda.begin(), lambda.end(), floor);
    lambda[0] += x;
    return GDState(g, std::move(lambda));
}

GDState rho_A_family(const Graph &g, double fidelity) {
    require_unit_interval(fidelity, "fidelity F");
    if (g.num_a() == 0) {
        throw Error(ErrorCode::BadParam, "rho_A family is empty when N_A = 0");
    }
    auto lambda = zero_vector(g);
    const double others = static_cast<double>((std::uint64_t{1} << g.num_a()) - 1);
    const double rest = (1 - fidelity) / others;
    const Syndrome a = g.a_mask();
    // Enumerate the nonzero submasks of the A mask.
    for (Syndrome m = a; m != 0; m = (m - 1) & a) {
        lambda[m] = rest;
    }
    lambda[0] = fidelity;
    return GDState(g, std::move(lambda));
}

double rho_A_fidelity_for_mixing(const Graph &g, double x) {
    return x + (1 - x) / std::ldexp(1.0, static_cast<int>(g.num_a()));
}

void bitflip_B_noise_in_place(const Graph &g, std::vector<double> &lambda, double p) {
    require_unit_interval(p, "bit-flip parameter p");
    if (p == 1.0) {
        return;
    }
    const PauliProbs flip{p + (1 - p) / 2, (1 - p) / 2, 0, 0};
    for (std::size_t v : g.b_vertices()) {
        apply_pauli_channel_in_place(g, lambda, v, flip);
    }
}

GDState bitflip_B_noise(const GDState &s, double p) {
    std::vector<double> lambda(s.coefficients().begin(), s.coefficients().end());
    bitflip_B_noise_in_place(s.graph(), lambda, p);
    return GDState(s.graph(), std::move(lambda));
}

GDState random_state(const Graph &g, std::mt19937_64 &rng) {
    auto lambda = zero_vector(g);
    std::exponential_distribution<double> dist(1.0);
    for (double &c : lambda) {
        c = dist(rng);
    }
    return GDState(g, std::move(lambda));
}

void write_state_csv(const GDState &s, std::ostream &out) {
    out << "index,a_part,b_part,lambda\n";
    const auto lambda = s.coefficients();
    for (Syndrome m = 0; m < lambda.size(); m++) {
        if (lambda[m] == 0) {
            continue;
        }
        auto parts = syndrome_parts(s.graph(), m);
        out << m << ',' << parts.a_part << ',' << parts.b_part << ',' << format_double(lambda[m]) << '\n';
    }
}

}  // namespace gdpurify
