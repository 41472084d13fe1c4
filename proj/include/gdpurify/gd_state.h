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

#ifndef GDPURIFY_GD_STATE_H
#define GDPURIFY_GD_STATE_H

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "gdpurify/graph.h"

namespace gdpurify {

/// Largest vertex count for which a dense 2^n coefficient vector is allocated.
inline constexpr std::size_t kMaxStateVertices = 28;

/// Roundoff slack below zero tolerated (and clamped) when normalizing.
inline constexpr double kNegativeSlack = 1e-15;

/// Mixed state diagonal in the graph-state basis of `graph()`:
/// rho = sum_m lambda[m] |Psi_m><Psi_m|. The target |Psi_0> has fidelity lambda[0].
class GDState {
   public:
    /// Takes ownership of `lambda`, which must have 2^n entries. Entries below
    /// -kNegativeSlack raise NegativeCoefficient; the rest are clamped and the
    /// vector is normalized to unit trace.
    GDState(Graph graph, std::vector<double> lambda);

    const Graph &graph() const {
        return graph_;
    }
    std::span<const double> coefficients() const {
        return lambda_;
    }
    double operator[](Syndrome m) const {
        return lambda_[m];
    }
    double fidelity() const {
        return lambda_[0];
    }
    std::size_t size() const {
        return lambda_.size();
    }

    /// Moves the coefficient vector out, leaving the state empty.
    std::vector<double> release() && {
        return std::move(lambda_);
    }

   private:
    Graph graph_;
    std::vector<double> lambda_;
};

/// Clamps roundoff negatives and rescales to unit sum. Returns the pre-normalization sum.
double normalize_coefficients(std::vector<double> &lambda);

enum class PauliAxis { X, Y, Z };

struct PauliProbs {
    double i = 1;
    double x = 0;
    double y = 0;
    double z = 0;
};

/// Syndrome bits toggled by applying the Pauli on qubit v: Z flips mu_v, X flips
/// mu_u for every neighbor u, Y flips both.
Syndrome pauli_flip_mask(const Graph &g, std::size_t v, PauliAxis axis);

GDState pure_target(const Graph &g);

GDState apply_pauli_channel(const GDState &s, std::size_t v, const PauliProbs &probs);
void apply_pauli_channel_in_place(const Graph &g, std::vector<double> &lambda, std::size_t v,
                                  const PauliProbs &probs);

/// Single-qubit white noise q*rho + (1-q)/2 * 1 (x) tr_v(rho).
GDState depolarizing_channel(const GDState &s, std::size_t v, double q);
/// depolarizing_channel on every vertex.
GDState depolarize_all(const GDState &s, double q);
void depolarize_all_in_place(const Graph &g, std::vector<double> &lambda, double q);

/// rho(q): every qubit of the target sent through the depolarizing channel.
GDState prepared_with_channel_noise(const Graph &g, double q);
/// rho(x) = x |Psi_0><Psi_0| + (1-x)/2^n * 1.
GDState global_white(const Graph &g, double x);
/// Rank-2^{N_A} family: F on the target, (1-F)/(2^{N_A}-1) on every other state
/// with b_part = 0.
GDState rho_A_family(const Graph &g, double fidelity);
/// Fidelity of the rho_A member that mixes the target with weight x against the
/// uniform state on the A-sector: x + (1-x)/2^{N_A}.
double rho_A_fidelity_for_mixing(const Graph &g, double x);

/// Bit-flip errors p*rho + (1-p)/2 (rho + X rho X) on every B vertex.
GDState bitflip_B_noise(const GDState &s, double p);
void bitflip_B_noise_in_place(const Graph &g, std::vector<double> &lambda, double p);

/// Random full-rank state with exponentially distributed weights.
GDState random_state(const Graph &g, std::mt19937_64 &rng);

/// CSV with columns index,a_part,b_part,lambda; one row per nonzero coefficient.
void write_state_csv(const GDState &s, std::ostream &out);

}  // namespace gdpurify

#endif
