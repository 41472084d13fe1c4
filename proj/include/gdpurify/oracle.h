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

#ifndef GDPURIFY_ORACLE_H
#define GDPURIFY_ORACLE_H

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <span>
#include <vector>

#include "gdpurify/analysis.h"
#include "gdpurify/gd_state.h"
#include "gdpurify/purification.h"

namespace gdpurify {

// Brute-force density-matrix simulation used as ground truth for the
// coefficient-level maps. Qubit v is bit v of the computational-basis index.

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;

inline constexpr std::size_t kMaxDenseQubits = 10;
inline constexpr std::size_t kMaxStateVectorQubits = 12;
inline constexpr std::size_t kMaxSingleCopyOracle = 6;
inline constexpr std::size_t kMaxTwoCopyOracle = 4;

class DenseState {
   public:
    explicit DenseState(std::size_t num_qubits);

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return dim_;
    }
    Complex &at(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &at(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    static DenseState from_pure(std::span<const Complex> amplitudes);

    Complex trace() const;
    /// max |rho - rho^dagger|.
    double hermiticity_error() const;

    void apply_1q(std::size_t qubit, const Matrix2 &u);
    void apply_cnot(std::size_t control, std::size_t target);
    /// White noise on one qubit: q rho + (1-q)/2 * 1 (x) tr_qubit(rho).
    void depolarize(std::size_t qubit, double q);
    /// sum_P p_P P rho P over {I, X, Y, Z}.
    void pauli_channel(std::size_t qubit, const PauliProbs &probs);

   private:
    std::size_t n_;
    std::size_t dim_;
    std::vector<Complex> data_;
};

DenseState tensor(const DenseState &low, const DenseState &high);

Matrix2 pauli_matrix(PauliAxis axis);
Matrix2 hadamard_matrix();

/// |Psi_0> as the normalized image of |0...0> under prod_j (1 + K_j)/2.
std::vector<Complex> graph_state_vector(const Graph &g);
/// |Psi_0> prepared as |+>^n followed by a controlled phase on every edge.
std::vector<Complex> graph_state_vector_by_phases(const Graph &g);
/// |Psi_m> = Z^m |Psi_0>.
std::vector<Complex> graph_basis_vector(const Graph &g, Syndrome m);
/// <psi| K_v |psi>.
Complex correlation_expectation(const Graph &g, std::span<const Complex> psi, std::size_t v);

std::vector<Complex> kron(std::span<const Complex> low, std::span<const Complex> high);
void apply_cnot(std::vector<Complex> &psi, std::size_t control, std::size_t target);
/// The CNOT layer of P1 (or P2) on two copies, copy 1 on the low bits.
void apply_cnot_layer(std::vector<Complex> &psi, const Graph &g, Protocol protocol);
void apply_cnot_layer(DenseState &rho, const Graph &g, Protocol protocol);

DenseState dense_graph_state(const Graph &g);
DenseState dense_from_coefficients(const Graph &g, std::span<const double> lambda);
/// Diagonal of rho in the graph basis, i.e. the stabilizer-averaged state.
std::vector<double> graph_basis_twirl(const DenseState &rho, const Graph &g);

struct DenseStepResult {
    std::vector<double> coefficients;
    double p_succ;
};

/// Full two-copy circuit: gate noise on all 2n qubits, CNOT layer, measurement of
/// copy 2 (X basis on the kept side, Z on the other), outcome flips with
/// probability f_m, post-selection on a zero syndrome, twirl of copy 1.
DenseStepResult dense_step(const DenseState &rho1, const DenseState &rho2, const Graph &g, Protocol protocol,
                           const GateNoise &noise, double f_m);
DenseStepResult dense_p1(const DenseState &rho1, const DenseState &rho2, const Graph &g, double p, double f_m);
DenseStepResult dense_p2(const DenseState &rho1, const DenseState &rho2, const Graph &g, double p, double f_m);

/// Bell-diagonal pair on qubits (0, 1).
DenseState dense_bell_diagonal(const BellDiag &pair);
BellDiag bell_coefficients(const DenseState &pair);
/// DEJMPS on two 2-qubit pairs: noise, the (I -/+ iX)/sqrt2 rotations, bilateral
/// CNOT, Z measurement of the second pair, keep on equal outcomes.
DejmpsResult dense_dejmps(const BellDiag &pair, double p);

/// |1 - |<expected|CNOT layer|Psi_mu>|Psi_nu>||, the expected pair being the
/// basis permutation the coefficient update is built on.
double cnot_permutation_error(const Graph &g, Protocol protocol, Syndrome mu, Syndrome nu);

struct OracleCheckOptions {
    std::uint64_t seed = 0;
    std::size_t states_per_case = 50;
    double tolerance = 1e-10;
    /// Random basis pairs per graph and protocol for the permutation check.
    std::size_t permutation_pairs = 20;
};

struct OracleCheckSummary {
    std::size_t comparisons = 0;
    double max_step_error = 0;
    double max_channel_error = 0;
    double max_permutation_error = 0;
    std::vector<std::string> failures;

    bool ok() const {
        return failures.empty();
    }
};

/// Dense versus coefficient-level agreement on GHZ-3, GHZ-4, path-3, path-4 and
/// ring-4: P1/P2 steps at p in {1, 0.95, 0.9} and f_m in {0, 0.02}, the
/// single-qubit channels, and the CNOT basis permutation.
OracleCheckSummary run_oracle_check(const OracleCheckOptions &options, std::ostream *log = nullptr);

}  // namespace gdpurify

#endif
