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

#include "gdpurify/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "gdpurify/csv.h"
#include "gdpurify/errors.h"

namespace gdpurify {

namespace {

void require_qubits(std::size_t n, std::size_t limit, const char *what) {
    if (n > limit) {
        throw Error(ErrorCode::TooLarge,
                    std::string(what) + " supports at most " + std::to_string(limit) + " qubits, got " + std::to_string(n));
    }
}

constexpr Complex kI{0, 1};

}  // namespace

DenseState::DenseState(std::size_t num_qubits) : n_(num_qubits), dim_(std::size_t{1} << num_qubits) {
    require_qubits(num_qubits, kMaxDenseQubits, "DenseState");
    data_.assign(dim_ * dim_, Complex{0, 0});
}

DenseState DenseState::from_pure(std::span<const Complex> amplitudes) {
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(amplitudes.size()));
    DenseState rho(n);
    for (std::size_t i = 0; i < rho.dim_; i++) {
        for (std::size_t j = 0; j < rho.dim_; j++) {
            rho.at(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
        }
    }
    return rho;
}

Complex DenseState::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        t += at(i, i);
    }
    return t;
}

double DenseState::hermiticity_error() const {
    double worst = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        }
    }
    return worst;
}

void DenseState::apply_1q(std::size_t qubit, const Matrix2 &u) {
    const std::size_t bit = std::size_t{1} << qubit;
    // rows: rho -> U rho
    for (std::size_t i = 0; i < dim_; i++) {
        if (i & bit) {
            continue;
        }
        for (std::size_t c = 0; c < dim_; c++) {
            Complex a = at(i, c);
            Complex b = at(i | bit, c);
            at(i, c) = u[0] * a + u[1] * b;
            at(i | bit, c) = u[2] * a + u[3] * b;
        }
    }
    // columns: rho -> rho U^dagger
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t j = 0; j < dim_; j++) {
            if (j & bit) {
                continue;
            }
            Complex a = at(r, j);
            Complex b = at(r, j | bit);
            at(r, j) = a * std::conj(u[0]) + b * std::conj(u[1]);
            at(r, j | bit) = a * std::conj(u[2]) + b * std::conj(u[3]);
        }
    }
}

void DenseState::apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    auto perm = [&](std::size_t i) { return (i & cbit) ? i ^ tbit : i; };
    std::vector<Complex> out(data_.size());
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            out[perm(i) * dim_ + perm(j)] = at(i, j);
        }
    }
    data_ = std::move(out);
}

void DenseState::depolarize(std::size_t qubit, double q) {
    if (q == 1.0) {
        return;
    }
    const std::size_t bit = std::size_t{1} << qubit;
    std::vector<Complex> out(data_.size());
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            Complex v = q * at(i, j);
            if (((i ^ j) & bit) == 0) {
                // (1 (x) tr_qubit rho)[i, j] sums rho over both values of the traced bit.
                const std::size_t i0 = i & ~bit;
                const std::size_t j0 = j & ~bit;
                v += (1 - q) / 2 * (at(i0, j0) + at(i0 | bit, j0 | bit));
            }
            out[i * dim_ + j] = v;
        }
    }
    data_ = std::move(out);
}

void DenseState::pauli_channel(std::size_t qubit, const PauliProbs &probs) {
    DenseState acc(n_);
    const double weights[] = {probs.i, probs.x, probs.y, probs.z};
    for (int k = 0; k < 4; k++) {
        if (weights[k] == 0) {
            continue;
        }
        DenseState term = *this;
        if (k > 0) {
            term.apply_1q(qubit, pauli_matrix(static_cast<PauliAxis>(k - 1)));
        }
        for (std::size_t e = 0; e < data_.size(); e++) {
            acc.data_[e] += weights[k] * term.data_[e];
        }
    }
    *this = std::move(acc);
}

DenseState tensor(const DenseState &low, const DenseState &high) {
    DenseState out(low.num_qubits() + high.num_qubits());
    const std::size_t shift = low.num_qubits();
    for (std::size_t i2 = 0; i2 < high.dim(); i2++) {
        for (std::size_t j2 = 0; j2 < high.dim(); j2++) {
            const Complex h = high.at(i2, j2);
            if (h == Complex{0, 0}) {
                continue;
            }
            for (std::size_t i1 = 0; i1 < low.dim(); i1++) {
                for (std::size_t j1 = 0; j1 < low.dim(); j1++) {
                    out.at(i1 | (i2 << shift), j1 | (j2 << shift)) = low.at(i1, j1) * h;
                }
            }
        }
    }
    return out;
}

Matrix2 pauli_matrix(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X:
            return {0, 1, 1, 0};
        case PauliAxis::Y:
            return {0, -kI, kI, 0};
        case PauliAxis::Z:
            return {1, 0, 0, -1};
    }
    return {1, 0, 0, 1};
}

Matrix2 hadamard_matrix() {
    const double s = 1 / std::sqrt(2.0);
    return {s, s, s, -s};
}

namespace {

/// K_v psi: X on v, Z on every neighbor.
std::vector<Complex> apply_correlation(const Graph &g, std::span<const Complex> psi, std::size_t v) {
    const std::size_t xbit = std::size_t{1} << v;
    const Syndrome zmask = g.neighbor_mask(v);
    std::vector<Complex> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); i++) {
        // Z's act after X in K_v = X_v prod Z_k; they commute since v is not its own neighbor.
        const double sign = std::popcount(i & zmask) % 2 ? -1.0 : 1.0;
        out[i ^ xbit] = sign * psi[i];
    }
    return out;
}

}  // namespace

std::vector<Complex> graph_state_vector(const Graph &g) {
    require_qubits(g.num_vertices(), kMaxStateVectorQubits, "graph_state_vector");
    std::vector<Complex> psi(g.basis_size(), Complex{0, 0});
    psi[0] = 1;
    for (std::size_t v = 0; v < g.num_vertices(); v++) {
        auto k = apply_correlation(g, psi, v);
        for (std::size_t i = 0; i < psi.size(); i++) {
            psi[i] = 0.5 * (psi[i] + k[i]);
        }
    }
    double norm = 0;
    for (const Complex &a : psi) {
        norm += std::norm(a);
    }
    for (Complex &a : psi) {
        a /= std::sqrt(norm);
    }
    return psi;
}

std::vector<Complex> graph_state_vector_by_phases(const Graph &g) {
    require_qubits(g.num_vertices(), kMaxStateVectorQubits, "graph_state_vector_by_phases");
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(g.num_vertices()));
    std::vector<Complex> psi(g.basis_size(), Complex{amp, 0});
    for (const Edge &e : g.edges()) {
        const std::size_t both = (std::size_t{1} << e.u) | (std::size_t{1} << e.v);
        for (std::size_t i = 0; i < psi.size(); i++) {
            if ((i & both) == both) {
                psi[i] = -psi[i];
            }
        }
    }
    return psi;
}

std::vector<Complex> graph_basis_vector(const Graph &g, Syndrome m) {
    auto psi = graph_state_vector(g);
    for (std::size_t i = 0; i < psi.size(); i++) {
        if (std::popcount(i & m) % 2) {
            psi[i] = -psi[i];
        }
    }
    return psi;
}

Complex correlation_expectation(const Graph &g, std::span<const Complex> psi, std::size_t v) {
    auto k = apply_correlation(g, psi, v);
    Complex total = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        total += std::conj(psi[i]) * k[i];
    }
    return total;
}

std::vector<Complex> kron(std::span<const Complex> low, std::span<const Complex> high) {
    std::vector<Complex> out(low.size() * high.size());
    for (std::size_t i2 = 0; i2 < high.size(); i2++) {
        for (std::size_t i1 = 0; i1 < low.size(); i1++) {
            out[i1 + i2 * low.size()] = low[i1] * high[i2];
        }
    }
    return out;
}

void apply_cnot(std::vector<Complex> &psi, std::size_t control, std::size_t target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < psi.size(); i++) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(psi[i], psi[i | tbit]);
        }
    }
}

namespace {

/// Vertices whose copy-1 qubit is the CNOT source: B for P1, A for P2.
/// With the textbook CNOT this is the orientation under which copy 2 picks up
/// the kept-side syndrome sum, which is what the measurement reads.
bool copy1_is_source(const Graph &g, Protocol protocol, std::size_t v) {
    return (g.color(v) == Color::B) == (protocol == Protocol::P1);
}

}  // namespace

void apply_cnot_layer(std::vector<Complex> &psi, const Graph &g, Protocol protocol) {
    const std::size_t n = g.num_vertices();
    for (std::size_t v = 0; v < n; v++) {
        if (copy1_is_source(g, protocol, v)) {
            apply_cnot(psi, v, v + n);
        } else {
            apply_cnot(psi, v + n, v);
        }
    }
}

void apply_cnot_layer(DenseState &rho, const Graph &g, Protocol protocol) {
    const std::size_t n = g.num_vertices();
    for (std::size_t v = 0; v < n; v++) {
        if (copy1_is_source(g, protocol, v)) {
            rho.apply_cnot(v, v + n);
        } else {
            rho.apply_cnot(v + n, v);
        }
    }
}

DenseState dense_graph_state(const Graph &g) {
    require_qubits(g.num_vertices(), kMaxSingleCopyOracle, "dense_graph_state");
    return DenseState::from_pure(graph_state_vector(g));
}

DenseState dense_from_coefficients(const Graph &g, std::span<const double> lambda) {
    require_qubits(g.num_vertices(), kMaxSingleCopyOracle, "dense_from_coefficients");
    DenseState rho(g.num_vertices());
    for (Syndrome m = 0; m < lambda.size(); m++) {
        if (lambda[m] == 0) {
            continue;
        }
        auto psi = graph_basis_vector(g, m);
        for (std::size_t i = 0; i < rho.dim(); i++) {
            for (std::size_t j = 0; j < rho.dim(); j++) {
                rho.at(i, j) += lambda[m] * psi[i] * std::conj(psi[j]);
            }
        }
    }
    return rho;
}

namespace {

std::vector<double> twirl_with_basis(const DenseState &rho, const std::vector<std::vector<Complex>> &basis) {
    std::vector<double> out(basis.size());
    for (std::size_t m = 0; m < basis.size(); m++) {
        const auto &psi = basis[m];
        Complex total = 0;
        for (std::size_t i = 0; i < rho.dim(); i++) {
            if (psi[i] == Complex{0, 0}) {
                continue;
            }
            Complex row = 0;
            for (std::size_t j = 0; j < rho.dim(); j++) {
                row += rho.at(i, j) * psi[j];
            }
            total += std::conj(psi[i]) * row;
        }
        out[m] = total.real();
    }
    return out;
}

std::vector<std::vector<Complex>> graph_basis(const Graph &g) {
    std::vector<std::vector<Complex>> basis;
    for (Syndrome m = 0; m < g.basis_size(); m++) {
        basis.push_back(graph_basis_vector(g, m));
    }
    return basis;
}

}  // namespace

std::vector<double> graph_basis_twirl(const DenseState &rho, const Graph &g) {
    require_qubits(g.num_vertices(), kMaxSingleCopyOracle, "graph_basis_twirl");
    if (rho.num_qubits() != g.num_vertices()) {
        throw Error(ErrorCode::InvalidParam, "density matrix and graph disagree on the qubit count");
    }
    return twirl_with_basis(rho, graph_basis(g));
}

DenseStepResult dense_step(const DenseState &rho1, const DenseState &rho2, const Graph &g, Protocol protocol,
                           const GateNoise &noise, double f_m) {
    const std::size_t n = g.num_vertices();
    require_qubits(n, kMaxTwoCopyOracle, "dense_step");
    if (rho1.num_qubits() != n || rho2.num_qubits() != n) {
        throw Error(ErrorCode::InvalidParam, "copies must match the graph size");
    }
    DenseState rho = tensor(rho1, rho2);
    for (std::size_t v = 0; v < n; v++) {
        for (std::size_t qubit : {v, v + n}) {
            if (noise.kind == GateNoise::Kind::Depolarizing) {
                rho.depolarize(qubit, noise.p);
            } else if (g.color(v) == Color::B) {
                rho.pauli_channel(qubit, {noise.p + (1 - noise.p) / 2, (1 - noise.p) / 2, 0, 0});
            }
        }
    }
    apply_cnot_layer(rho, g, protocol);
    // Kept-side qubits of copy 2 are read out in the X basis.
    const Color kept = protocol == Protocol::P1 ? Color::A : Color::B;
    for (std::size_t v = 0; v < n; v++) {
        if (g.color(v) == kept) {
            rho.apply_1q(v + n, hadamard_matrix());
        }
    }

    auto accepted = [&](std::size_t outcome) {
        for (std::size_t v = 0; v < n; v++) {
            if (g.color(v) != kept) {
                continue;
            }
            int parity = static_cast<int>((outcome >> v) & 1) + std::popcount(outcome & g.neighbor_mask(v));
            if (parity % 2) {
                return false;
            }
        }
        return true;
    };

    const std::size_t dim1 = std::size_t{1} << n;
    const auto basis = graph_basis(g);
    std::vector<double> total(dim1, 0.0);
    for (std::size_t outcome = 0; outcome < dim1; outcome++) {
        double accept_weight = 0;
        for (std::size_t flips = 0; flips < dim1; flips++) {
            const int k = std::popcount(flips);
            const double w = std::pow(f_m, k) * std::pow(1 - f_m, static_cast<double>(n) - k);
            if (w != 0 && accepted(outcome ^ flips)) {
                accept_weight += w;
            }
        }
        if (accept_weight == 0) {
            continue;
        }
        DenseState block(n);
        for (std::size_t i = 0; i < dim1; i++) {
            for (std::size_t j = 0; j < dim1; j++) {
                block.at(i, j) = rho.at(i | (outcome << n), j | (outcome << n));
            }
        }
        auto diag = twirl_with_basis(block, basis);
        for (std::size_t m = 0; m < dim1; m++) {
            total[m] += accept_weight * diag[m];
        }
    }
    double p_succ = 0;
    for (double c : total) {
        p_succ += c;
    }
    for (double &c : total) {
        c /= p_succ;
    }
    return {std::move(total), p_succ};
}

DenseStepResult dense_p1(const DenseState &rho1, const DenseState &rho2, const Graph &g, double p, double f_m) {
    return dense_step(rho1, rho2, g, Protocol::P1, GateNoise::depolarizing(p), f_m);
}

DenseStepResult dense_p2(const DenseState &rho1, const DenseState &rho2, const Graph &g, double p, double f_m) {
    return dense_step(rho1, rho2, g, Protocol::P2, GateNoise::depolarizing(p), f_m);
}

namespace {

/// Phi+, Psi-, Psi+, Phi- on qubits (0, 1).
std::array<std::vector<Complex>, 4> bell_vectors() {
    const double s = 1 / std::sqrt(2.0);
    std::array<std::vector<Complex>, 4> out;
    for (auto &v : out) {
        v.assign(4, Complex{0, 0});
    }
    // index = bit0 (qubit 0) + 2 * bit1 (qubit 1)
    out[0][0] = s;
    out[0][3] = s;
    out[1][2] = s;
    out[1][1] = -s;
    out[2][2] = s;
    out[2][1] = s;
    out[3][0] = s;
    out[3][3] = -s;
    return out;
}

}  // namespace

DenseState dense_bell_diagonal(const BellDiag &pair) {
    const auto bell = bell_vectors();
    const double weights[] = {pair.a, pair.b, pair.c, pair.d};
    DenseState rho(2);
    for (int k = 0; k < 4; k++) {
        for (std::size_t i = 0; i < 4; i++) {
            for (std::size_t j = 0; j < 4; j++) {
                rho.at(i, j) += weights[k] * bell[k][i] * std::conj(bell[k][j]);
            }
        }
    }
    return rho;
}

BellDiag bell_coefficients(const DenseState &pair) {
    const auto bell = bell_vectors();
    double c[4];
    for (int k = 0; k < 4; k++) {
        Complex total = 0;
        for (std::size_t i = 0; i < 4; i++) {
            for (std::size_t j = 0; j < 4; j++) {
                total += std::conj(bell[k][i]) * pair.at(i, j) * bell[k][j];
            }
        }
        c[k] = total.real();
    }
    return {c[0], c[1], c[2], c[3]};
}

DejmpsResult dense_dejmps(const BellDiag &pair, double p) {
    // Qubits: pair 1 = (0 Alice, 1 Bob), pair 2 = (2 Alice, 3 Bob).
    DenseState single = dense_bell_diagonal(pair);
    DenseState rho = tensor(single, single);
    for (std::size_t q = 0; q < 4; q++) {
        rho.depolarize(q, p);
    }
    const double s = 1 / std::sqrt(2.0);
    const Matrix2 alice{s, -kI * s, -kI * s, s};
    const Matrix2 bob{s, kI * s, kI * s, s};
    rho.apply_1q(0, alice);
    rho.apply_1q(2, alice);
    rho.apply_1q(1, bob);
    rho.apply_1q(3, bob);
    rho.apply_cnot(0, 2);
    rho.apply_cnot(1, 3);
    DenseState kept(2);
    for (std::size_t outcome : {std::size_t{0}, std::size_t{3}}) {
        for (std::size_t i = 0; i < 4; i++) {
            for (std::size_t j = 0; j < 4; j++) {
                kept.at(i, j) += rho.at(i | (outcome << 2), j | (outcome << 2));
            }
        }
    }
    const double p_succ = kept.trace().real();
    BellDiag out = bell_coefficients(kept);
    out.a /= p_succ;
    out.b /= p_succ;
    out.c /= p_succ;
    out.d /= p_succ;
    return {out, p_succ};
}

double cnot_permutation_error(const Graph &g, Protocol protocol, Syndrome mu, Syndrome nu) {
    const std::size_t n = g.num_vertices();
    require_qubits(2 * n, kMaxStateVectorQubits, "cnot_permutation_error");
    auto psi = kron(graph_basis_vector(g, mu), graph_basis_vector(g, nu));
    apply_cnot_layer(psi, g, protocol);
    const Syndrome keep = protocol == Protocol::P1 ? g.a_mask() : g.b_mask();
    const Syndrome conv = keep ^ g.full_mask();
    // Copy 1 keeps its kept-side bits and absorbs copy 2 on the other side; copy 2 the reverse.
    const Syndrome mu_out = (mu & keep) | ((mu ^ nu) & conv);
    const Syndrome nu_out = ((mu ^ nu) & keep) | (nu & conv);
    auto expected = kron(graph_basis_vector(g, mu_out), graph_basis_vector(g, nu_out));
    Complex overlap = 0;
    for (std::size_t i = 0; i < psi.size(); i++) {
        overlap += std::conj(expected[i]) * psi[i];
    }
    return std::abs(1 - std::abs(overlap));
}

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

struct CheckContext {
    const OracleCheckOptions &options;
    OracleCheckSummary &summary;
    std::ostream *log;

    void record(double error, double OracleCheckSummary::*slot, const std::string &what) {
        summary.comparisons++;
        summary.*slot = std::max(summary.*slot, error);
        if (!(error <= options.tolerance)) {
            summary.failures.push_back(what + ": error " + format_double(error));
            if (log) {
                *log << "MISMATCH " << what << " error=" << format_double(error) << '\n';
            }
        }
    }
};

void check_steps(CheckContext &ctx, const Graph &g, const std::string &name, std::mt19937_64 &rng) {
    for (std::size_t k = 0; k < ctx.options.states_per_case; k++) {
        GDState s = random_state(g, rng);
        DenseState rho = dense_from_coefficients(g, s.coefficients());
        for (double p : {1.0, 0.95, 0.9}) {
            for (double f_m : {0.0, 0.02}) {
                for (Protocol protocol : {Protocol::P1, Protocol::P2}) {
                    auto dense = dense_step(rho, rho, g, protocol, GateNoise::depolarizing(p), f_m);
                    auto fast = purification_step(s, protocol, GateNoise::depolarizing(p), f_m, KernelMode::Fast);
                    double err = std::max(max_abs_diff(dense.coefficients, fast.state.coefficients()),
                                          std::abs(dense.p_succ - fast.p_succ));
                    ctx.record(err, &OracleCheckSummary::max_step_error,
                               name + " state " + std::to_string(k) + " " + protocol_name(protocol) +
                                   " p=" + format_double(p) + " f_m=" + format_double(f_m));
                }
            }
        }
    }
}

void check_channels(CheckContext &ctx, const Graph &g, const std::string &name, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t count = std::max<std::size_t>(1, ctx.options.states_per_case / 5);
    for (std::size_t k = 0; k < count; k++) {
        GDState s = random_state(g, rng);
        const DenseState rho = dense_from_coefficients(g, s.coefficients());
        const std::string tag = name + " state " + std::to_string(k);
        for (std::size_t v = 0; v < g.num_vertices(); v++) {
            const double q = unit(rng);
            DenseState d = rho;
            d.depolarize(v, q);
            ctx.record(max_abs_diff(graph_basis_twirl(d, g), depolarizing_channel(s, v, q).coefficients()),
                       &OracleCheckSummary::max_channel_error,
                       tag + " depolarize v=" + std::to_string(v) + " q=" + format_double(q));

            double w[4];
            double total = 0;
            for (double &x : w) {
                x = unit(rng);
                total += x;
            }
            const PauliProbs probs{w[0] / total, w[1] / total, w[2] / total, 1 - (w[0] + w[1] + w[2]) / total};
            DenseState e = rho;
            e.pauli_channel(v, probs);
            ctx.record(max_abs_diff(graph_basis_twirl(e, g), apply_pauli_channel(s, v, probs).coefficients()),
                       &OracleCheckSummary::max_channel_error, tag + " pauli v=" + std::to_string(v));
        }
        const double p = unit(rng);
        DenseState b = rho;
        for (std::size_t v : g.b_vertices()) {
            b.pauli_channel(v, {p + (1 - p) / 2, (1 - p) / 2, 0, 0});
        }
        ctx.record(max_abs_diff(graph_basis_twirl(b, g), bitflip_B_noise(s, p).coefficients()),
                   &OracleCheckSummary::max_channel_error, tag + " bitflip-B p=" + format_double(p));
    }
}

void check_permutation(CheckContext &ctx, const Graph &g, const std::string &name, std::mt19937_64 &rng) {
    std::uniform_int_distribution<Syndrome> pick(0, g.basis_size() - 1);
    for (Protocol protocol : {Protocol::P1, Protocol::P2}) {
        for (std::size_t k = 0; k < ctx.options.permutation_pairs; k++) {
            const Syndrome mu = pick(rng);
            const Syndrome nu = pick(rng);
            ctx.record(cnot_permutation_error(g, protocol, mu, nu), &OracleCheckSummary::max_permutation_error,
                       name + " " + protocol_name(protocol) + " permutation mu=" + std::to_string(mu) +
                           " nu=" + std::to_string(nu));
        }
    }
}

}  // namespace

OracleCheckSummary run_oracle_check(const OracleCheckOptions &options, std::ostream *log) {
    OracleCheckSummary summary;
    CheckContext ctx{options, summary, log};
    std::mt19937_64 rng(options.seed);
    const std::pair<GraphKind, std::size_t> cases[] = {
        {GraphKind::GHZ, 3},
        {GraphKind::GHZ, 4},
        {GraphKind::LinearCluster, 3},
        {GraphKind::LinearCluster, 4},
        {GraphKind::ClosedCluster, 4},
    };
    for (const auto &[kind, n] : cases) {
        const Graph g = standard_graph(kind, n);
        const std::string name = graph_kind_name(kind) + "-" + std::to_string(n);
        const std::size_t before = summary.failures.size();
        check_steps(ctx, g, name, rng);
        check_channels(ctx, g, name, rng);
        check_permutation(ctx, g, name, rng);
        if (log) {
            *log << name << ": " << (summary.failures.size() == before ? "ok" : "MISMATCH") << '\n';
        }
    }
    return summary;
}

}  // namespace gdpurify
