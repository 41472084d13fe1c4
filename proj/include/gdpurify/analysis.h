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

#ifndef GDPURIFY_ANALYSIS_H
#define GDPURIFY_ANALYSIS_H

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdpurify/purification.h"

namespace gdpurify {

/// Input-state families searched by the threshold routines.
enum class Family {
    /// rho(q): white noise of strength q on every qubit of the target.
    RhoQ,
    /// rho(x): target mixed with the completely depolarized state.
    RhoX,
    /// rank-2^{N_A} family rho_A(F).
    RhoA,
    /// rho_A inputs under bit flips on the B qubits, purified by P1 only.
    RestrictedBitFlip,
};

std::string family_name(Family family);
Family parse_family(const std::string &text);

/// P1 only for RhoA and RestrictedBitFlip, alternating P1,P2 otherwise.
std::vector<Protocol> family_default_schedule(Family family);
/// Input state of a family at its parameter: q for rho-q, x for rho-x and
/// restricted-bitflip (mixing weight of the rank-2^{N_A} family), F for rho-a.
GDState family_input(const Graph &g, Family family, double param);
/// Gate noise the family is studied under.
GateNoise family_noise(Family family, double p);

/// Round budget used by the searches. Larger than the iterate() default because
/// the dynamics slow down near every threshold.
inline constexpr std::size_t kSearchMaxRounds = 4000;

struct SearchOptions {
    double meas_flip = 0;
    /// Empty selects family_default_schedule().
    std::vector<Protocol> schedule;
    StopCriteria stop{1e-6, 1e-12, kSearchMaxRounds};
    /// Bisection width; 0 selects the quantity default (1e-6, or 1e-4 for p_min).
    double tolerance = 0;
    std::size_t max_bisections = 53;
    /// "Reaches the fixed point" means ending within this distance of f_max.
    double match_tolerance = 1e-6;
    /// Points in the family-parameter scan used by p_min.
    std::size_t grid_points = 64;
};

struct ThresholdReport {
    std::string graph_kind;
    std::size_t n = 0;
    Family family = Family::RhoQ;
    /// fmin, fmax, qmin, pmin or bepp.
    std::string quantity;
    /// Name of the searched parameter (x, F, q, p); empty for direct evaluations.
    std::string parameter;
    /// Gate quality the quantity was evaluated at; absent for p_min.
    std::optional<double> p;
    double lo = 0;
    double value = 0;
    double hi = 0;
    double tolerance = 0;
    /// Purification steps simulated while producing the value.
    std::size_t rounds_used = 0;
};

void write_threshold_header(std::ostream &out);
void write_threshold_row(const ThresholdReport &report, std::ostream &out);

/// F -> F^2 / (F^2 + (1-F)^2 / (2^{N_A} - 1)).
double ra_map_closed_form(double fidelity, int n_a);

/// Stationary fidelity of the noisy map, reached by iterating from the pure
/// target. Throws NoFixedPoint if the iteration diverges, exhausts its budget, or
/// settles at F <= 1/2 (no entanglement left).
double f_max(const Graph &g, const GateNoise &noise, const SearchOptions &options = {});
double f_max(const Graph &g, double p, double f_m = 0);
ThresholdReport f_max_report(const Graph &g, Family family, double p, const SearchOptions &options = {});

/// Minimal input fidelity within the family (RhoX or RhoA) that still reaches f_max.
ThresholdReport f_min(const Graph &g, Family family, double p, const SearchOptions &options = {});

/// Smallest channel quality q in [1/2, 1] for which rho(q) reaches f_max.
ThresholdReport q_min(const Graph &g, double p, const SearchOptions &options = {});

/// Smallest gate quality p in [0.4, 1] for which some member of the family is
/// purifiable. Family must be RhoQ or RestrictedBitFlip.
ThresholdReport p_min(const Graph &g, Family family, const SearchOptions &options = {});

/// Fidelity change after one restricted-noise P1 round on rho_A(x).
double restricted_gain(const Graph &g, double p, double x);

struct GainRegion {
    /// 0 when the gain persists down to the smallest probed x.
    double x_lo;
    double x_hi;
};

/// Interval of mixing weights x for which one restricted-noise P1 round on the
/// closed cluster of n qubits strictly increases the fidelity x + (1-x)/2^{n/2}.
/// Throws EmptyRegion when no x gains.
GainRegion restricted_gain_region(std::size_t n, double p);

/// Bell-diagonal two-qubit state in the order Phi+, Psi-, Psi+, Phi-.
struct BellDiag {
    double a = 1;
    double b = 0;
    double c = 0;
    double d = 0;

    double fidelity() const {
        return a;
    }
};

struct DejmpsResult {
    BellDiag state;
    double p_succ;
};

/// One noisy DEJMPS round on two identical pairs. Each of the four qubits first
/// suffers white noise of strength p.
DejmpsResult dejmps_step(const BellDiag &pair, double p);

/// Fixed point of the noisy DEJMPS map reached from a perfect pair. Throws
/// NoFixedPoint when the fixed point is not entangled (A <= 1/2).
BellDiag dejmps_fixed_point(double p);

/// Fidelity of the graph state assembled from n-1 pairs at the DEJMPS fixed point,
/// each pair's error channel landing on one of the vertices 1..n-1 of a perfect
/// copy of the target.
double bepp_bound(const Graph &g, double p);

}  // namespace gdpurify

#endif
