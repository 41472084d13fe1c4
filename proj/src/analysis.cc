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

#include "gdpurify/analysis.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <ostream>

#include "gdpurify/csv.h"
#include "gdpurify/errors.h"

namespace gdpurify {

std::string family_name(Family family) {
    switch (family) {
        case Family::RhoQ:
            return "rho-q";
        case Family::RhoX:
            return "rho-x";
        case Family::RhoA:
            return "rho-a";
        case Family::RestrictedBitFlip:
            return "restricted-bitflip";
    }
    return "rho-q";
}

Family parse_family(const std::string &text) {
    for (Family f : {Family::RhoQ, Family::RhoX, Family::RhoA, Family::RestrictedBitFlip}) {
        if (text == family_name(f)) {
            return f;
        }
    }
    throw Error(ErrorCode::ParseError,
                "unknown family '" + text + "' (expected rho-q, rho-x, rho-a or restricted-bitflip)");
}

std::vector<Protocol> family_default_schedule(Family family) {
    if (family == Family::RhoA || family == Family::RestrictedBitFlip) {
        return {Protocol::P1};
    }
    return default_schedule();
}

GDState family_input(const Graph &g, Family family, double param) {
    if (!(param >= 0 && param <= 1)) {
        throw Error(ErrorCode::BadParam, family_name(family) + " parameter must lie in [0, 1], got " + format_double(param));
    }
    switch (family) {
        case Family::RhoQ:
            return prepared_with_channel_noise(g, param);
        case Family::RhoX:
            return global_white(g, param);
        case Family::RhoA:
            return rho_A_family(g, param);
        case Family::RestrictedBitFlip:
            return rho_A_family(g, rho_A_fidelity_for_mixing(g, param));
    }
    throw Error(ErrorCode::BadParam, "unknown family");
}

GateNoise family_noise(Family family, double p) {
    return family == Family::RestrictedBitFlip ? GateNoise::restricted_bitflip(p) : GateNoise::depolarizing(p);
}

void write_threshold_header(std::ostream &out) {
    out << "graph_kind,N,family,p,quantity,value,tolerance,rounds_used\n";
}

void write_threshold_row(const ThresholdReport &r, std::ostream &out) {
    out << r.graph_kind << ',' << r.n << ',' << family_name(r.family) << ','
        << (r.p ? format_double(*r.p) : std::string()) << ',' << r.quantity << ',' << format_double(r.value) << ','
        << format_double(r.tolerance) << ',' << r.rounds_used << '\n';
}

double ra_map_closed_form(double fidelity, int n_a) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0) || n_a < 1 || n_a > 62) {
        throw Error(ErrorCode::BadParam, "ra_map_closed_form needs F in [0,1] and N_A >= 1");
    }
    const double others = std::ldexp(1.0, n_a) - 1;
    const double f2 = fidelity * fidelity;
    const double rest = (1 - fidelity) * (1 - fidelity) / others;
    return f2 / (f2 + rest);
}

namespace {

void require_gate_quality(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::BadParam, "gate quality p must lie in (0, 1], got " + format_double(p));
    }
}

/// Runs traces for one search and keeps the step count.
struct Searcher {
    Graph graph;
    GateNoise noise;
    std::vector<Protocol> schedule;
    SearchOptions options;
    std::size_t rounds = 0;

    Searcher(const Graph &g, Family family, const GateNoise &gate, const SearchOptions &opts)
        : graph(g),
          noise(gate),
          schedule(opts.schedule.empty() ? family_default_schedule(family) : opts.schedule),
          options(opts) {
    }

    PurificationTrace run(const GDState &s) {
        StopCriteria stop = options.stop;
        if (noise.p < 1) {
            // Noisy maps never reach 1 - epsilon from below; the test would only
            // stop high-fidelity inputs before they settle onto the fixed point.
            stop.epsilon = -1;
        }
        auto trace = iterate(s, schedule, noise, options.meas_flip, stop);
        rounds += trace.rounds();
        return trace;
    }

    /// Entangled stationary fidelity reached from the pure target, if any.
    std::optional<double> fixed_point() {
        // The target passes any epsilon test before a single step, so disable it;
        // a noiseless map then stalls at F = 1 after one period.
        StopCriteria stop = options.stop;
        stop.epsilon = -1;
        auto trace = iterate(pure_target(graph), schedule, noise, options.meas_flip, stop);
        rounds += trace.rounds();
        const double f = trace.final_fidelity();
        if (trace.verdict == Verdict::Converged || (trace.verdict == Verdict::Stalled && f > 0.5)) {
            return f;
        }
        return std::nullopt;
    }

    bool reaches(const PurificationTrace &trace, double target) const {
        return (trace.verdict == Verdict::Converged || trace.verdict == Verdict::Stalled) &&
               std::abs(trace.final_fidelity() - target) <= options.match_tolerance;
    }
};

struct Bracket {
    double lo;
    double hi;
};

/// Shrinks [lo, hi] keeping pred(lo) false and pred(hi) true.
Bracket bisect(const std::function<bool(double)> &pred, double lo, double hi, double tolerance,
               std::size_t max_iterations, const std::string &what) {
    if (pred(lo)) {
        throw Error(ErrorCode::BracketError, what + ": predicate already holds at the lower end " + format_double(lo));
    }
    if (!pred(hi)) {
        throw Error(ErrorCode::BracketError, what + ": predicate fails at the upper end " + format_double(hi));
    }
    for (std::size_t i = 0; i < max_iterations && hi - lo > tolerance; i++) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return {lo, hi};
}

std::string describe(const Graph &g) {
    return g.kind_name() + " N=" + std::to_string(g.num_vertices());
}

}  // namespace

double f_max(const Graph &g, const GateNoise &noise, const SearchOptions &options) {
    require_gate_quality(noise.p);
    const Family family = noise.kind == GateNoise::Kind::RestrictedBitFlip ? Family::RestrictedBitFlip : Family::RhoQ;
    Searcher searcher(g, family, noise, options);
    auto fixed = searcher.fixed_point();
    if (!fixed) {
        throw Error(ErrorCode::NoFixedPoint,
                    describe(g) + " p=" + format_double(noise.p) + ": no entangled fixed point reached from the target");
    }
    return *fixed;
}

double f_max(const Graph &g, double p, double f_m) {
    SearchOptions options;
    options.meas_flip = f_m;
    return f_max(g, GateNoise::depolarizing(p), options);
}

ThresholdReport f_max_report(const Graph &g, Family family, double p, const SearchOptions &options) {
    require_gate_quality(p);
    Searcher searcher(g, family, family_noise(family, p), options);
    auto fixed = searcher.fixed_point();
    if (!fixed) {
        throw Error(ErrorCode::NoFixedPoint,
                    describe(g) + " p=" + format_double(p) + ": no entangled fixed point reached from the target");
    }
    return {g.kind_name(), g.num_vertices(), family, "fmax", "", p, *fixed, *fixed, *fixed, 0.0, searcher.rounds};
}

ThresholdReport f_min(const Graph &g, Family family, double p, const SearchOptions &options) {
    require_gate_quality(p);
    if (family != Family::RhoX && family != Family::RhoA) {
        throw Error(ErrorCode::BadParam, "f_min searches the rho-x or rho-a family");
    }
    Searcher searcher(g, family, family_noise(family, p), options);
    auto fixed = searcher.fixed_point();
    if (!fixed) {
        throw Error(ErrorCode::NoFixedPoint, describe(g) + " p=" + format_double(p) + ": nothing to reach");
    }
    auto member = [&](double param) {
        return family == Family::RhoX ? global_white(g, param) : rho_A_family(g, param);
    };
    auto fidelity_of = [&](double param) {
        return family == Family::RhoX ? param + (1 - param) / static_cast<double>(g.basis_size()) : param;
    };
    const double tolerance = options.tolerance > 0 ? options.tolerance : 1e-6;
    auto bracket = bisect([&](double param) { return searcher.reaches(searcher.run(member(param)), *fixed); }, 0.0,
                          1.0, tolerance, options.max_bisections, "f_min " + describe(g));
    const double mid = 0.5 * (bracket.lo + bracket.hi);
    return {g.kind_name(),
            g.num_vertices(),
            family,
            "fmin",
            family == Family::RhoX ? "x" : "F",
            p,
            fidelity_of(bracket.lo),
            fidelity_of(mid),
            fidelity_of(bracket.hi),
            tolerance,
            searcher.rounds};
}

ThresholdReport q_min(const Graph &g, double p, const SearchOptions &options) {
    require_gate_quality(p);
    Searcher searcher(g, Family::RhoQ, GateNoise::depolarizing(p), options);
    auto fixed = searcher.fixed_point();
    if (!fixed) {
        throw Error(ErrorCode::NoFixedPoint, describe(g) + " p=" + format_double(p) + ": nothing to reach");
    }
    const double tolerance = options.tolerance > 0 ? options.tolerance : 1e-6;
    auto bracket = bisect(
        [&](double q) { return searcher.reaches(searcher.run(prepared_with_channel_noise(g, q)), *fixed); }, 0.5, 1.0,
        tolerance, options.max_bisections, "q_min " + describe(g));
    return {g.kind_name(), g.num_vertices(),  Family::RhoQ, "qmin",    "q", p, bracket.lo, 0.5 * (bracket.lo + bracket.hi),
            bracket.hi,    tolerance,         searcher.rounds};
}

namespace {

/// Gains smaller than this are indistinguishable from roundoff.
double gain_noise_floor(double fidelity) {
    return 64 * DBL_EPSILON * std::max(fidelity, 1e-300);
}

bool rho_q_purifiable(const Graph &g, double p, const SearchOptions &options, std::size_t &rounds) {
    Searcher searcher(g, Family::RhoQ, GateNoise::depolarizing(p), options);
    auto fixed = searcher.fixed_point();
    rounds += searcher.rounds;
    searcher.rounds = 0;
    if (!fixed) {
        return false;
    }
    // Only members below the fixed point can gain; grid [0, q*] with F(rho(q*)) = f_max.
    double q_top = 1.0;
    if (*fixed < 1.0) {
        double lo = 0;
        double hi = 1;
        for (int i = 0; i < 60; i++) {
            double mid = 0.5 * (lo + hi);
            (prepared_with_channel_noise(g, mid).fidelity() < *fixed ? lo : hi) = mid;
        }
        q_top = lo;
    }
    const std::size_t points = std::max<std::size_t>(options.grid_points, 2);
    bool found = false;
    for (std::size_t k = points; k-- > 0 && !found;) {
        const double q = q_top * static_cast<double>(k) / static_cast<double>(points);
        GDState input = prepared_with_channel_noise(g, q);
        if (input.fidelity() >= *fixed) {
            continue;
        }
        auto trace = searcher.run(input);
        found = searcher.reaches(trace, *fixed) && trace.final_fidelity() > input.fidelity();
    }
    rounds += searcher.rounds;
    return found;
}

double max_restricted_gain(const Graph &g, double p, std::size_t grid_points, double log2_floor, double &best_log_x) {
    auto gain_at = [&](double log_x) { return restricted_gain(g, p, std::exp2(log_x)); };
    const std::size_t points = std::max<std::size_t>(grid_points, 2);
    const double step = log2_floor / static_cast<double>(points - 1);
    double best = -1;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < points; k++) {
        double gain = gain_at(step * static_cast<double>(k));
        if (gain > best || k == 0) {
            best = gain;
            best_k = k;
        }
    }
    // Golden-section refinement of the best grid cell.
    double lo = std::max(log2_floor, step * (static_cast<double>(best_k) + 1));
    double hi = std::min(0.0, step * (static_cast<double>(best_k) - 1));
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double g1 = gain_at(x1);
    double g2 = gain_at(x2);
    for (int i = 0; i < 60; i++) {
        if (g1 > g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = gain_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = gain_at(x2);
        }
    }
    best_log_x = step * static_cast<double>(best_k);
    if (std::max(g1, g2) > best) {
        best = std::max(g1, g2);
        best_log_x = g1 > g2 ? x1 : x2;
    }
    return best;
}

bool gains(const Graph &g, double p, double log_x) {
    const double x = std::exp2(log_x);
    return restricted_gain(g, p, x) > gain_noise_floor(rho_A_fidelity_for_mixing(g, x));
}

constexpr double kRestrictedLog2Floor = -48;

}  // namespace

ThresholdReport p_min(const Graph &g, Family family, const SearchOptions &options) {
    if (family != Family::RhoQ && family != Family::RestrictedBitFlip) {
        throw Error(ErrorCode::BadParam, "p_min searches the rho-q or restricted-bitflip family");
    }
    const double tolerance = options.tolerance > 0 ? options.tolerance : 1e-4;
    std::size_t rounds = 0;
    std::function<bool(double)> pred;
    if (family == Family::RhoQ) {
        pred = [&](double p) { return rho_q_purifiable(g, p, options, rounds); };
    } else {
        pred = [&](double p) {
            double log_x = 0;
            double gain = max_restricted_gain(g, p, options.grid_points, kRestrictedLog2Floor, log_x);
            rounds += 1;
            return gain > gain_noise_floor(rho_A_fidelity_for_mixing(g, std::exp2(log_x)));
        };
    }
    auto bracket = bisect(pred, 0.4, 1.0, tolerance, options.max_bisections, "p_min " + describe(g));
    return {g.kind_name(), g.num_vertices(), family, "pmin",    "p", std::nullopt, bracket.lo,
            0.5 * (bracket.lo + bracket.hi), bracket.hi, tolerance, rounds};
}

double restricted_gain(const Graph &g, double p, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::BadParam, "mixing weight x must lie in [0, 1]");
    }
    GDState input = rho_A_family(g, rho_A_fidelity_for_mixing(g, x));
    StepResult step = purification_step(input, Protocol::P1, GateNoise::restricted_bitflip(p), 0.0);
    return step.state.fidelity() - input.fidelity();
}

GainRegion restricted_gain_region(std::size_t n, double p) {
    if (n < 4 || n % 2 != 0) {
        throw Error(ErrorCode::BadParam, "restricted gain region needs an even closed cluster with n >= 4");
    }
    require_gate_quality(p);
    const Graph g = standard_graph(GraphKind::ClosedCluster, n);
    const double floor = -3.0 * static_cast<double>(n);
    constexpr std::size_t kPoints = 257;
    const double step = floor / static_cast<double>(kPoints - 1);
    auto log_x_at = [&](std::size_t k) { return step * static_cast<double>(k); };

    // Grid index 0 is x = 1; larger indices probe smaller x.
    std::vector<bool> positive(kPoints);
    for (std::size_t k = 0; k < kPoints; k++) {
        positive[k] = gains(g, p, log_x_at(k));
    }
    auto refine = [&](double in, double out) {
        for (int i = 0; i < 80; i++) {
            double mid = 0.5 * (in + out);
            (gains(g, p, mid) ? in : out) = mid;
        }
        return in;
    };

    auto first = std::find(positive.begin(), positive.end(), true);
    if (first == positive.end()) {
        double seed = 0;
        double gain = max_restricted_gain(g, p, kPoints, floor, seed);
        if (!(gain > gain_noise_floor(rho_A_fidelity_for_mixing(g, std::exp2(seed))))) {
            throw Error(ErrorCode::EmptyRegion,
                        "no fidelity gain for ring N=" + std::to_string(n) + " at p=" + format_double(p));
        }
        // The whole region sits between two neighboring grid points.
        double above = std::min(0.0, seed - step);
        double below = std::max(floor, seed + step);
        return {std::exp2(refine(seed, below)), std::exp2(refine(seed, above))};
    }
    const std::size_t top = static_cast<std::size_t>(first - positive.begin());
    std::size_t bottom = top;
    while (bottom + 1 < kPoints && positive[bottom + 1]) {
        bottom++;
    }
    const double x_hi = top == 0 ? 1.0 : std::exp2(refine(log_x_at(top), log_x_at(top - 1)));
    const double x_lo = bottom + 1 == kPoints ? 0.0 : std::exp2(refine(log_x_at(bottom), log_x_at(bottom + 1)));
    return {x_lo, x_hi};
}

DejmpsResult dejmps_step(const BellDiag &pair, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::BadParam, "gate quality p must lie in [0, 1]");
    }
    const double sum = pair.a + pair.b + pair.c + pair.d;
    if (pair.a < 0 || pair.b < 0 || pair.c < 0 || pair.d < 0 || std::abs(sum - 1) > 1e-9) {
        throw Error(ErrorCode::BadParam, "Bell-diagonal coefficients must be nonnegative and sum to 1");
    }
    // Both qubits of a pair depolarized: c -> p^2 c + (1 - p^2)/4.
    const double keep = p * p;
    const double spread = (1 - keep) / 4;
    const double a = keep * pair.a + spread;
    const double b = keep * pair.b + spread;
    const double c = keep * pair.c + spread;
    const double d = keep * pair.d + spread;
    const double norm = (a + b) * (a + b) + (c + d) * (c + d);
    return {{(a * a + b * b) / norm, 2 * c * d / norm, (c * c + d * d) / norm, 2 * a * b / norm}, norm};
}

BellDiag dejmps_fixed_point(double p) {
    require_gate_quality(p);
    BellDiag cur;
    for (int round = 0; round < 1000000; round++) {
        BellDiag next = dejmps_step(cur, p).state;
        double change = std::max({std::abs(next.a - cur.a), std::abs(next.b - cur.b), std::abs(next.c - cur.c),
                                  std::abs(next.d - cur.d)});
        cur = next;
        if (change <= 1e-16) {
            break;
        }
    }
    if (!(cur.a > 0.5)) {
        throw Error(ErrorCode::NoFixedPoint, "DEJMPS at p=" + format_double(p) + " has no entangled fixed point");
    }
    return cur;
}

double bepp_bound(const Graph &g, double p) {
    const BellDiag pair = dejmps_fixed_point(p);
    // Phi+ <-> I, Psi+ <-> X, Psi- <-> Y, Phi- <-> Z on the receiving qubit.
    const PauliProbs channel{pair.a, pair.c, pair.b, pair.d};
    std::vector<double> lambda(g.basis_size(), 0.0);
    lambda[0] = 1;
    for (std::size_t v = 1; v < g.num_vertices(); v++) {
        apply_pauli_channel_in_place(g, lambda, v, channel);
    }
    return GDState(g, std::move(lambda)).fidelity();
}

}  // namespace gdpurify
