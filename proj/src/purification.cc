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

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <ostream>

#include "gdpurify/csv.h"
#include "gdpurify/errors.h"
#include "gdpurify/walsh.h"

namespace gdpurify {

std::string protocol_name(Protocol protocol) {
    return protocol == Protocol::P1 ? "P1" : "P2";
}

std::vector<Protocol> parse_schedule(const std::string &text) {
    std::vector<Protocol> out;
    std::string token;
    auto flush = [&]() {
        std::string t;
        for (char c : token) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            }
        }
        token.clear();
        if (t == "P1") {
            out.push_back(Protocol::P1);
        } else if (t == "P2") {
            out.push_back(Protocol::P2);
        } else {
            throw Error(ErrorCode::ParseError, "unknown protocol '" + t + "' in schedule '" + text + "'");
        }
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    return out;
}

std::string schedule_to_string(std::span<const Protocol> schedule) {
    std::string out;
    for (std::size_t i = 0; i < schedule.size(); i++) {
        if (i) {
            out += ',';
        }
        out += protocol_name(schedule[i]);
    }
    return out;
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Converged:
            return "CONVERGED";
        case Verdict::Stalled:
            return "STALLED";
        case Verdict::Diverged:
            return "DIVERGED";
        case Verdict::MaxRounds:
            return "MAX_ROUNDS";
    }
    return "MAX_ROUNDS";
}

std::vector<Protocol> default_schedule() {
    return {Protocol::P1, Protocol::P2};
}

namespace {

struct Sides {
    Syndrome keep;
    Syndrome conv;
};

Sides sides_for(const Graph &g, Protocol protocol) {
    return protocol == Protocol::P1 ? Sides{g.a_mask(), g.b_mask()} : Sides{g.b_mask(), g.a_mask()};
}

}  // namespace

std::vector<double> measurement_flip_weights(const Graph &g, Protocol protocol, double f_m) {
    if (!(f_m >= 0.0 && f_m <= 0.5)) {
        throw Error(ErrorCode::BadParam, "measurement flip probability must lie in [0, 1/2]");
    }
    std::vector<double> w(g.basis_size(), 0.0);
    w[0] = 1;
    if (f_m == 0) {
        return w;
    }
    const Sides sides = sides_for(g, protocol);
    std::vector<double> next(w.size());
    for (std::size_t v = 0; v < g.num_vertices(); v++) {
        // A flipped outcome on a kept-side qubit toggles its own check; on the other
        // side it toggles the checks of all its neighbors.
        const Syndrome bit = Syndrome{1} << v;
        const Syndrome flip = (sides.keep & bit) ? bit : g.neighbor_mask(v);
        for (Syndrome a = 0; a < w.size(); a++) {
            next[a] = (1 - f_m) * w[a] + f_m * w[a ^ flip];
        }
        std::swap(w, next);
    }
    return w;
}

namespace {

std::vector<double> syndrome_product_naive(std::span<const double> lambda, Sides sides,
                                           std::span<const double> weights) {
    std::vector<Syndrome> shifts{0};
    std::vector<double> shift_weights{1.0};
    if (!weights.empty()) {
        shifts.clear();
        shift_weights.clear();
        for (Syndrome a = 0; a < weights.size(); a++) {
            if (weights[a] != 0) {
                shifts.push_back(a);
                shift_weights.push_back(weights[a]);
            }
        }
    }
    std::vector<double> out(lambda.size(), 0.0);
    for (Syndrome gamma = 0; gamma < lambda.size(); gamma++) {
        const Syndrome gk = gamma & sides.keep;
        const Syndrome gc = gamma & sides.conv;
        double total = 0;
        // All submasks mu of the conv side, including 0.
        Syndrome mu = sides.conv;
        while (true) {
            const Syndrome nu = mu ^ gc;
            const double left = lambda[gk | mu];
            for (std::size_t k = 0; k < shifts.size(); k++) {
                total += shift_weights[k] * left * lambda[(gk ^ shifts[k]) | nu];
            }
            if (mu == 0) {
                break;
            }
            mu = (mu - 1) & sides.conv;
        }
        out[gamma] = total;
    }
    return out;
}

std::vector<double> syndrome_product_fast(std::span<const double> lambda, Sides sides,
                                          std::span<const double> weights) {
    std::vector<double> spectrum(lambda.begin(), lambda.end());
    walsh_transform_bits(spectrum, sides.conv);
    std::vector<double> out(spectrum.size());
    if (weights.empty()) {
        for (std::size_t i = 0; i < spectrum.size(); i++) {
            out[i] = spectrum[i] * spectrum[i];
        }
    } else {
        // Second copy shifted on the kept side by the misread pattern: an XOR
        // convolution over the kept bits, done in their Walsh domain.
        std::vector<double> w(weights.begin(), weights.end());
        walsh_transform_bits(w, sides.keep);
        std::vector<double> shifted = spectrum;
        walsh_transform_bits(shifted, sides.keep);
        const double keep_scale = std::ldexp(1.0, -std::popcount(sides.keep));
        for (std::size_t i = 0; i < shifted.size(); i++) {
            shifted[i] *= w[i & sides.keep] * keep_scale;
        }
        walsh_transform_bits(shifted, sides.keep);
        for (std::size_t i = 0; i < spectrum.size(); i++) {
            out[i] = spectrum[i] * shifted[i];
        }
    }
    walsh_transform_bits(out, sides.conv);
    const double conv_scale = std::ldexp(1.0, -std::popcount(sides.conv));
    for (double &c : out) {
        c *= conv_scale;
    }
    return out;
}

}  // namespace

std::vector<double> syndrome_product(std::span<const double> lambda, const Graph &g, Protocol protocol,
                                     std::span<const double> weights, KernelMode mode) {
    if (lambda.size() != g.basis_size()) {
        throw Error(ErrorCode::InvalidParam, "coefficient vector length does not match 2^n");
    }
    if (!weights.empty() && weights.size() != lambda.size()) {
        throw Error(ErrorCode::InvalidParam, "flip weight vector length does not match 2^n");
    }
    const Sides sides = sides_for(g, protocol);
    return mode == KernelMode::Fast ? syndrome_product_fast(lambda, sides, weights)
                                    : syndrome_product_naive(lambda, sides, weights);
}

std::vector<double> xor_square_over_B(std::span<const double> lambda, const Graph &g, KernelMode mode) {
    return syndrome_product(lambda, g, Protocol::P1, {}, mode);
}

StepResult purification_step(const GDState &s, Protocol protocol, const GateNoise &noise, double f_m,
                             KernelMode mode) {
    if (!(noise.p >= 0.0 && noise.p <= 1.0)) {
        throw Error(ErrorCode::BadParam, "gate noise parameter p must lie in [0, 1]");
    }
    const Graph &g = s.graph();
    std::vector<double> noisy(s.coefficients().begin(), s.coefficients().end());
    if (noise.kind == GateNoise::Kind::Depolarizing) {
        depolarize_all_in_place(g, noisy, noise.p);
    } else {
        bitflip_B_noise_in_place(g, noisy, noise.p);
    }
    std::vector<double> weights;
    if (f_m != 0) {
        weights = measurement_flip_weights(g, protocol, f_m);
    }
    auto out = syndrome_product(noisy, g, protocol, weights, mode);
    double p_succ = 0;
    for (double c : out) {
        p_succ += std::max(c, 0.0);
    }
    if (!(p_succ >= 1e-300)) {
        throw Error(ErrorCode::ZeroSuccess, "acceptance probability vanished in " + protocol_name(protocol));
    }
    GDState next(g, std::move(out));
    return StepResult{std::move(next), p_succ, protocol};
}

StepResult p1_step(const GDState &s, double p, double f_m, KernelMode mode) {
    return purification_step(s, Protocol::P1, GateNoise::depolarizing(p), f_m, mode);
}

StepResult p2_step(const GDState &s, double p, double f_m, KernelMode mode) {
    return purification_step(s, Protocol::P2, GateNoise::depolarizing(p), f_m, mode);
}

PurificationTrace iterate(const GDState &s0, std::span<const Protocol> schedule, const GateNoise &noise, double f_m,
                          const StopCriteria &stop) {
    if (schedule.empty()) {
        throw Error(ErrorCode::BadParam, "purification schedule is empty");
    }
    PurificationTrace trace{{}, Verdict::MaxRounds, 1.0, s0};
    const double floor = std::ldexp(1.0, -static_cast<int>(s0.graph().num_vertices()));
    if (s0.fidelity() >= 1 - stop.epsilon) {
        trace.verdict = Verdict::Converged;
        return trace;
    }
    double log_cost = 0;
    double period_start = s0.fidelity();
    for (std::size_t round = 1; round <= stop.max_rounds; round++) {
        const Protocol protocol = schedule[(round - 1) % schedule.size()];
        const double before = trace.final_state.fidelity();
        StepResult step = purification_step(trace.final_state, protocol, noise, f_m);
        log_cost += std::log(2.0) - std::log(step.p_succ);
        trace.final_state = std::move(step.state);
        const double after = trace.final_state.fidelity();
        trace.rows.push_back({round, protocol, before, after, step.p_succ, std::exp(log_cost)});
        trace.expected_cost = std::exp(log_cost);
        if (after >= 1 - stop.epsilon) {
            trace.verdict = Verdict::Converged;
            return trace;
        }
        if (after < floor) {
            trace.verdict = Verdict::Diverged;
            return trace;
        }
        if (round % schedule.size() == 0) {
            if (std::abs(after - period_start) < stop.tolerance) {
                trace.verdict = Verdict::Stalled;
                return trace;
            }
            period_start = after;
        }
    }
    trace.verdict = Verdict::MaxRounds;
    return trace;
}

void write_trace_csv(const PurificationTrace &trace, std::ostream &out) {
    out << "round,protocol,F_before,F_after,p_succ,cumulative_expected_cost\n";
    for (const TraceRow &row : trace.rows) {
        out << row.round << ',' << protocol_name(row.protocol) << ',' << format_double(row.fidelity_before) << ','
            << format_double(row.fidelity_after) << ',' << format_double(row.p_succ) << ','
            << format_double(row.cumulative_expected_cost) << '\n';
    }
}

}  // namespace gdpurify
