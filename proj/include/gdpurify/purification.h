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

#ifndef GDPURIFY_PURIFICATION_H
#define GDPURIFY_PURIFICATION_H

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gdpurify/gd_state.h"

namespace gdpurify {

/// P1 extracts A-syndrome information (coincidence on A, XOR-combination on B);
/// P2 is the mirror image with the sets interchanged.
enum class Protocol { P1, P2 };

std::string protocol_name(Protocol protocol);
/// Parses "P1,P2,..." (case-insensitive, comma separated).
std::vector<Protocol> parse_schedule(const std::string &text);
std::string schedule_to_string(std::span<const Protocol> schedule);

enum class KernelMode { Fast, Naive };

/// Noise applied to each input copy immediately before the CNOT layer.
struct GateNoise {
    enum class Kind {
        /// White noise of strength p on every qubit (imperfect two-qubit gates).
        Depolarizing,
        /// Bit flips of strength p on the B qubits only.
        RestrictedBitFlip,
    };
    Kind kind = Kind::Depolarizing;
    double p = 1.0;

    static GateNoise depolarizing(double p) {
        return {Kind::Depolarizing, p};
    }
    static GateNoise restricted_bitflip(double p) {
        return {Kind::RestrictedBitFlip, p};
    }
};

struct StepResult {
    GDState state;
    /// Acceptance probability: mass of the unnormalized post-selected output.
    double p_succ;
    Protocol protocol_used;
};

/// Probability W(a) that independent outcome flips (each with probability f_m)
/// misread the acceptance syndrome by pattern a. Supported on the kept side's
/// submasks (A for P1, B for P2).
std::vector<double> measurement_flip_weights(const Graph &g, Protocol protocol, double f_m);

/// Unnormalized post-selected coefficients for two copies with coefficients
/// `lambda`: u[g] = sum_a W(a) sum_{mu ^ nu = g_conv} lambda[g_keep | mu] * lambda[(g_keep ^ a) | nu],
/// where keep/conv are the A/B sides for P1 and B/A for P2. An empty `weights`
/// means perfect measurements.
///
/// FAST runs Walsh transforms over the conv bits (and over the keep bits when
/// weights are present), O(2^n n). NAIVE evaluates the double sum directly.
std::vector<double> syndrome_product(std::span<const double> lambda, const Graph &g, Protocol protocol,
                                     std::span<const double> weights, KernelMode mode);

/// The perfect-measurement P1 kernel.
std::vector<double> xor_square_over_B(std::span<const double> lambda, const Graph &g, KernelMode mode);

/// One recurrence step on two identical copies of `s`.
StepResult purification_step(const GDState &s, Protocol protocol, const GateNoise &noise, double f_m,
                             KernelMode mode = KernelMode::Fast);
StepResult p1_step(const GDState &s, double p, double f_m, KernelMode mode = KernelMode::Fast);
StepResult p2_step(const GDState &s, double p, double f_m, KernelMode mode = KernelMode::Fast);

struct StopCriteria {
    /// CONVERGED once fidelity >= 1 - epsilon. A negative value disables the test.
    double epsilon = 1e-6;
    /// STALLED once fidelity moves less than this over one schedule period.
    double tolerance = 1e-12;
    std::size_t max_rounds = 200;
};

enum class Verdict { Converged, Stalled, Diverged, MaxRounds };

std::string verdict_name(Verdict verdict);

struct TraceRow {
    std::size_t round;
    Protocol protocol;
    double fidelity_before;
    double fidelity_after;
    double p_succ;
    double cumulative_expected_cost;
};

struct PurificationTrace {
    std::vector<TraceRow> rows;
    Verdict verdict = Verdict::MaxRounds;
    /// 2^r / prod p_succ over the r recorded rounds: input copies consumed per
    /// surviving output copy.
    double expected_cost = 1.0;
    GDState final_state;

    std::size_t rounds() const {
        return rows.size();
    }
    double final_fidelity() const {
        return final_state.fidelity();
    }
};

/// Alternating P1, P2.
std::vector<Protocol> default_schedule();

/// Applies schedule[i % len] repeatedly until CONVERGED, STALLED (fidelity change
/// below tolerance across a full schedule period), DIVERGED (fidelity below
/// 1/2^n) or max_rounds. A state already within epsilon of 1 returns immediately.
PurificationTrace iterate(const GDState &s0, std::span<const Protocol> schedule, const GateNoise &noise, double f_m,
                          const StopCriteria &stop = {});

/// CSV with columns round,protocol,F_before,F_after,p_succ,cumulative_expected_cost.
void write_trace_csv(const PurificationTrace &trace, std::ostream &out);

}  // namespace gdpurify

#endif
