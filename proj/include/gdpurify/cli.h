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

#ifndef GDPURIFY_CLI_H
#define GDPURIFY_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdpurify/analysis.h"
#include "gdpurify/graph.h"

namespace gdpurify {

/// An inclusive lo:hi:step range. A single value parses as lo = hi.
struct Range {
    double lo = 0;
    double hi = 0;
    double step = 0;

    std::vector<double> values() const;
    std::string to_string() const;
    bool operator==(const Range &) const = default;
};

Range parse_range(const std::string &text);
/// Comma list ("4,6,8") or lo:hi:step of nonnegative integers.
std::vector<std::size_t> parse_size_list(const std::string &text);

/// Everything one command needs. Keys of the scenario file are the flag names
/// without the leading dashes.
struct Scenario {
    std::string graph = "ghz";
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string graph_file;
    Family family = Family::RhoQ;
    std::optional<double> param;
    std::string quantity = "fmax";
    double p = 1.0;
    std::optional<Range> p_grid;
    std::string n_grid;
    double fm = 0.0;
    /// Empty selects the family default.
    std::string schedule;
    double eps = 1e-6;
    double tol = 1e-12;
    std::size_t max_rounds = 200;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;

    bool operator==(const Scenario &) const = default;
};

/// Sets one field from its textual value, validating the domain. Throws
/// ParseError naming `where` on failure.
void set_scenario_field(Scenario &s, const std::string &key, const std::string &value, const std::string &where);
/// key = value lines; '#' starts a comment.
void read_scenario(std::istream &in, Scenario &s, const std::string &source = "scenario");
void write_scenario(const Scenario &s, std::ostream &out);

/// Parses flags after the subcommand name. `--scenario FILE` is applied first,
/// then every explicit flag on top of it.
Scenario parse_scenario(const std::vector<std::string> &args);

/// Builds the graph the scenario describes (kind + size, or a graph file).
Graph scenario_graph(const Scenario &s, std::size_t n);
std::vector<Protocol> scenario_schedule(const Scenario &s);
SearchOptions scenario_search_options(const Scenario &s);

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitNumerical = 3,
    kExitOracleMismatch = 4,
};

/// args[0] is the program name, args[1] the subcommand.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gdpurify

#endif
