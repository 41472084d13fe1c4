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

#include "gdpurify/cli.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gdpurify/csv.h"
#include "gdpurify/errors.h"
#include "gdpurify/oracle.h"

namespace gdpurify {

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &message) {
    throw Error(ErrorCode::ParseError, where + ": " + message);
}

std::string trim(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

double parse_double(const std::string &text, const std::string &where) {
    const std::string t = trim(text);
    double value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
        bad(where, "expected a number, got '" + text + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string &text, const std::string &where) {
    const std::string t = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        bad(where, "expected a nonnegative integer, got '" + text + "'");
    }
    return value;
}

void require_in(double value, double lo, double hi, bool lo_open, const std::string &where, const char *what) {
    const bool ok = (lo_open ? value > lo : value >= lo) && value <= hi;
    if (!ok) {
        bad(where, std::string(what) + " must lie in " + (lo_open ? "(" : "[") + format_double(lo) + ", " +
                       format_double(hi) + "], got " + format_double(value));
    }
}

Range parse_range_at(const std::string &text, const std::string &where) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    Range r;
    if (parts.size() == 1) {
        r.lo = r.hi = parse_double(parts[0], where);
    } else if (parts.size() == 3) {
        r.lo = parse_double(parts[0], where);
        r.hi = parse_double(parts[1], where);
        r.step = parse_double(parts[2], where);
        if (r.lo > r.hi) {
            bad(where, "range '" + text + "' has lo > hi");
        }
        if (r.lo < r.hi && !(r.step > 0)) {
            bad(where, "range '" + text + "' needs a positive step");
        }
    } else {
        bad(where, "expected lo:hi:step or a single value, got '" + text + "'");
    }
    return r;
}

}  // namespace

std::vector<double> Range::values() const {
    if (lo == hi || step <= 0) {
        return {lo};
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t k = 0; k < count; k++) {
        out.push_back(std::min(hi, lo + static_cast<double>(k) * step));
    }
    return out;
}

std::string Range::to_string() const {
    if (lo == hi && step == 0) {
        return format_double(lo);
    }
    return format_double(lo) + ":" + format_double(hi) + ":" + format_double(step);
}

Range parse_range(const std::string &text) {
    return parse_range_at(text, "range");
}

std::vector<std::size_t> parse_size_list(const std::string &text) {
    const std::string where = "size list";
    std::vector<std::size_t> out;
    if (text.find(':') != std::string::npos) {
        Range r = parse_range_at(text, where);
        for (double v : r.values()) {
            if (v < 0 || v != std::floor(v)) {
                bad(where, "'" + text + "' does not describe integers");
            }
            out.push_back(static_cast<std::size_t>(v));
        }
        return out;
    }
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        out.push_back(parse_unsigned(part, where));
    }
    if (out.empty()) {
        bad(where, "empty list");
    }
    return out;
}

void set_scenario_field(Scenario &s, const std::string &key, const std::string &raw, const std::string &where) {
    const std::string value = trim(raw);
    if (key == "graph") {
        if (value != "ghz" && value != "path" && value != "ring" && value != "grid" && value != "file") {
            bad(where, "graph must be ghz, path, ring, grid or file, got '" + value + "'");
        }
        s.graph = value;
    } else if (key == "n") {
        s.n = parse_unsigned(value, where);
        if (s.n == 0 || s.n > kMaxGraphVertices) {
            bad(where, "n must lie in [1, " + std::to_string(kMaxGraphVertices) + "]");
        }
    } else if (key == "rows" || key == "cols") {
        auto v = parse_unsigned(value, where);
        if (v == 0) {
            bad(where, key + " must be positive");
        }
        (key == "rows" ? s.rows : s.cols) = v;
    } else if (key == "graph-file") {
        s.graph_file = value;
    } else if (key == "family") {
        try {
            s.family = parse_family(value);
        } catch (const Error &e) {
            bad(where, e.what());
        }
    } else if (key == "param") {
        double v = parse_double(value, where);
        require_in(v, 0, 1, false, where, "family parameter");
        s.param = v;
    } else if (key == "quantity") {
        if (value != "fmin" && value != "fmax" && value != "qmin" && value != "pmin" && value != "bepp") {
            bad(where, "quantity must be fmin, fmax, qmin, pmin or bepp, got '" + value + "'");
        }
        s.quantity = value;
    } else if (key == "p") {
        double v = parse_double(value, where);
        require_in(v, 0, 1, true, where, "gate quality p");
        s.p = v;
    } else if (key == "p-grid") {
        Range r = parse_range_at(value, where);
        require_in(r.lo, 0, 1, true, where, "p-grid lower end");
        require_in(r.hi, 0, 1, true, where, "p-grid upper end");
        s.p_grid = r;
    } else if (key == "n-grid") {
        try {
            parse_size_list(value);
        } catch (const Error &e) {
            bad(where, e.what());
        }
        s.n_grid = value;
    } else if (key == "fm") {
        double v = parse_double(value, where);
        require_in(v, 0, 0.5, false, where, "measurement flip probability");
        s.fm = v;
    } else if (key == "schedule") {
        try {
            parse_schedule(value);
        } catch (const Error &e) {
            bad(where, e.what());
        }
        s.schedule = value;
    } else if (key == "eps") {
        double v = parse_double(value, where);
        require_in(v, 0, 1, true, where, "eps");
        s.eps = v;
    } else if (key == "tol") {
        double v = parse_double(value, where);
        require_in(v, 0, 1, false, where, "tol");
        s.tol = v;
    } else if (key == "max-rounds") {
        s.max_rounds = parse_unsigned(value, where);
        if (s.max_rounds == 0) {
            bad(where, "max-rounds must be positive");
        }
    } else if (key == "out") {
        s.out = value;
    } else if (key == "seed") {
        s.seed = parse_unsigned(value, where);
    } else if (key == "jobs") {
        s.jobs = parse_unsigned(value, where);
        if (s.jobs == 0) {
            bad(where, "jobs must be positive");
        }
    } else {
        bad(where, "unknown key '" + key + "'");
    }
}

void read_scenario(std::istream &in, Scenario &s, const std::string &source) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bad(where, "expected key = value");
        }
        set_scenario_field(s, trim(line.substr(0, eq)), line.substr(eq + 1), where);
    }
}

void write_scenario(const Scenario &s, std::ostream &out) {
    out << "graph = " << s.graph << '\n';
    if (s.n) {
        out << "n = " << s.n << '\n';
    }
    if (s.rows) {
        out << "rows = " << s.rows << '\n';
    }
    if (s.cols) {
        out << "cols = " << s.cols << '\n';
    }
    if (!s.graph_file.empty()) {
        out << "graph-file = " << s.graph_file << '\n';
    }
    out << "family = " << family_name(s.family) << '\n';
    if (s.param) {
        out << "param = " << format_double(*s.param) << '\n';
    }
    out << "quantity = " << s.quantity << '\n';
    out << "p = " << format_double(s.p) << '\n';
    if (s.p_grid) {
        out << "p-grid = " << s.p_grid->to_string() << '\n';
    }
    if (!s.n_grid.empty()) {
        out << "n-grid = " << s.n_grid << '\n';
    }
    out << "fm = " << format_double(s.fm) << '\n';
    if (!s.schedule.empty()) {
        out << "schedule = " << s.schedule << '\n';
    }
    out << "eps = " << format_double(s.eps) << '\n';
    out << "tol = " << format_double(s.tol) << '\n';
    out << "max-rounds = " << s.max_rounds << '\n';
    if (!s.out.empty()) {
        out << "out = " << s.out << '\n';
    }
    out << "seed = " << s.seed << '\n';
    out << "jobs = " << s.jobs << '\n';
}

namespace {

const char *const kScenarioKeys[] = {
    "graph", "n",      "rows", "cols", "graph-file", "family", "param",      "quantity", "p",    "p-grid",
    "n-grid", "fm", "schedule", "eps",  "tol",        "max-rounds", "out", "seed",     "jobs",
};

}  // namespace

Scenario parse_scenario(const std::vector<std::string> &args) {
    CLI::App app{"gdpurify scenario"};
    // Help is handled by run_command; here it is just another unknown flag.
    app.set_help_flag();
    std::string scenario_file;
    app.add_option("--scenario", scenario_file, "key = value scenario file; flags override it");
    std::vector<std::pair<std::string, std::string>> flag_values;
    std::vector<std::pair<std::string, CLI::Option *>> options;
    std::vector<std::string> storage(std::size(kScenarioKeys));
    for (std::size_t k = 0; k < std::size(kScenarioKeys); k++) {
        options.emplace_back(kScenarioKeys[k], app.add_option(std::string("--") + kScenarioKeys[k], storage[k]));
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        throw Error(ErrorCode::ParseError, std::string("command line: ") + e.what());
    }

    Scenario s;
    if (!scenario_file.empty()) {
        std::ifstream in(scenario_file);
        if (!in) {
            bad("--scenario", "cannot open '" + scenario_file + "'");
        }
        read_scenario(in, s, scenario_file);
    }
    for (std::size_t k = 0; k < options.size(); k++) {
        if (options[k].second->count() > 0) {
            set_scenario_field(s, options[k].first, storage[k], "--" + options[k].first);
        }
    }
    return s;
}

Graph scenario_graph(const Scenario &s, std::size_t n) {
    if (s.graph == "file") {
        if (s.graph_file.empty()) {
            bad("--graph-file", "graph 'file' needs --graph-file");
        }
        return read_graph_file(s.graph_file);
    }
    if (s.graph == "grid") {
        if (!s.rows || !s.cols) {
            bad("--rows/--cols", "graph 'grid' needs --rows and --cols");
        }
        return grid_cluster(s.rows, s.cols);
    }
    if (n == 0) {
        bad("--n", "graph '" + s.graph + "' needs --n");
    }
    const GraphKind kind = s.graph == "ghz" ? GraphKind::GHZ
                           : s.graph == "path" ? GraphKind::LinearCluster
                                               : GraphKind::ClosedCluster;
    return standard_graph(kind, n);
}

std::vector<Protocol> scenario_schedule(const Scenario &s) {
    return s.schedule.empty() ? family_default_schedule(s.family) : parse_schedule(s.schedule);
}

SearchOptions scenario_search_options(const Scenario &s) {
    SearchOptions o;
    o.meas_flip = s.fm;
    if (!s.schedule.empty()) {
        o.schedule = parse_schedule(s.schedule);
    }
    o.stop = {s.eps, s.tol, std::max(s.max_rounds, kSearchMaxRounds)};
    return o;
}

namespace {

/// Thrown for problems the caller should fix (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_numerical(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroSuccess:
        case ErrorCode::NoFixedPoint:
        case ErrorCode::BracketError:
        case ErrorCode::EmptyRegion:
            return true;
        default:
            return false;
    }
}

/// Error raised while evaluating one grid cell.
struct CellError : std::runtime_error {
    CellError(const std::string &cell, const Error &e) : std::runtime_error(cell + ": " + e.what()), code(e.code()) {
    }
    ErrorCode code;
};

std::string cell_name(const Graph &g, const std::optional<double> &p) {
    std::string out = "cell graph=" + g.kind_name() + " N=" + std::to_string(g.num_vertices());
    if (p) {
        out += " p=" + format_double(*p);
    }
    return out;
}

ThresholdReport compute_report(const Scenario &s, const Graph &g, double p) {
    const SearchOptions o = scenario_search_options(s);
    if (s.quantity == "fmax") {
        return f_max_report(g, s.family, p, o);
    }
    if (s.quantity == "fmin") {
        return f_min(g, s.family, p, o);
    }
    if (s.quantity == "qmin") {
        return q_min(g, p, o);
    }
    if (s.quantity == "pmin") {
        return p_min(g, s.family, o);
    }
    const double bound = bepp_bound(g, p);
    return {g.kind_name(), g.num_vertices(), s.family, "bepp", "", p, bound, bound, bound, 0.0, 0};
}

/// Output sink: --out path or the given stream.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw UsageError("cannot open output file '" + path + "'");
            }
            stream_ = &file_;
        }
    }
    std::ostream &get() {
        return *stream_;
    }

   private:
    std::ofstream file_;
    std::ostream *stream_;
};

int cmd_purify(const Scenario &s, std::ostream &out) {
    if (!s.param) {
        throw UsageError("purify needs --param (the family parameter)");
    }
    const Graph g = scenario_graph(s, s.n);
    const auto schedule = scenario_schedule(s);
    const GDState input = family_input(g, s.family, *s.param);
    const PurificationTrace trace = [&]() {
        try {
            return iterate(input, schedule, family_noise(s.family, s.p), s.fm, {s.eps, s.tol, s.max_rounds});
        } catch (const Error &e) {
            if (is_numerical(e.code())) {
                throw CellError(cell_name(g, s.p), e);
            }
            throw;
        }
    }();
    Sink sink(s.out, out);
    auto &o = sink.get();
    o << csv_version_stamp() << '\n';
    write_trace_csv(trace, o);
    o << "# verdict=" << verdict_name(trace.verdict) << " rounds=" << trace.rounds()
      << " final_fidelity=" << format_double(trace.final_fidelity())
      << " expected_cost=" << format_double(trace.expected_cost) << '\n';
    return kExitOk;
}

int cmd_threshold(const Scenario &s, std::ostream &out) {
    const Graph g = scenario_graph(s, s.n);
    ThresholdReport report;
    try {
        report = compute_report(s, g, s.p);
    } catch (const Error &e) {
        if (is_numerical(e.code())) {
            throw CellError(cell_name(g, s.quantity == "pmin" ? std::nullopt : std::optional<double>(s.p)), e);
        }
        throw;
    }
    Sink sink(s.out, out);
    sink.get() << csv_version_stamp() << '\n';
    write_threshold_header(sink.get());
    write_threshold_row(report, sink.get());
    return kExitOk;
}

/// Runs `work(i)` for i in [0, count) on `jobs` threads.
template <typename Fn>
void run_parallel(std::size_t count, std::size_t jobs, Fn work) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; i++) {
            work(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; t++) {
        threads.emplace_back([&]() {
            for (std::size_t i = next++; i < count; i = next++) {
                work(i);
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
}

struct ScanCell {
    std::size_t n;
    std::optional<double> p;
    std::string row;
    std::optional<CellError> error;
};

int cmd_scan(const Scenario &s, std::ostream &out) {
    const std::vector<std::size_t> ns = s.n_grid.empty() ? std::vector<std::size_t>{s.n} : parse_size_list(s.n_grid);
    const std::vector<double> ps = s.p_grid ? s.p_grid->values() : std::vector<double>{s.p};
    std::vector<ScanCell> cells;
    for (std::size_t n : ns) {
        if (s.quantity == "pmin") {
            cells.push_back({n, std::nullopt, "", std::nullopt});
            continue;
        }
        for (double p : ps) {
            cells.push_back({n, p, "", std::nullopt});
        }
    }
    // Graph construction errors are usage errors; surface them before any work.
    std::vector<Graph> graphs;
    for (const ScanCell &c : cells) {
        graphs.push_back(scenario_graph(s, c.n));
    }

    run_parallel(cells.size(), s.jobs, [&](std::size_t i) {
        ScanCell &c = cells[i];
        const Graph &g = graphs[i];
        std::ostringstream row;
        try {
            write_threshold_row(compute_report(s, g, c.p.value_or(s.p)), row);
        } catch (const Error &e) {
            if (e.code() == ErrorCode::NoFixedPoint) {
                // No entangled fixed point in this cell: an empty value, not a failure.
                ThresholdReport r{g.kind_name(), g.num_vertices(), s.family, s.quantity, "", c.p,
                                  std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
                write_threshold_row(r, row);
            } else {
                c.error.emplace(cell_name(g, c.p), e);
            }
        }
        c.row = row.str();
    });
    for (const ScanCell &c : cells) {
        if (c.error) {
            throw *c.error;
        }
    }
    Sink sink(s.out, out);
    auto &o = sink.get();
    o << csv_version_stamp() << '\n';
    write_threshold_header(o);
    for (const ScanCell &c : cells) {
        o << c.row;
    }
    return kExitOk;
}

int cmd_compare_bepp(const Scenario &s, std::ostream &out) {
    const Graph g = scenario_graph(s, s.n);
    const std::vector<double> ps = s.p_grid ? s.p_grid->values() : std::vector<double>{s.p};
    const SearchOptions o = scenario_search_options(s);
    std::vector<std::string> rows(ps.size());
    std::vector<std::optional<CellError>> errors(ps.size());
    run_parallel(ps.size(), s.jobs, [&](std::size_t i) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        auto guarded = [&](auto fn) {
            try {
                return fn();
            } catch (const Error &e) {
                if (e.code() != ErrorCode::NoFixedPoint) {
                    errors[i].emplace(cell_name(g, ps[i]), e);
                }
                return nan;
            }
        };
        const double mepp = guarded([&] { return f_max(g, GateNoise::depolarizing(ps[i]), o); });
        const double bepp = guarded([&] { return bepp_bound(g, ps[i]); });
        rows[i] = format_double(ps[i]) + "," + format_double(mepp) + "," + format_double(bepp) + "\n";
    });
    for (const auto &e : errors) {
        if (e) {
            throw *e;
        }
    }
    Sink sink(s.out, out);
    auto &os = sink.get();
    os << csv_version_stamp() << '\n' << "p,mepp_fmax,bepp_bound\n";
    for (const auto &r : rows) {
        os << r;
    }
    return kExitOk;
}

int cmd_oracle_check(const Scenario &s, std::ostream &out) {
    Sink sink(s.out, out);
    auto &o = sink.get();
    OracleCheckOptions options;
    options.seed = s.seed;
    const OracleCheckSummary summary = run_oracle_check(options, &o);
    o << "comparisons=" << summary.comparisons << " max_step_error=" << format_double(summary.max_step_error)
      << " max_channel_error=" << format_double(summary.max_channel_error)
      << " max_permutation_error=" << format_double(summary.max_permutation_error)
      << " mismatches=" << summary.failures.size() << '\n';
    return summary.ok() ? kExitOk : kExitOracleMismatch;
}

const char *const kUsage =
    "usage: gdpurify <command> [flags]\n"
    "commands:\n"
    "  purify        iterate one input state; trace CSV\n"
    "  threshold     one threshold or fixed point (--quantity fmin|fmax|qmin|pmin|bepp)\n"
    "  scan          threshold over --n-grid and --p-grid\n"
    "  compare-bepp  f_max against the bipartite bound over --p-grid\n"
    "  oracle-check  dense simulator versus coefficient maps\n"
    "flags:\n"
    "  --graph ghz|path|ring|grid|file  --n N  --rows R --cols C  --graph-file PATH\n"
    "  --family rho-q|rho-x|rho-a|restricted-bitflip  --param X  --quantity Q\n"
    "  --p P  --p-grid lo:hi:step  --n-grid a,b,c|lo:hi:step  --fm F  --schedule P1,P2\n"
    "  --eps E  --tol T  --max-rounds R  --out PATH  --seed S  --jobs J  --scenario FILE\n";

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    if (args.size() < 2) {
        err << kUsage;
        return kExitUsage;
    }
    const std::string &command = args[1];
    auto is_help = [](const std::string &a) { return a == "--help" || a == "-h"; };
    if (command == "help" || std::any_of(args.begin() + 1, args.end(), is_help)) {
        out << kUsage;
        return kExitOk;
    }
    try {
        const Scenario s = parse_scenario(std::vector<std::string>(args.begin() + 2, args.end()));
        if (command == "purify") {
            return cmd_purify(s, out);
        }
        if (command == "threshold") {
            return cmd_threshold(s, out);
        }
        if (command == "scan") {
            return cmd_scan(s, out);
        }
        if (command == "compare-bepp") {
            return cmd_compare_bepp(s, out);
        }
        if (command == "oracle-check") {
            return cmd_oracle_check(s, out);
        }
        err << "unknown command '" << command << "'\n" << kUsage;
        return kExitUsage;
    } catch (const CellError &e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.code) ? kExitNumerical : kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.code()) ? kExitNumerical : kExitUsage;
    }
}

}  // namespace gdpurify
