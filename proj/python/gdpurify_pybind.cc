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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gdpurify/analysis.h"
#include "gdpurify/errors.h"
#include "gdpurify/gd_state.h"
#include "gdpurify/graph.h"
#include "gdpurify/oracle.h"
#include "gdpurify/purification.h"

namespace py = pybind11;
using namespace gdpurify;

namespace {

py::array_t<double> to_array(std::span<const double> values) {
    py::array_t<double> out(static_cast<py::ssize_t>(values.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t k = 0; k < values.size(); k++) {
        view(static_cast<py::ssize_t>(k)) = values[k];
    }
    return out;
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast> &a) {
    if (a.ndim() != 1) {
        throw Error(ErrorCode::BadDistribution, "coefficients must be a 1-d array");
    }
    return {a.data(), a.data() + a.size()};
}

std::vector<Protocol> schedule_arg(const py::object &schedule) {
    if (schedule.is_none()) {
        return default_schedule();
    }
    return parse_schedule(schedule.cast<std::string>());
}

Graph graph_by_name(const std::string &kind, std::size_t n) {
    if (kind == "ghz") {
        return standard_graph(GraphKind::GHZ, n);
    }
    if (kind == "path" || kind == "linear") {
        return standard_graph(GraphKind::LinearCluster, n);
    }
    if (kind == "ring" || kind == "closed") {
        return standard_graph(GraphKind::ClosedCluster, n);
    }
    throw Error(ErrorCode::InvalidParam, "unknown graph kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_gdpurify, m) {
    m.doc() = "Purification of two-colorable graph states in the graph-diagonal basis.";

    // Held for the life of the interpreter; the module keeps its own reference.
    static PyObject *error_type = PyErr_NewException("gdpurify._gdpurify.GdpurifyError", PyExc_ValueError, nullptr);
    m.add_object("GdpurifyError", py::handle(error_type).inc_ref());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            std::string msg = std::string(error_code_name(e.code())) + ": " + e.what();
            PyErr_SetString(error_type, msg.c_str());
        }
    });

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &edges) {
                 std::vector<Edge> list;
                 for (auto [u, v] : edges) {
                     list.push_back({u, v});
                 }
                 return build_graph(n, list);
             }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("kind", &Graph::kind_name)
        .def_property_readonly("a_mask", &Graph::a_mask)
        .def_property_readonly("b_mask", &Graph::b_mask)
        .def_property_readonly("num_a", &Graph::num_a)
        .def_property_readonly("num_b", &Graph::num_b)
        .def_property_readonly("edges",
                               [](const Graph &g) {
                                   std::vector<std::pair<std::size_t, std::size_t>> out;
                                   for (const Edge &e : g.edges()) {
                                       out.emplace_back(e.u, e.v);
                                   }
                                   return out;
                               })
        .def("color", [](const Graph &g, std::size_t v) { return g.color(v) == Color::A ? "A" : "B"; })
        .def("neighbor_mask", &Graph::neighbor_mask)
        .def("__repr__", [](const Graph &g) {
            return "<Graph " + g.kind_name() + " n=" + std::to_string(g.num_vertices()) + ">";
        });

    m.def("standard_graph", &graph_by_name, py::arg("kind"), py::arg("n"),
          "kind is one of ghz, path, ring.");
    m.def("grid_cluster", &grid_cluster, py::arg("rows"), py::arg("cols"));
    m.def("read_graph_file", &read_graph_file, py::arg("path"));

    py::class_<GDState>(m, "GDState")
        .def(py::init([](const Graph &g, const py::array_t<double, py::array::c_style | py::array::forcecast> &a) {
                 return GDState(g, from_array(a));
             }),
             py::arg("graph"), py::arg("coefficients"))
        .def_property_readonly("graph", &GDState::graph)
        .def_property_readonly("fidelity", &GDState::fidelity)
        .def_property_readonly("coefficients", [](const GDState &s) { return to_array(s.coefficients()); })
        .def("__len__", &GDState::size);

    m.def("pure_target", &pure_target, py::arg("graph"));
    m.def("rho_q", &prepared_with_channel_noise, py::arg("graph"), py::arg("q"));
    m.def("rho_x", &global_white, py::arg("graph"), py::arg("x"));
    m.def("rho_a", &rho_A_family, py::arg("graph"), py::arg("fidelity"));
    m.def("depolarize_all", &depolarize_all, py::arg("state"), py::arg("q"));
    m.def("bitflip_b_noise", &bitflip_B_noise, py::arg("state"), py::arg("p"));

    auto step = [](const GDState &s, Protocol protocol, double p, double f_m) {
        StepResult r = purification_step(s, protocol, GateNoise::depolarizing(p), f_m);
        return py::make_tuple(r.state, r.p_succ);
    };
    m.def(
        "p1_step", [=](const GDState &s, double p, double f_m) { return step(s, Protocol::P1, p, f_m); },
        py::arg("state"), py::arg("p") = 1.0, py::arg("f_m") = 0.0, "Returns (state, p_succ).");
    m.def(
        "p2_step", [=](const GDState &s, double p, double f_m) { return step(s, Protocol::P2, p, f_m); },
        py::arg("state"), py::arg("p") = 1.0, py::arg("f_m") = 0.0, "Returns (state, p_succ).");

    m.def(
        "iterate",
        [](const GDState &s, const py::object &schedule, double p, double f_m, double epsilon, double tolerance,
           std::size_t max_rounds) {
            std::vector<Protocol> sched = schedule_arg(schedule);
            PurificationTrace t = iterate(s, sched, GateNoise::depolarizing(p), f_m, {epsilon, tolerance, max_rounds});
            py::list rows;
            for (const TraceRow &row : t.rows) {
                rows.append(py::make_tuple(row.round, protocol_name(row.protocol), row.fidelity_before,
                                           row.fidelity_after, row.p_succ, row.cumulative_expected_cost));
            }
            py::dict out;
            out["verdict"] = verdict_name(t.verdict);
            out["rounds"] = t.rounds();
            out["final_state"] = t.final_state;
            out["final_fidelity"] = t.final_fidelity();
            out["rows"] = rows;
            return out;
        },
        py::arg("state"), py::arg("schedule") = py::none(), py::arg("p") = 1.0, py::arg("f_m") = 0.0,
        py::arg("epsilon") = 1e-6, py::arg("tolerance") = 1e-12, py::arg("max_rounds") = 200);

    m.def(
        "f_max", [](const Graph &g, double p, double f_m) { return f_max(g, p, f_m); }, py::arg("graph"),
        py::arg("p"), py::arg("f_m") = 0.0);
    m.def(
        "f_min",
        [](const Graph &g, const std::string &family, double p) { return f_min(g, parse_family(family), p).value; },
        py::arg("graph"), py::arg("family"), py::arg("p") = 1.0);
    m.def(
        "q_min", [](const Graph &g, double p) { return q_min(g, p).value; }, py::arg("graph"), py::arg("p") = 1.0);
    m.def(
        "p_min", [](const Graph &g, const std::string &family) { return p_min(g, parse_family(family)).value; },
        py::arg("graph"), py::arg("family"));
    m.def("restricted_gain", &restricted_gain, py::arg("graph"), py::arg("p"), py::arg("x"));
    m.def(
        "restricted_gain_region",
        [](std::size_t n, double p) {
            GainRegion r = restricted_gain_region(n, p);
            return py::make_tuple(r.x_lo, r.x_hi);
        },
        py::arg("n"), py::arg("p"));
    m.def("bepp_bound", &bepp_bound, py::arg("graph"), py::arg("p"));
    m.def(
        "dejmps_fixed_point",
        [](double p) {
            BellDiag d = dejmps_fixed_point(p);
            return py::make_tuple(d.a, d.b, d.c, d.d);
        },
        py::arg("p"));

    m.def(
        "oracle_check",
        [](std::uint64_t seed, std::size_t states_per_case) {
            OracleCheckOptions options;
            options.seed = seed;
            options.states_per_case = states_per_case;
            OracleCheckSummary s = run_oracle_check(options);
            py::dict out;
            out["comparisons"] = s.comparisons;
            out["max_step_error"] = s.max_step_error;
            out["max_channel_error"] = s.max_channel_error;
            out["max_permutation_error"] = s.max_permutation_error;
            out["failures"] = s.failures;
            out["ok"] = s.ok();
            return out;
        },
        py::arg("seed") = 0, py::arg("states_per_case") = 5);
}
