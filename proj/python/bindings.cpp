// Python bindings for the wave-front tracking library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wft/analysis.hpp"
#include "wft/error.hpp"
#include "wft/examples.hpp"
#include "wft/flux.hpp"
#include "wft/fronttrack.hpp"
#include "wft/gauge.hpp"
#include "wft/lagrangian.hpp"
#include "wft/pwfun.hpp"
#include "wft/riemann.hpp"
#include "wft/scenario.hpp"

namespace py = pybind11;
using namespace wft;

namespace {

PiecewiseConstantFn step_fn(std::vector<double> x, std::vector<double> v) { return {std::move(x), std::move(v)}; }

TraceKind trace_kind(const std::string& s) {
    if (s == "solution") return TraceKind::Solution;
    if (s == "velocity") return TraceKind::VelocityExact;
    if (s == "velocity_polygonal") return TraceKind::VelocityPolygonal;
    throw InvalidArgument("trace kind must be solution, velocity or velocity_polygonal");
}

py::dict report_dict(const BoundReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["measured"] = r.measured;
    d["bound"] = r.bound;
    d["tolerance"] = r.tolerance;
    d["slack"] = r.slack;
    d["pass"] = r.pass;
    d["metadata"] = r.metadata;
    return d;
}

} // namespace

PYBIND11_MODULE(_wavefront, m) {
    m.doc() = "Exact wave-front tracking for scalar conservation laws";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
#define WFT_PY_ERROR(Name) py::register_exception<Name>(m, #Name, base.ptr())
    WFT_PY_ERROR(OutOfRange);
    WFT_PY_ERROR(InvalidWindow);
    WFT_PY_ERROR(NoConjugate);
    WFT_PY_ERROR(NegativeInput);
    WFT_PY_ERROR(NotSorted);
    WFT_PY_ERROR(EqualStates);
    WFT_PY_ERROR(GridTooFine);
    WFT_PY_ERROR(ValueOffGrid);
    WFT_PY_ERROR(EventStorm);
    WFT_PY_ERROR(HistoryGap);
    WFT_PY_ERROR(NoPairs);
    WFT_PY_ERROR(MissingGauge);
    WFT_PY_ERROR(NotConvex);
    WFT_PY_ERROR(NotMonotone);
    WFT_PY_ERROR(NoStraddlingPairs);
    WFT_PY_ERROR(DepthTooLarge);
    WFT_PY_ERROR(ParameterSearchFailed);
    WFT_PY_ERROR(ParseError);
    WFT_PY_ERROR(CheckFailure);
    WFT_PY_ERROR(InvalidArgument);
#undef WFT_PY_ERROR

    py::class_<FluxModel>(m, "FluxModel")
        .def_static("burgers", &FluxModel::burgers, py::arg("lo") = -10.0, py::arg("hi") = 10.0)
        .def_static("power", &FluxModel::power, py::arg("exponent"), py::arg("lo") = -4.0, py::arg("hi") = 4.0)
        .def("f", &FluxModel::f)
        .def("df", &FluxModel::df)
        .def("d2f", &FluxModel::d2f)
        .def("eval", &FluxModel::eval, py::arg("w"), py::arg("order") = 0)
        .def_property_readonly("lo", &FluxModel::lo)
        .def_property_readonly("hi", &FluxModel::hi)
        .def_property_readonly("label", &FluxModel::label)
        .def("inflections", [](const FluxModel& f) {
            std::vector<std::pair<double, int>> out;
            for (const auto& p : detect_inflections(f).points) out.emplace_back(p.w, p.non_polynomial ? -1 : p.p);
            return out;
        }, "Inflection points as (w, degeneracy) pairs; degeneracy -1 when not polynomial")
        .def("conjugate", [](const FluxModel& f, double ws, double w) { return conjugate_point(f, ws, w); },
             py::arg("ws"), py::arg("w"))
        .def("nonlinearity_gap", [](const FluxModel& f, double a, double b) { return nonlinearity_gap(f, a, b); })
        .def("nonlinearity_modulus", &nonlinearity_modulus, py::arg("h"), py::arg("lo"), py::arg("hi"))
        .def("__repr__", [](const FluxModel& f) { return "<FluxModel " + f.label() + ">"; });

    m.def("degenerate_ratio", &degenerate_ratio, py::arg("p"));

    py::class_<PiecewiseConstantFn>(m, "StepFunction")
        .def(py::init(&step_fn), py::arg("breakpoints"), py::arg("values"))
        .def_property_readonly("breakpoints", &PiecewiseConstantFn::breakpoints)
        .def_property_readonly("values", &PiecewiseConstantFn::values)
        .def("__call__", &PiecewiseConstantFn::operator())
        .def("__len__", &PiecewiseConstantFn::pieces)
        .def("integral", &PiecewiseConstantFn::integral)
        .def("sup_norm", &PiecewiseConstantFn::sup_norm)
        .def("total_variation", [](const PiecewiseConstantFn& u) { return total_variation(u); })
        .def("gauge_tv", [](const PiecewiseConstantFn& u, double p) { return gauge_tv(u, power_gauge(p)); },
             py::arg("p"), "Variation with gauge x^p")
        .def("undulation_heights", [](const PiecewiseConstantFn& u) { return decompose_undulations(u).heights(); })
        .def("to_csv", &PiecewiseConstantFn::to_csv);

    py::class_<Wave>(m, "Wave")
        .def_property_readonly("kind", [](const Wave& w) { return std::string(to_string(w.kind)); })
        .def_readonly("ul", &Wave::ul)
        .def_readonly("ur", &Wave::ur)
        .def_readonly("speed_lo", &Wave::speed_lo)
        .def_readonly("speed_hi", &Wave::speed_hi);

    m.def("solve_riemann", [](const FluxModel& f, double ul, double ur) { return solve_riemann(f, ul, ur).waves; },
          py::arg("flux"), py::arg("ul"), py::arg("ur"));
    m.def("rh_speed", &rh_speed, py::arg("flux"), py::arg("ul"), py::arg("ur"));

    py::class_<SimState>(m, "Simulation")
        .def_readonly("time", &SimState::time)
        .def_property_readonly("event_count", [](const SimState& s) { return s.event_times().size(); })
        .def_property_readonly("front_count", [](const SimState& s) { return s.fronts.size(); })
        .def("event_times", &SimState::event_times)
        .def("advance", [](SimState& s, double t) { advance_to(s, t); }, py::arg("t"))
        .def("trace", [](const SimState& s, double t, const std::string& kind) {
            return trace_at(s, t, trace_kind(kind));
        }, py::arg("t"), py::arg("kind") = "solution")
        .def("events_csv", [](const SimState& s) { return event_log_csv(s); })
        .def("survival", [](const SimState& s, std::vector<double> times) {
            auto paths = track_characteristics(s);
            std::vector<double> out;
            for (double t : times) out.push_back(survival_measure(paths, t));
            return out;
        }, py::arg("times"), "Measure of labels whose characteristic survives past each time")
        .def("oleinik", [](const SimState& s, double T) { return report_dict(oleinik_check(s, T)); }, py::arg("T"));

    m.def("simulate", [](const FluxModel& f, const PiecewiseConstantFn& u0, double dv, double horizon) {
        return simulate(f, u0, dv, horizon);
    }, py::arg("flux"), py::arg("u0"), py::arg("dv"), py::arg("horizon"));

    auto run = [](const Scenario& sc, std::optional<double> dv, std::optional<double> horizon,
                  std::optional<std::uint64_t> seed, bool checks) {
        RunResult r = run_scenario(sc, RunOverrides{dv, horizon, seed}, checks);
        py::dict d;
        d["exit_code"] = r.exit_code;
        py::list reps;
        for (const auto& rep : r.reports) reps.append(report_dict(rep));
        d["reports"] = reps;
        d["failures"] = r.failures;
        d["warnings"] = r.warnings;
        d["stats"] = r.stats;
        d["files"] = r.files;
        return d;
    };
    m.def("run_scenario", [run](const std::string& text, const std::string& name, std::optional<double> dv,
                                std::optional<double> horizon, std::optional<std::uint64_t> seed, bool checks) {
        return run(parse_scenario(text, name), dv, horizon, seed, checks);
    }, py::arg("text"), py::arg("name") = "scenario", py::arg("dv") = py::none(), py::arg("horizon") = py::none(),
       py::arg("seed") = py::none(), py::arg("checks") = true,
       "Parse scenario text and run it; artifacts are returned in 'files'");
    m.def("run_scenario_file", [run](const std::string& path_or_name, std::optional<double> dv,
                                     std::optional<double> horizon, std::optional<std::uint64_t> seed, bool checks) {
        return run(load_scenario(path_or_name), dv, horizon, seed, checks);
    }, py::arg("path_or_name"), py::arg("dv") = py::none(), py::arg("horizon") = py::none(),
       py::arg("seed") = py::none(), py::arg("checks") = true, "Run a scenario file or bundled scenario name");
    m.def("bundled_scenario_dir", &bundled_scenario_dir);
    m.def("example_scenario", &example_scenario, py::arg("name"), py::arg("depth") = 3, py::arg("p") = 2.0);
    m.def("sharpness_reference", &sharpness_reference, py::arg("p"), py::arg("N"), py::arg("q"));
}
