#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ftdiff/analysis.hpp"
#include "ftdiff/diffcore.hpp"
#include "ftdiff/errors.hpp"
#include "ftdiff/gains.hpp"
#include "ftdiff/scenario.hpp"
#include "ftdiff/signals.hpp"
#include "ftdiff/sim.hpp"

namespace py = pybind11;
using namespace ftdiff;

namespace {

py::array_t<double> column(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict trajectory_dict(const Trajectory& t) {
    py::dict d;
    d["sample_period"] = t.sample_period;
    d["t"] = column(t.t);
    d["v"] = column(t.v);
    d["v_dot"] = column(t.v_dot);
    d["x1"] = column(t.x1);
    d["x2"] = column(t.x2);
    d["e1"] = column(t.e1);
    d["e2"] = column(t.e2);
    if (t.has_lyapunov()) d["V"] = column(t.V);
    return d;
}

Trajectory trajectory_from(const py::dict& d) {
    Trajectory t;
    t.sample_period = d["sample_period"].cast<double>();
    for (auto [key, col] : {std::pair{"t", &t.t}, {"v", &t.v}, {"v_dot", &t.v_dot}, {"x1", &t.x1},
                            {"x2", &t.x2}, {"e1", &t.e1}, {"e2", &t.e2}})
        *col = d[key].cast<std::vector<double>>();
    if (d.contains("V")) t.V = d["V"].cast<std::vector<double>>();
    return t;
}

// Configs cross the boundary as JSON text; the Python side wraps them in dicts.
ScenarioConfig config_from(const std::string& text) { return scenario_from_json(nlohmann::json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_ftdiff, m) {
    m.doc() = "Finite-time-convergent differentiator toolkit";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigInvalid>(m, "ConfigInvalid", base);
    py::register_exception<NumericalBlowup>(m, "NumericalBlowup", base);
    py::register_exception<IoFailure>(m, "IoFailure", base);
    py::register_exception<InfeasibleGains>(m, "InfeasibleGains", base);
    py::register_exception<AlphaZero>(m, "AlphaZero", base);
    py::register_exception<BoundVacuous>(m, "BoundVacuous", base);
    py::register_exception<DegenerateFit>(m, "DegenerateFit", base);
    py::register_exception<MismatchedScenario>(m, "MismatchedScenario", base);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("ContinuousFtd", Algorithm::ContinuousFtd)
        .value("Levant", Algorithm::Levant)
        .value("SingularPerturbation", Algorithm::SingularPerturbation);

    py::class_<DiffParams>(m, "DiffParams")
        .def(py::init([](Algorithm a, double k1, double k2, double alpha, double epsilon) {
                 return DiffParams{a, k1, k2, alpha, epsilon};
             }),
             py::arg("algorithm"), py::arg("k1") = 0.0, py::arg("k2") = 0.0, py::arg("alpha") = 0.0,
             py::arg("epsilon") = 0.1)
        .def_readwrite("algorithm", &DiffParams::algorithm)
        .def_readwrite("k1", &DiffParams::k1)
        .def_readwrite("k2", &DiffParams::k2)
        .def_readwrite("alpha", &DiffParams::alpha)
        .def_readwrite("epsilon", &DiffParams::epsilon)
        .def("__repr__", [](const DiffParams& p) {
            return "DiffParams(" + std::string(to_string(p.algorithm)) + ", k1=" + std::to_string(p.k1) +
                   ", k2=" + std::to_string(p.k2) + ", alpha=" + std::to_string(p.alpha) +
                   ", epsilon=" + std::to_string(p.epsilon) + ")";
        });

    m.def("sig_pow", &sig_pow, py::arg("x"), py::arg("p"));
    m.def(
        "rhs",
        [](const DiffParams& p, double x1, double x2, double measurement) {
            validate(p);
            const auto d = rhs({x1, x2}, measurement, p);
            return std::pair{d.dx1, d.dx2};
        },
        py::arg("params"), py::arg("x1"), py::arg("x2"), py::arg("measurement"));

    m.def("omega_integral", &omega_integral, py::arg("p"));
    m.def("describing_fn", &describing_fn, py::arg("A"), py::arg("p"));
    m.def(
        "linearized_frequency",
        [](const DiffParams& p, double A) {
            const auto r = linearized_frequency(p, A);
            py::dict d;
            d["natural_frequency"] = r.natural_frequency;
            d["damping"] = r.damping;
            d["describing_gain_half"] = r.describing_gain_half;
            d["describing_gain_full"] = r.describing_gain_full;
            return d;
        },
        py::arg("params"), py::arg("A"));
    m.def(
        "lyapunov_V", [](double e1, double e2, const DiffParams& p) { return lyapunov_V({e1, e2}, p); },
        py::arg("e1"), py::arg("e2"), py::arg("params"));
    m.def("homogeneity_check", &homogeneity_check, py::arg("params"), py::arg("sample_count"),
          py::arg("seed") = 1, py::arg("degree") = py::none());

    m.def("lambda_min_Q", &lambda_min_Q, py::arg("params"));
    m.def("min_k2", &min_k2, py::arg("k1"), py::arg("alpha"), py::arg("L2"));
    m.def("steady_error_bound", &steady_error_bound, py::arg("params"), py::arg("L2"));
    m.def("noisy_error_bound", &noisy_error_bound, py::arg("params"), py::arg("L2"), py::arg("sigma"));
    m.def(
        "design_check",
        [](const DiffParams& p, double L2, double sigma) {
            return py::module_::import("json").attr("loads")(to_json(design_check(p, L2, sigma)).dump());
        },
        py::arg("params"), py::arg("L2"), py::arg("sigma") = 0.0);
    m.def(
        "finite_time_rate",
        [](const DiffParams& p) {
            const auto r = finite_time_rate(p);
            return std::pair{r.c, r.theta};
        },
        py::arg("params"));
    m.def("settling_time_bound", &settling_time_bound, py::arg("V0"), py::arg("c"), py::arg("theta"));

    m.def(
        "chattering_index", [](const py::dict& traj, double w) { return chattering_index(trajectory_from(traj), w); },
        py::arg("trajectory"), py::arg("window_start"));
    m.def(
        "settle_time", [](const py::dict& traj, double tol) { return settle_time(trajectory_from(traj), tol); },
        py::arg("trajectory"), py::arg("tol"));
    m.def(
        "noise_scaling_fit",
        [](const std::vector<double>& sigmas, const std::vector<std::pair<double, double>>& errors) {
            const auto f = noise_scaling_fit(sigmas, errors);
            return std::pair{f.slope_e1, f.slope_e2};
        },
        py::arg("sigmas"), py::arg("errors"));

    m.def("_preset_names", [] {
        std::vector<std::string> names;
        for (const auto& p : list_presets()) names.push_back(p.name);
        return names;
    });
    m.def("_preset_json", [](const std::string& name) { return to_json(preset(name)).dump(); });
    m.def("_normalize_json", [](const std::string& text) { return to_json(config_from(text)).dump(); });
    m.def("_evaluate_json", [](const std::string& text) {
        const auto cfg = config_from(text);
        ScenarioResult r;
        {
            py::gil_scoped_release release;
            r = evaluate(cfg);
        }
        py::dict d;
        d["trajectory"] = trajectory_dict(r.trajectory);
        auto loads = py::module_::import("json").attr("loads");
        d["bounds"] = loads(to_json(r.bounds).dump());
        d["analysis"] = loads(to_json(r.analysis).dump());
        d["settle_time"] = r.settle_time;
        return d;
    });
    m.def("_run_json", [](const std::string& text) {
        const auto cfg = config_from(text);
        RunReport r;
        {
            py::gil_scoped_release release;
            r = run(cfg);
        }
        return report_json(r).dump();
    });
}
