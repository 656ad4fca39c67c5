#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deckwalk/fourier.hpp"
#include "deckwalk/metrics.hpp"
#include "deckwalk/scenario.hpp"
#include "deckwalk/trace_io.hpp"
#include "deckwalk/verify.hpp"

namespace py = pybind11;
using namespace deckwalk;

namespace {

py::dict trace_dict(const SimTrace& trace) {
  const auto& names = trace_columns();
  std::vector<std::vector<double>> cols(names.size());
  for (auto& c : cols) c.reserve(trace.samples.size());
  for (const auto& s : trace.samples) {
    const double row[] = {s.t,       s.height,  s.x,         s.xdot,        s.xd,
                          s.xd_dot,  s.xc,      s.xc_dot,    s.e,           s.e_dot,
                          s.ec,      s.ec_dot,  s.tau_cmd,   s.tau_applied, s.v,
                          s.zeta,    s.theta_norm, s.p_eig_min, s.p_eig_max, s.step,
                          s.offset,  s.x_s0c,   s.touchdown ? 1.0 : 0.0};
    for (std::size_t c = 0; c < names.size(); ++c) cols[c].push_back(row[c]);
  }
  py::dict out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    out[py::str(names[c])] =
        py::array_t<double>(static_cast<py::ssize_t>(cols[c].size()), cols[c].data());
  }
  return out;
}

py::dict run_and_pack(const Scenario& s) {
  try {
    auto d = trace_dict(run_scenario(s));
    d["diverged"] = false;
    return d;
  } catch (const DivergenceError& e) {
    auto d = trace_dict(e.partial_trace());
    d["diverged"] = true;
    return d;
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "deckwalk core bindings";

  py::register_exception<Error>(m, "DeckwalkError", PyExc_ValueError);

  py::class_<GaitSpec>(m, "GaitSpec")
      .def(py::init<>())
      .def_readwrite("step_period", &GaitSpec::step_period)
      .def_readwrite("desired_velocity", &GaitSpec::desired_velocity)
      .def_readwrite("nominal_height", &GaitSpec::nominal_height)
      .def_readwrite("gravity", &GaitSpec::gravity)
      .def_readwrite("mass", &GaitSpec::mass)
      .def_readwrite("torque_limit", &GaitSpec::torque_limit)
      .def_property_readonly("lam", &GaitSpec::lambda)
      .def("touchdown_time", &GaitSpec::touchdown_time);

  m.def("make_gait_spec", &make_gait_spec, py::arg("step_period") = 0.5,
        py::arg("desired_velocity") = 0.2, py::arg("nominal_height") = 0.74,
        py::arg("gravity") = 9.81, py::arg("mass") = 32.0, py::arg("torque_limit") = 40.0);
  m.def(
      "desired_initial_state",
      [](const GaitSpec& spec) { return desired_initial_state(spec).vec(); }, py::arg("spec"));

  py::class_<PlannerGains>(m, "PlannerGains")
      .def_readonly("step_transition", &PlannerGains::step_transition)
      .def_readonly("input_map", &PlannerGains::input_map)
      .def_readonly("gain", &PlannerGains::gain)
      .def_readonly("riccati", &PlannerGains::riccati)
      .def_readonly("iterations", &PlannerGains::iterations)
      .def("spectral_radius", &PlannerGains::spectral_radius)
      .def("residual", [](const PlannerGains& p) { return dare_residual(p); });
  m.def(
      "build_planner",
      [](const GaitSpec& spec, const Mat2& q, double r) { return build_planner(spec, q, r); },
      py::arg("spec"), py::arg("q") = Mat2::Identity().eval(), py::arg("r") = LqrWeights{}.input);

  py::class_<PdGains>(m, "PdGains")
      .def_readonly("kp", &PdGains::kp)
      .def_readonly("kd", &PdGains::kd)
      .def_readonly("A", &PdGains::A)
      .def_readonly("B", &PdGains::B)
      .def_readonly("L", &PdGains::L)
      .def("lyapunov_norm", &PdGains::lyapunov_norm);
  m.def("make_pd_gains", &make_pd_gains, py::arg("kp") = 25.0, py::arg("kd") = 10.0);

  py::class_<AdaptiveConfig>(m, "AdaptiveConfig")
      .def(py::init<>())
      .def_readwrite("sigma", &AdaptiveConfig::sigma)
      .def_readwrite("order", &AdaptiveConfig::order)
      .def_readwrite("alpha", &AdaptiveConfig::alpha)
      .def_readwrite("beta", &AdaptiveConfig::beta)
      .def_readwrite("gamma", &AdaptiveConfig::gamma)
      .def_readwrite("delta", &AdaptiveConfig::delta)
      .def_readwrite("theta_bar", &AdaptiveConfig::theta_bar)
      .def_property_readonly("mu_lower", &AdaptiveConfig::mu_lower)
      .def_property_readonly("mu_upper", &AdaptiveConfig::mu_upper);

  py::class_<MetricsRecord>(m, "Metrics")
      .def_readonly("rmse", &MetricsRecord::rmse)
      .def_readonly("peak", &MetricsRecord::peak)
      .def_readonly("rmse_pi", &MetricsRecord::rmse_pi)
      .def_readonly("peak_pi", &MetricsRecord::peak_pi)
      .def_readonly("trq", &MetricsRecord::trq)
      .def_readonly("fit", &MetricsRecord::fit);

  m.def(
      "run_case",
      [](int case_id, const std::string& controller, double duration, int substeps) {
        auto s = builtin_scenario(case_id, parse_controller(controller));
        s.sim.duration = duration;
        s.sim.substeps = substeps;
        return run_and_pack(s);
      },
      py::arg("case_id"), py::arg("controller") = "pd_ff", py::arg("duration") = 15.0,
      py::arg("substeps") = 4,
      "Simulate a built-in deck case; returns a dict of trace columns plus 'diverged'.");
  m.def(
      "run_scenario_file",
      [](const std::string& path) { return run_and_pack(load_scenario(path)); }, py::arg("path"));
  m.def(
      "load_scenario",
      [](const std::string& text) {
        const auto s = parse_scenario(text);
        py::dict d;
        d["surface"] = s.surface_label;
        d["controller"] = std::string(to_string(s.sim.controller));
        d["duration"] = s.sim.duration;
        d["kp"] = s.kp;
        d["kd"] = s.kd;
        d["r"] = s.lqr.input;
        return d;
      },
      py::arg("text"), "Parse YAML scenario text and return its main settings.");
  m.def(
      "compute_metrics",
      [](int case_id, const std::string& controller) {
        return compute_metrics(run_scenario(builtin_scenario(case_id, parse_controller(controller))));
      },
      py::arg("case_id"), py::arg("controller") = "pd_ff");
  m.def("fourier_amplitudes", &fourier_amplitudes, py::arg("spec"), py::arg("count"));
  m.def(
      "verify",
      [](double dare_tolerance) {
        VerifyOptions opt;
        opt.dare.tolerance = dare_tolerance;
        py::list out;
        for (const auto& r : run_verification(opt)) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("dare_tolerance") = DareOptions{}.tolerance);
}
