#include "deckwalk/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace deckwalk {

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

void check_keys(const YAML::Node& map, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) throw ScenarioError(line_of(map), fmt::format("'{}' must be a mapping", section));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ScenarioError(line_of(kv.first),
                          fmt::format("unknown key '{}' in section '{}'", key, section));
    }
  }
}

template <class T>
void read(const YAML::Node& map, const char* key, T& out) {
  const auto node = map[key];
  if (!node) return;
  try {
    out = node.as<T>();
  } catch (const YAML::Exception&) {
    throw ScenarioError(line_of(node), fmt::format("bad value for '{}'", key));
  }
}

AxisSinusoids read_axis(const YAML::Node& node, const std::string& name) {
  check_keys(node, name, {"bias", "terms"});
  AxisSinusoids axis;
  read(node, "bias", axis.bias);
  if (const auto terms = node["terms"]) {
    if (!terms.IsSequence()) throw ScenarioError(line_of(terms), "'terms' must be a list");
    for (const auto& term : terms) {
      check_keys(term, name + ".terms", {"amplitude", "frequency", "phase"});
      SinusoidTerm t;
      read(term, "amplitude", t.amplitude);
      read(term, "frequency", t.frequency);
      read(term, "phase", t.phase);
      axis.terms.push_back(t);
    }
  }
  return axis;
}

void read_surface(const YAML::Node& node, Scenario& s) {
  check_keys(node, "surface", {"case", "horizontal", "vertical"});
  const auto c = node["case"];
  const bool custom = node["horizontal"] || node["vertical"];
  if (c && custom) {
    throw ScenarioError(line_of(c), "give either 'case' or custom 'horizontal'/'vertical' terms");
  }
  if (c) {
    const auto name = c.as<std::string>();
    int id = 0;
    if (name == "case1" || name == "1") id = 1;
    else if (name == "case2" || name == "2") id = 2;
    else if (name == "case3" || name == "3") id = 3;
    else throw ScenarioError(line_of(c), fmt::format("unknown surface case '{}'", name));
    s.sim.surface = builtin_case(id);
    s.surface_label = fmt::format("case{}", id);
    return;
  }
  SinusoidSum sum;
  if (const auto h = node["horizontal"]) sum.horizontal = read_axis(h, "surface.horizontal");
  if (const auto v = node["vertical"]) sum.vertical = read_axis(v, "surface.vertical");
  s.sim.surface = sum;
  s.surface_label = "custom";
}

Scenario from_yaml(const YAML::Node& root) {
  Scenario s;
  if (!root || root.IsNull()) return s;
  check_keys(root, "top level",
             {"gait", "surface", "height", "controller", "pd", "lqr", "adaptive", "sim", "output"});

  if (const auto g = root["gait"]) {
    check_keys(g, "gait", {"step_period", "desired_velocity", "nominal_height", "gravity", "mass",
                           "torque_limit"});
    read(g, "step_period", s.gait.step_period);
    read(g, "desired_velocity", s.gait.desired_velocity);
    read(g, "nominal_height", s.gait.nominal_height);
    read(g, "gravity", s.gait.gravity);
    read(g, "mass", s.gait.mass);
    read(g, "torque_limit", s.gait.torque_limit);
    try {
      s.gait = make_gait_spec(s.gait.step_period, s.gait.desired_velocity, s.gait.nominal_height,
                              s.gait.gravity, s.gait.mass, s.gait.torque_limit);
    } catch (const InvalidParameter& e) {
      throw ScenarioError(line_of(g), e.what());
    }
  }
  s.sim.vertical.nominal_height = s.gait.nominal_height;

  if (const auto surf = root["surface"]) read_surface(surf, s);

  if (const auto h = root["height"]) {
    check_keys(h, "height", {"wobble_amplitude", "wobble_frequency"});
    read(h, "wobble_amplitude", s.sim.vertical.wobble_amplitude);
    read(h, "wobble_frequency", s.sim.vertical.wobble_frequency);
  }

  if (const auto c = root["controller"]) {
    try {
      s.sim.controller = parse_controller(c.as<std::string>());
    } catch (const Error& e) {
      throw ScenarioError(line_of(c), e.what());
    }
  }

  if (const auto pd = root["pd"]) {
    check_keys(pd, "pd", {"kp", "kd"});
    read(pd, "kp", s.kp);
    read(pd, "kd", s.kd);
  }

  if (const auto lqr = root["lqr"]) {
    check_keys(lqr, "lqr", {"q", "r"});
    read(lqr, "r", s.lqr.input);
    if (const auto q = lqr["q"]) {
      if (!q.IsSequence() || q.size() != 2) {
        throw ScenarioError(line_of(q), "'q' must be a 2x2 list of lists");
      }
      for (int i = 0; i < 2; ++i) {
        if (!q[i].IsSequence() || q[i].size() != 2) {
          throw ScenarioError(line_of(q), "'q' must be a 2x2 list of lists");
        }
        for (int j = 0; j < 2; ++j) s.lqr.state(i, j) = q[i][j].as<double>();
      }
    }
  }

  if (const auto a = root["adaptive"]) {
    check_keys(a, "adaptive", {"sigma", "order", "alpha", "beta", "gamma", "delta", "theta_bar",
                               "initial_covariance"});
    read(a, "sigma", s.adaptive.sigma);
    read(a, "order", s.adaptive.order);
    read(a, "alpha", s.adaptive.alpha);
    read(a, "beta", s.adaptive.beta);
    read(a, "gamma", s.adaptive.gamma);
    read(a, "delta", s.adaptive.delta);
    read(a, "theta_bar", s.adaptive.theta_bar);
    read(a, "initial_covariance", s.adaptive.initial_covariance);
  }

  if (const auto sim = root["sim"]) {
    check_keys(sim, "sim", {"duration", "sample_rate", "substeps", "saturate", "divergence_limit",
                            "noise_stddev", "seed"});
    read(sim, "duration", s.sim.duration);
    read(sim, "sample_rate", s.sim.sample_rate);
    read(sim, "substeps", s.sim.substeps);
    read(sim, "saturate", s.sim.saturate);
    read(sim, "divergence_limit", s.sim.divergence_limit);
    read(sim, "noise_stddev", s.sim.noise_stddev);
    read(sim, "seed", s.sim.seed);
  }
  s.adaptive.sample_period = s.sim.sample_period();

  if (const auto out = root["output"]) {
    check_keys(out, "output", {"dir", "plots"});
    read(out, "dir", s.output_dir);
    read(out, "plots", s.write_plots);
  }

  try {
    validate(s.sim, s.gait);
    validate(s.adaptive);
    make_pd_gains(s.kp, s.kd);
  } catch (const InvalidParameter& e) {
    throw ScenarioError(line_of(root), e.what());
  }
  return s;
}

}  // namespace

ScenarioError::ScenarioError(int line, const std::string& message)
    : InvalidInput(fmt::format("line {}: {}", line, message)), line_(line) {}

Scenario builtin_scenario(int case_id, Controller controller) {
  Scenario s;
  s.sim.surface = builtin_case(case_id);
  s.surface_label = fmt::format("case{}", case_id);
  s.sim.controller = controller;
  s.sim.vertical.nominal_height = s.gait.nominal_height;
  return s;
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError(e.mark.line + 1, e.msg);
  }
  return from_yaml(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read scenario " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

SimTrace run_scenario(const Scenario& s) {
  const auto planner = build_planner(s.gait, s.lqr);
  const auto gains = make_pd_gains(s.kp, s.kd);
  auto adaptive = s.adaptive;
  adaptive.sample_period = s.sim.sample_period();
  return run_simulation(s.sim, s.gait, planner, gains, adaptive);
}

}  // namespace deckwalk
