#include "circnav_cli/run_config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <string_view>

#include "circnav/control.hpp"
#include "circnav/errors.hpp"
#include "circnav/geometry.hpp"

namespace circnav::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    throw ConfigError("invalid number for " + key + ": '" + text + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid integer for " + key + ": '" + text + "'");
  }
  return v;
}

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

const char* mode_name(NoiseMode m) {
  switch (m) {
    case NoiseMode::kNone: return "none";
    case NoiseMode::kMeasurement: return "measurement";
    case NoiseMode::kSde: return "sde";
  }
  return "?";
}

const char* policy_name(InnerPolicy p) {
  return p == InnerPolicy::kCombined ? "combined" : "zero-inside";
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) return parse_double(t, "angle");

  double factor = 1.0;
  const std::string head = trim(std::string_view(t).substr(0, pi_pos));
  if (!head.empty()) {
    if (head.back() != '*') throw ConfigError("invalid angle: '" + text + "'");
    factor = parse_double(head.substr(0, head.size() - 1), "angle");
  }
  double divisor = 1.0;
  const std::string tail = trim(std::string_view(t).substr(pi_pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("invalid angle: '" + text + "'");
    divisor = parse_double(tail.substr(1), "angle");
    if (divisor == 0.0) throw ConfigError("invalid angle: division by zero in '" + text + "'");
  }
  return factor * kPi / divisor;
}

void set_value(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
  const std::string name = section + "." + key;
  const auto num = [&] { return parse_double(value, name); };
  const auto count = [&] { return parse_integer<std::size_t>(value, name); };

  if (section == "controller") {
    if (key == "k") return void(cfg.k = num());
    if (key == "r_d") return void(cfg.r_d = num());
    if (key == "V") return void(cfg.speed = num());
  } else if (section == "noise") {
    if (key == "sigma") return void(cfg.sigma = num());
    if (key == "seed") return void(cfg.seed = parse_integer<std::uint64_t>(value, name));
    if (key == "mode") {
      const std::string v = trim(value);
      if (v == "none") return void(cfg.mode = NoiseMode::kNone);
      if (v == "measurement") return void(cfg.mode = NoiseMode::kMeasurement);
      if (v == "sde") return void(cfg.mode = NoiseMode::kSde);
      throw ConfigError("noise.mode must be one of none, measurement, sde (got '" + v + "')");
    }
  } else if (section == "wind") {
    if (key == "speed") return void(cfg.wind_speed = num());
    if (key == "direction") return void(cfg.wind_direction = parse_angle(value));
  } else if (section == "sim") {
    if (key == "t_final") return void(cfg.t_final = num());
    if (key == "dt_control") return void(cfg.dt_control = num());
    if (key == "dt_integ") return void(cfg.dt_integ = num());
    if (key == "initial_r") return void(cfg.initial_r = num());
    if (key == "initial_theta") return void(cfg.initial_theta = parse_angle(value));
    if (key == "inner_policy") {
      const std::string v = trim(value);
      if (v == "combined") return void(cfg.inner_policy = InnerPolicy::kCombined);
      if (v == "zero-inside") return void(cfg.inner_policy = InnerPolicy::kZeroInside);
      throw ConfigError("sim.inner_policy must be combined or zero-inside (got '" + v + "')");
    }
  } else if (section == "experiment") {
    if (key == "k_start") return void(cfg.k_start = num());
    if (key == "k_step") return void(cfg.k_step = num());
    if (key == "n_k") return void(cfg.n_k = count());
    if (key == "runs_per_k") return void(cfg.runs_per_k = count());
    if (key == "epsilon") return void(cfg.epsilon = num());
    if (key == "horizon") return void(cfg.horizon = num());
  } else {
    throw ConfigError("unknown config section [" + section + "]");
  }
  throw ConfigError("unknown config key " + name);
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("config key '" + section + "' must appear inside a [section]");
    }
    for (const auto& [key, value] : body) {
      set_value(base, section, key, value.get_value<std::string>());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override must look like section.key=value (got '" + assignment + "')");
  }
  set_value(cfg, trim(std::string_view(assignment).substr(0, dot)),
            trim(std::string_view(assignment).substr(dot + 1, eq - dot - 1)),
            assignment.substr(eq + 1));
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  return {
      {"controller.k", fmt_double(c.k)},
      {"controller.r_d", fmt_double(c.r_d)},
      {"controller.V", fmt_double(c.speed)},
      {"noise.sigma", fmt_double(c.sigma)},
      {"noise.mode", mode_name(c.mode)},
      {"noise.seed", std::to_string(c.seed)},
      {"wind.speed", fmt_double(c.wind_speed)},
      {"wind.direction", fmt_double(c.wind_direction)},
      {"sim.t_final", fmt_double(c.t_final)},
      {"sim.dt_control", fmt_double(c.dt_control)},
      {"sim.dt_integ", fmt_double(c.dt_integ)},
      {"sim.initial_r", fmt_double(c.initial_r)},
      {"sim.initial_theta", fmt_double(c.initial_theta)},
      {"sim.inner_policy", policy_name(c.inner_policy)},
      {"experiment.k_start", fmt_double(c.k_start)},
      {"experiment.k_step", fmt_double(c.k_step)},
      {"experiment.n_k", std::to_string(c.n_k)},
      {"experiment.runs_per_k", std::to_string(c.runs_per_k)},
      {"experiment.epsilon", fmt_double(c.epsilon)},
      {"experiment.horizon", fmt_double(c.horizon)},
  };
}

SimConfig to_sim_config(const RunConfig& c) {
  SimConfig s;
  s.params = make_params(c.k, c.r_d, c.speed);
  s.noise = {c.sigma, c.mode, c.seed};
  if (c.wind_speed > 0.0) {
    s.wind = WindModel{c.wind_speed, wrap_angle(c.wind_direction)};
  } else if (c.wind_speed < 0.0) {
    throw ConfigError("wind.speed must be >= 0");
  }
  s.t_final = c.t_final;
  s.dt_control = c.dt_control;
  s.dt_integ = c.dt_integ;
  if (!(c.initial_r > 0.0)) throw ConfigError("sim.initial_r must be positive");
  s.initial = PolarState{c.initial_r, wrap_angle(c.initial_theta)};
  s.inner_policy = c.inner_policy;
  validate(s);
  return s;
}

SweepOptions to_sweep_options(const RunConfig& c, unsigned jobs) {
  SweepOptions o;
  o.k_start = c.k_start;
  o.k_step = c.k_step;
  o.n_k = c.n_k;
  o.runs_per_k = c.runs_per_k;
  o.jobs = jobs;
  return o;
}

}  // namespace circnav::cli
