#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "circnav/dynamics.hpp"
#include "circnav/experiments.hpp"

namespace circnav::cli {

/// Flat, sectioned run configuration as read from an INI-style file:
///
///   [controller] k, r_d, V
///   [noise]      sigma, mode (none|measurement|sde), seed
///   [wind]       speed, direction
///   [sim]        t_final, dt_control, dt_integ, initial_r, initial_theta,
///                inner_policy (combined|zero-inside)
///   [experiment] k_start, k_step, n_k, runs_per_k, epsilon, horizon
///
/// Angles are radians; they may also be written with pi, e.g. "pi/4",
/// "1.5*pi", "3*pi/2".
struct RunConfig {
  double k = 1.0;
  double r_d = 10.0;
  double speed = 1.0;

  double sigma = 0.5;
  NoiseMode mode = NoiseMode::kMeasurement;
  std::uint64_t seed = 0;

  double wind_speed = 0.0;
  double wind_direction = 0.0;

  double t_final = 350.0;
  double dt_control = 0.5;
  double dt_integ = 0.01;
  double initial_r = 20.0;
  double initial_theta = 0.0;
  InnerPolicy inner_policy = InnerPolicy::kCombined;

  double k_start = 0.1;
  double k_step = 0.15;
  std::size_t n_k = 20;
  std::size_t runs_per_k = 20;
  double epsilon = 0.05;
  double horizon = 500.0;
};

/// Parses INI text. Unknown sections or keys and malformed values throw
/// ConfigError.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Applies one "section.key=value" override.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Sets one key; throws ConfigError for unknown keys or bad values.
void set_value(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value);

/// Effective configuration as ordered ("section.key", value) pairs, with
/// values formatted so that parsing them back gives the same configuration.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

/// Simulation configuration (controller params via make_params, so an
/// infeasible gain throws InfeasibleGainError).
SimConfig to_sim_config(const RunConfig& cfg);

SweepOptions to_sweep_options(const RunConfig& cfg, unsigned jobs);

/// Parses a radian value, accepting the pi forms described above.
double parse_angle(const std::string& text);

}  // namespace circnav::cli
