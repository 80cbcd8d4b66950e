#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "circnav/control.hpp"
#include "circnav/geometry.hpp"

namespace circnav {

enum class NoiseMode {
  kNone,         ///< controller sees the exact range rate
  kMeasurement,  ///< one N(0, sigma^2) range-rate error per control update
  kSde,          ///< Euler-Maruyama on the polar diffusion
};

struct NoiseModel {
  double sigma = 0.5;
  NoiseMode mode = NoiseMode::kMeasurement;
  std::uint64_t seed = 0;
};

/// Constant wind of speed W_s blowing toward direction w_d.
struct WindModel {
  double speed = 0.0;
  double direction = 0.0;
};

using InitialState = std::variant<PolarState, CartesianState>;

/// Everything a run depends on. A PolarState initial condition is placed at
/// reference angle phi = 0, i.e. on the +x axis.
struct SimConfig {
  ControllerParams params;
  NoiseModel noise;
  std::optional<WindModel> wind;
  double t_final = 350.0;
  double dt_control = 0.5;
  double dt_integ = 0.01;
  InitialState initial = PolarState{20.0, 0.0};
  InnerPolicy inner_policy = InnerPolicy::kCombined;
};

/// Range below which the run is stopped as a collision with the target.
inline constexpr double kMinRange = 1e-6;

struct TrajectorySample {
  double t = 0.0;
  CartesianState cart;
  PolarState polar;
  /// Heading rate applied over [t, t + dt_integ). In SDE mode this is the drift
  /// control u(r, theta); the diffusion enters separately through nu.
  double u = 0.0;
  /// Range-rate error seen by the controller at this sample (measurement
  /// mode), or sigma * Z for the substep's Brownian increment (SDE mode).
  double nu = 0.0;
};

enum class Termination {
  kCompleted,
  kSingularity,  ///< range fell below kMinRange
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// Snapshot of the generating configuration; absent for hand-built series.
  std::optional<SimConfig> config;
  Termination status = Termination::kCompleted;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

/// Throws ConfigError describing the first violated constraint.
void validate(const SimConfig& cfg);

/// Control input period in integration substeps.
std::int64_t substeps_per_control(const SimConfig& cfg);

/// One classical RK4 step of x' = V cos psi + W_s cos w_d, y' = V sin psi +
/// W_s sin w_d, psi' = u with u held constant. psi is wrapped on return.
CartesianState step_cartesian(const CartesianState& s, double u, double speed,
                              const WindModel& wind, double dt);

/// One Euler-Maruyama step of d(r, theta) = (dr, dtheta) dt + (0, -diffusion) dxi
/// with standard normal draw z; theta is wrapped on return.
PolarState euler_maruyama_step(const PolarState& s, double dr, double dtheta, double diffusion,
                               double dt, double z);

/// Ground-relative range rate (x x' + y y')/r, including the wind drift.
double true_range_rate(const CartesianState& s, double speed, const std::optional<WindModel>& wind);

/// Runs the closed loop described by cfg. Pure function of cfg.
Trajectory simulate(const SimConfig& cfg);

/// Deterministic closed loop integrated directly on (r, theta) with RK4 and
/// the same zero-order hold; reference for the Cartesian path. Requires
/// NoiseMode::kNone semantics (noise settings are ignored) and no wind.
Trajectory simulate_polar_reference(const SimConfig& cfg);

/// Re-simulates from the trajectory's stored configuration. Throws
/// ConfigError when the metadata is missing.
Trajectory replay_noise(const Trajectory& traj);

}  // namespace circnav
