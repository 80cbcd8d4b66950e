#include "circnav/dynamics.hpp"

#include <cmath>
#include <string>

#include "circnav/errors.hpp"
#include "circnav/random.hpp"

namespace circnav {
namespace {

struct Derivative {
  double dx, dy, dpsi;
};

Derivative cartesian_rhs(double psi, double u, double speed, double wx, double wy) {
  return {speed * std::cos(psi) + wx, speed * std::sin(psi) + wy, u};
}

CartesianState initial_cartesian(const InitialState& init) {
  if (const auto* c = std::get_if<CartesianState>(&init)) {
    return {c->x, c->y, wrap_angle(c->psi)};
  }
  return polar_to_cart(std::get<PolarState>(init));
}

std::int64_t step_count(const SimConfig& cfg) {
  return std::llround(cfg.t_final / cfg.dt_integ);
}

double measured_range_rate(const SimConfig& cfg, const CartesianState& cart,
                           const PolarState& polar) {
  if (!cfg.wind) {
    return range_rate(polar.theta, cfg.params.speed);
  }
  return true_range_rate(cart, cfg.params.speed, cfg.wind);
}

Trajectory simulate_cartesian(const SimConfig& cfg) {
  const auto& p = cfg.params;
  const CounterRng rng(cfg.noise.seed);
  const WindModel wind = cfg.wind.value_or(WindModel{});
  const std::int64_t n = step_count(cfg);
  const std::int64_t per = substeps_per_control(cfg);
  const bool noisy = cfg.noise.mode == NoiseMode::kMeasurement && cfg.noise.sigma > 0.0;

  Trajectory traj;
  traj.config = cfg;
  traj.samples.reserve(static_cast<std::size_t>(n + 1));

  CartesianState state = initial_cartesian(cfg.initial);
  double u = 0.0;
  double nu = 0.0;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * cfg.dt_integ;
    const double r = std::hypot(state.x, state.y);
    if (!(r >= kMinRange)) {
      traj.status = Termination::kSingularity;
      break;
    }
    const PolarState polar = cart_to_polar(state);
    if (i % per == 0) {
      const auto interval = static_cast<std::uint64_t>(i / per);
      nu = noisy ? cfg.noise.sigma * rng.normal(streams::kMeasurement, interval) : 0.0;
      u = control_measured(p, polar.r, measured_range_rate(cfg, state, polar) + nu,
                           cfg.inner_policy);
    }
    traj.samples.push_back({t, state, polar, u, nu});
    if (i == n) break;
    state = step_cartesian(state, u, p.speed, wind, cfg.dt_integ);
  }
  return traj;
}

Trajectory simulate_sde(const SimConfig& cfg) {
  const auto& p = cfg.params;
  const CounterRng rng(cfg.noise.seed);
  const std::int64_t n = step_count(cfg);
  const double dt = cfg.dt_integ;
  const double diffusion = p.k * cfg.noise.sigma;

  Trajectory traj;
  traj.config = cfg;
  traj.samples.reserve(static_cast<std::size_t>(n + 1));

  const CartesianState start = initial_cartesian(cfg.initial);
  double r = std::hypot(start.x, start.y);
  double theta = cart_to_polar(start).theta;
  double phi = reference_angle(start);
  for (std::int64_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (!(r >= kMinRange)) {
      traj.status = Termination::kSingularity;
      break;
    }
    const double u = control_bearing(p, r, theta, cfg.inner_policy);
    const double z = cfg.noise.sigma > 0.0 ? rng.normal(streams::kDiffusion, static_cast<std::uint64_t>(i)) : 0.0;
    const CartesianState cart{r * std::cos(phi), r * std::sin(phi), wrap_angle(theta - kPi + phi)};
    traj.samples.push_back({t, cart, {r, theta}, u, cfg.noise.sigma * z});
    if (i == n) break;
    const double sin_t = std::sin(theta);
    phi = std::remainder(phi - (p.speed / r) * sin_t * dt, kTwoPi);
    const PolarState next = euler_maruyama_step({r, theta}, -p.speed * std::cos(theta),
                                                p.speed * sin_t / r + u, diffusion, dt, z);
    r = next.r;
    theta = next.theta;
  }
  return traj;
}

}  // namespace

void validate(const SimConfig& cfg) {
  const auto& p = cfg.params;
  if (!(p.k > 0.0) || !(p.r_d > 0.0) || !(p.speed > 0.0)) {
    throw ConfigError("controller parameters must be positive (construct them with make_params)");
  }
  if (!(cfg.dt_integ > 0.0)) throw ConfigError("sim.dt_integ must be positive");
  if (!(cfg.dt_control >= cfg.dt_integ)) throw ConfigError("sim.dt_control must be >= sim.dt_integ");
  if (!(cfg.t_final >= cfg.dt_control)) throw ConfigError("sim.t_final must be >= sim.dt_control");
  const double ratio = cfg.dt_control / cfg.dt_integ;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw ConfigError("sim.dt_control must be an integer multiple of sim.dt_integ");
  }
  if (!(cfg.noise.sigma >= 0.0) || !std::isfinite(cfg.noise.sigma)) {
    throw ConfigError("noise.sigma must be finite and >= 0");
  }
  if (cfg.wind) {
    if (!(cfg.wind->speed >= 0.0) || !std::isfinite(cfg.wind->speed)) {
      throw ConfigError("wind.speed must be finite and >= 0");
    }
    if (!std::isfinite(cfg.wind->direction)) throw ConfigError("wind.direction must be finite");
    if (cfg.noise.mode == NoiseMode::kSde) {
      throw ConfigError(
          "unsupported combination: wind cannot be simulated in sde mode (no polar reduction "
          "exists with wind); use noise.mode = measurement or none");
    }
  }
  const CartesianState start = initial_cartesian(cfg.initial);
  if (!(std::hypot(start.x, start.y) >= kMinRange)) {
    throw ConfigError("initial state must lie away from the target");
  }
}

std::int64_t substeps_per_control(const SimConfig& cfg) {
  return std::llround(cfg.dt_control / cfg.dt_integ);
}

CartesianState step_cartesian(const CartesianState& s, double u, double speed,
                              const WindModel& wind, double dt) {
  const double wx = wind.speed * std::cos(wind.direction);
  const double wy = wind.speed * std::sin(wind.direction);
  const double h = 0.5 * dt;
  const Derivative k1 = cartesian_rhs(s.psi, u, speed, wx, wy);
  const Derivative k2 = cartesian_rhs(s.psi + h * k1.dpsi, u, speed, wx, wy);
  const Derivative k3 = cartesian_rhs(s.psi + h * k2.dpsi, u, speed, wx, wy);
  const Derivative k4 = cartesian_rhs(s.psi + dt * k3.dpsi, u, speed, wx, wy);
  const double w = dt / 6.0;
  return {s.x + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.y + w * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
          wrap_angle(s.psi + w * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi))};
}

PolarState euler_maruyama_step(const PolarState& s, double dr, double dtheta, double diffusion,
                               double dt, double z) {
  return {s.r + dr * dt, wrap_angle(s.theta + dtheta * dt - diffusion * std::sqrt(dt) * z)};
}

double true_range_rate(const CartesianState& s, double speed, const std::optional<WindModel>& wind) {
  const double r = std::hypot(s.x, s.y);
  if (!(r > 0.0)) throw DomainError("true_range_rate: zero range");
  double vx = speed * std::cos(s.psi);
  double vy = speed * std::sin(s.psi);
  if (wind) {
    vx += wind->speed * std::cos(wind->direction);
    vy += wind->speed * std::sin(wind->direction);
  }
  return (s.x * vx + s.y * vy) / r;
}

Trajectory simulate(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.noise.mode == NoiseMode::kSde) {
    return simulate_sde(cfg);
  }
  return simulate_cartesian(cfg);
}

Trajectory simulate_polar_reference(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.wind) throw ConfigError("simulate_polar_reference: wind is not supported in polar form");
  const auto& p = cfg.params;
  const std::int64_t n = step_count(cfg);
  const std::int64_t per = substeps_per_control(cfg);
  const double dt = cfg.dt_integ;

  const CartesianState start = initial_cartesian(cfg.initial);
  PolarState s = cart_to_polar(start);
  double phi = reference_angle(start);

  const auto rhs = [&p](double r, double theta, double u) {
    struct {
      double dr, dtheta, dphi;
    } d{-p.speed * std::cos(theta), p.speed * std::sin(theta) / r + u,
        -(p.speed / r) * std::sin(theta)};
    return d;
  };

  Trajectory traj;
  traj.config = cfg;
  traj.config->noise.mode = NoiseMode::kNone;
  traj.samples.reserve(static_cast<std::size_t>(n + 1));
  double u = 0.0;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (!(s.r >= kMinRange)) {
      traj.status = Termination::kSingularity;
      break;
    }
    if (i % per == 0) {
      u = control_measured(p, s.r, range_rate(s.theta, p.speed), cfg.inner_policy);
    }
    const CartesianState cart{s.r * std::cos(phi), s.r * std::sin(phi),
                              wrap_angle(s.theta - kPi + phi)};
    traj.samples.push_back({t, cart, s, u, 0.0});
    if (i == n) break;
    const auto k1 = rhs(s.r, s.theta, u);
    const auto k2 = rhs(s.r + 0.5 * dt * k1.dr, s.theta + 0.5 * dt * k1.dtheta, u);
    const auto k3 = rhs(s.r + 0.5 * dt * k2.dr, s.theta + 0.5 * dt * k2.dtheta, u);
    const auto k4 = rhs(s.r + dt * k3.dr, s.theta + dt * k3.dtheta, u);
    s.r += dt / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    s.theta = wrap_angle(s.theta + dt / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta));
    phi = std::remainder(phi + dt / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi), kTwoPi);
  }
  return traj;
}

Trajectory replay_noise(const Trajectory& traj) {
  if (!traj.config) {
    throw ConfigError("replay_noise: trajectory carries no configuration metadata");
  }
  return simulate(*traj.config);
}

}  // namespace circnav
