#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "circnav/analysis.hpp"
#include "circnav/dynamics.hpp"

namespace circnav {

/// Time averages of (r - r_a)^2 and rdot^2 over one run. rdot is the true
/// -V cos(theta), never the noisy measurement.
struct MseStats {
  double mse_r = 0.0;
  double mse_rdot = 0.0;
};

/// Averages over samples with t >= t_burn. Throws DomainError on an empty
/// trajectory (or an empty post burn-in segment).
MseStats mse_stats(const Trajectory& traj, double r_a, double t_burn = 0.0);

struct SweepOptions {
  double k_start = 0.1;
  double k_step = 0.15;
  std::size_t n_k = 20;
  std::size_t runs_per_k = 20;
  double t_burn = 0.0;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned jobs = 0;
};

struct SweepRow {
  double k = 0.0;
  double r_s = 0.0;
  double mse_r = 0.0;
  double mse_rdot = 0.0;
  std::size_t runs = 0;
  std::size_t terminated = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Gain of row `index`: k_start + index * k_step.
double sweep_gain(const SweepOptions& opts, std::size_t index);

/// Seed of run `run` in row `index`.
std::uint64_t sweep_seed(const SimConfig& base, std::size_t index, std::size_t run);

/// Combines per-run statistics into one row. The result does not depend on
/// the order of `runs`.
SweepRow aggregate_row(double k, double r_s, std::vector<MseStats> runs, std::size_t terminated);

/// One row of the sweep, reproducible in isolation.
SweepRow sweep_row(const SimConfig& base, const SweepOptions& opts, std::size_t index);

/// Sweeps k over n_k values, running runs_per_k seeded simulations for each.
/// Throws InfeasibleGainError if k_start < 1/r_d, ConfigError for empty
/// sweeps.
SweepResult k_sweep(const SimConfig& base, const SweepOptions& opts);

/// First sample time at which the trajectory lies in the set, or nullopt if it
/// never does (censored).
std::optional<double> hitting_time(const Trajectory& traj, const RecurrentSet& set);

struct HitRecord {
  std::uint64_t seed = 0;
  double time = 0.0;  ///< hitting time; equals the horizon when censored
  bool censored = false;
};

struct RecurrenceStats {
  std::vector<HitRecord> runs;
  double mean = 0.0;  ///< over uncensored runs
  double stddev = 0.0;  ///< sample standard deviation over uncensored runs
  std::size_t censored = 0;
  double bound = 0.0;
  bool start_inside = false;  ///< trivial case: the bound is 0
  double horizon = 0.0;

  bool mean_within_bound() const { return mean <= bound; }
};

/// Monte Carlo estimate of the expected recurrence time into the
/// full-annulus set for eps, next to the analytic bound. Each seed runs for
/// `horizon` seconds. Throws NoSolutionError for infeasible eps.
RecurrenceStats recurrence_trial(const SimConfig& cfg, double eps, std::size_t n_seeds,
                                 double horizon, unsigned jobs = 0,
                                 SetVariant variant = SetVariant::kFullAnnulus);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
/// rethrown for the lowest failing index.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace circnav
