#include "circnav/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "circnav/errors.hpp"
#include "circnav/random.hpp"

namespace circnav {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs, n));
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

MseStats mse_stats(const Trajectory& traj, double r_a, double t_burn) {
  if (traj.empty()) throw DomainError("mse_stats: empty trajectory");
  const double speed = traj.config ? traj.config->params.speed : 1.0;
  double sum_r = 0.0;
  double sum_rdot = 0.0;
  std::size_t count = 0;
  for (const auto& s : traj.samples) {
    if (s.t < t_burn) continue;
    const double dr = s.polar.r - r_a;
    const double rdot = range_rate(s.polar.theta, speed);
    sum_r += dr * dr;
    sum_rdot += rdot * rdot;
    ++count;
  }
  if (count == 0) throw DomainError("mse_stats: no samples after burn-in");
  return {sum_r / static_cast<double>(count), sum_rdot / static_cast<double>(count)};
}

double sweep_gain(const SweepOptions& opts, std::size_t index) {
  return opts.k_start + static_cast<double>(index) * opts.k_step;
}

std::uint64_t sweep_seed(const SimConfig& base, std::size_t index, std::size_t run) {
  return derive_seed(base.noise.seed, index, run);
}

SweepRow aggregate_row(double k, double r_s, std::vector<MseStats> runs, std::size_t terminated) {
  std::sort(runs.begin(), runs.end(), [](const MseStats& a, const MseStats& b) {
    return a.mse_r < b.mse_r || (a.mse_r == b.mse_r && a.mse_rdot < b.mse_rdot);
  });
  SweepRow row{k, r_s, 0.0, 0.0, runs.size(), terminated};
  for (const auto& m : runs) {
    row.mse_r += m.mse_r;
    row.mse_rdot += m.mse_rdot;
  }
  if (!runs.empty()) {
    row.mse_r /= static_cast<double>(runs.size());
    row.mse_rdot /= static_cast<double>(runs.size());
  }
  return row;
}

namespace {

void check_sweep(const SimConfig& base, const SweepOptions& opts) {
  if (opts.n_k == 0) throw ConfigError("experiment.n_k must be at least 1");
  if (opts.runs_per_k == 0) throw ConfigError("experiment.runs_per_k must be at least 1");
  if (!(opts.k_step > 0.0) && opts.n_k > 1) throw ConfigError("experiment.k_step must be positive");
  // Infeasible k_start surfaces as InfeasibleGainError.
  (void)make_params(opts.k_start, base.params.r_d, base.params.speed);
}

SimConfig cell_config(const SimConfig& base, const SweepOptions& opts, std::size_t index,
                      std::size_t run) {
  SimConfig cfg = base;
  cfg.params = make_params(sweep_gain(opts, index), base.params.r_d, base.params.speed);
  cfg.noise.seed = sweep_seed(base, index, run);
  return cfg;
}

struct RunOutcome {
  MseStats stats;
  bool terminated = false;
};

RunOutcome run_cell(const SimConfig& cfg, double t_burn) {
  const Trajectory traj = simulate(cfg);
  return {mse_stats(traj, cfg.params.r_d, t_burn), traj.status != Termination::kCompleted};
}

SweepRow fold_row(const SimConfig& base, const SweepOptions& opts, std::size_t index,
                  const std::vector<RunOutcome>& outcomes) {
  const ControllerParams p = make_params(sweep_gain(opts, index), base.params.r_d, base.params.speed);
  std::vector<MseStats> stats;
  stats.reserve(outcomes.size());
  std::size_t terminated = 0;
  for (const auto& o : outcomes) {
    stats.push_back(o.stats);
    terminated += o.terminated ? 1 : 0;
  }
  return aggregate_row(p.k, p.r_s, std::move(stats), terminated);
}

}  // namespace

SweepRow sweep_row(const SimConfig& base, const SweepOptions& opts, std::size_t index) {
  check_sweep(base, opts);
  std::vector<RunOutcome> outcomes(opts.runs_per_k);
  parallel_for(opts.runs_per_k, opts.jobs, [&](std::size_t run) {
    outcomes[run] = run_cell(cell_config(base, opts, index, run), opts.t_burn);
  });
  return fold_row(base, opts, index, outcomes);
}

SweepResult k_sweep(const SimConfig& base, const SweepOptions& opts) {
  check_sweep(base, opts);
  const std::size_t total = opts.n_k * opts.runs_per_k;
  std::vector<RunOutcome> outcomes(total);
  parallel_for(total, opts.jobs, [&](std::size_t task) {
    const std::size_t index = task / opts.runs_per_k;
    const std::size_t run = task % opts.runs_per_k;
    outcomes[task] = run_cell(cell_config(base, opts, index, run), opts.t_burn);
  });

  SweepResult result;
  result.rows.reserve(opts.n_k);
  for (std::size_t index = 0; index < opts.n_k; ++index) {
    const auto first = outcomes.begin() + static_cast<std::ptrdiff_t>(index * opts.runs_per_k);
    const std::vector<RunOutcome> cell(first, first + static_cast<std::ptrdiff_t>(opts.runs_per_k));
    result.rows.push_back(fold_row(base, opts, index, cell));
  }
  return result;
}

std::optional<double> hitting_time(const Trajectory& traj, const RecurrentSet& set) {
  for (const auto& s : traj.samples) {
    if (set.contains(s.polar)) return s.t;
  }
  return std::nullopt;
}

RecurrenceStats recurrence_trial(const SimConfig& cfg, double eps, std::size_t n_seeds,
                                 double horizon, unsigned jobs, SetVariant variant) {
  if (n_seeds == 0) throw ConfigError("recurrence_trial: at least one seed is required");
  if (!(horizon > 0.0)) throw ConfigError("recurrence_trial: horizon must be positive");
  const RecurrentSet set = recurrent_set(cfg.params, eps, variant);

  SimConfig base = cfg;
  base.t_final = horizon;
  validate(base);
  const CartesianState start = std::holds_alternative<CartesianState>(cfg.initial)
                                   ? std::get<CartesianState>(cfg.initial)
                                   : polar_to_cart(std::get<PolarState>(cfg.initial));
  const PolarState p0 = cart_to_polar(start);

  RecurrenceStats out;
  out.horizon = horizon;
  const RecurrenceBound bound = recurrence_bound(cfg.params, set, p0.r, p0.theta);
  out.bound = bound.seconds;
  out.start_inside = bound.inside;

  out.runs.resize(n_seeds);
  parallel_for(n_seeds, jobs, [&](std::size_t i) {
    SimConfig run = base;
    run.noise.seed = derive_seed(cfg.noise.seed, 0, i);
    const auto hit = hitting_time(simulate(run), set);
    out.runs[i] = {run.noise.seed, hit.value_or(horizon), !hit.has_value()};
  });

  std::vector<double> times;
  for (const auto& h : out.runs) {
    if (h.censored) {
      ++out.censored;
    } else {
      times.push_back(h.time);
    }
  }
  std::sort(times.begin(), times.end());
  if (!times.empty()) {
    double sum = 0.0;
    for (double t : times) sum += t;
    out.mean = sum / static_cast<double>(times.size());
    if (times.size() > 1) {
      double ss = 0.0;
      for (double t : times) ss += (t - out.mean) * (t - out.mean);
      out.stddev = std::sqrt(ss / static_cast<double>(times.size() - 1));
    }
  }
  return out;
}

}  // namespace circnav
