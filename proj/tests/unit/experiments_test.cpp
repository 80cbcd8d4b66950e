#include "circnav/experiments.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

#include "circnav/errors.hpp"

namespace circnav {
namespace {

Trajectory synthetic(std::function<PolarState(double)> path, double t_end, double dt) {
  Trajectory traj;
  for (int i = 0; i * dt <= t_end + 1e-12; ++i) {
    TrajectorySample s;
    s.t = i * dt;
    s.polar = path(s.t);
    s.cart = polar_to_cart(s.polar);
    traj.samples.push_back(s);
  }
  return traj;
}

TEST(MseStats, PerfectOrbit) {
  const auto traj = synthetic([](double) { return PolarState{10, kPi / 2}; }, 50, 0.5);
  const auto m = mse_stats(traj, 10);
  EXPECT_EQ(m.mse_r, 0.0);
  EXPECT_NEAR(m.mse_rdot, 0.0, 1e-30);
}

TEST(MseStats, ConstantOffset) {
  const auto traj = synthetic([](double) { return PolarState{11, kPi / 2}; }, 50, 0.5);
  EXPECT_DOUBLE_EQ(mse_stats(traj, 10).mse_r, 1.0);
}

TEST(MseStats, RadialMotionSaturatesRangeRate) {
  const auto radial = synthetic([](double t) { return PolarState{30 - t, 0.0}; }, 20, 0.1);
  EXPECT_DOUBLE_EQ(mse_stats(radial, 10).mse_rdot, 1.0);
  // a straight pass-by is only partly radial
  Trajectory pass;
  for (int i = 0; i <= 400; ++i) {
    TrajectorySample s;
    s.t = i * 0.1;
    s.cart = {-20 + s.t, 5, 0};
    s.polar = cart_to_polar(s.cart);
    pass.samples.push_back(s);
  }
  const double m = mse_stats(pass, 10).mse_rdot;
  EXPECT_LT(m, 1.0);
  EXPECT_GT(m, 0.0);
}

TEST(MseStats, BurnInAndEmpty) {
  const auto traj = synthetic([](double t) { return PolarState{t < 10 ? 20.0 : 10.0, kPi / 2}; }, 50, 0.5);
  EXPECT_GT(mse_stats(traj, 10).mse_r, 0.0);
  EXPECT_EQ(mse_stats(traj, 10, 10).mse_r, 0.0);
  EXPECT_THROW(mse_stats(Trajectory{}, 10), DomainError);
  EXPECT_THROW(mse_stats(traj, 10, 1000), DomainError);
}

TEST(AggregateRow, OrderIndependent) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> d(0, 5);
  std::vector<MseStats> runs;
  for (int i = 0; i < 50; ++i) runs.push_back({d(gen), d(gen)});
  const SweepRow a = aggregate_row(1, 2, runs, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(runs.begin(), runs.end(), gen);
    const SweepRow b = aggregate_row(1, 2, runs, 0);
    ASSERT_EQ(a.mse_r, b.mse_r);
    ASSERT_EQ(a.mse_rdot, b.mse_rdot);
  }
}

SimConfig short_base() {
  SimConfig cfg;
  cfg.params = make_params(1.0, 10, 1);
  cfg.noise = {0.5, NoiseMode::kMeasurement, 11};
  cfg.t_final = 60;
  return cfg;
}

TEST(KSweep, GainLadderAndRowCount) {
  SweepOptions opts;
  opts.n_k = 20;
  opts.runs_per_k = 1;
  SimConfig cfg = short_base();
  cfg.t_final = 5;
  const auto res = k_sweep(cfg, opts);
  ASSERT_EQ(res.rows.size(), 20u);
  EXPECT_DOUBLE_EQ(res.rows.front().k, 0.1);
  EXPECT_NEAR(res.rows.back().k, 2.95, 1e-12);
  EXPECT_EQ(res.rows.front().r_s, 0.0);
  for (std::size_t i = 1; i < res.rows.size(); ++i) ASSERT_GT(res.rows[i].k, res.rows[i - 1].k);
}

TEST(KSweep, DeterministicWithoutNoise) {
  SimConfig cfg = short_base();
  cfg.noise.sigma = 0;
  SweepOptions opts;
  opts.n_k = 4;
  opts.runs_per_k = 1;
  const auto a = k_sweep(cfg, opts);
  const auto b = k_sweep(cfg, opts);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    ASSERT_EQ(a.rows[i].mse_r, b.rows[i].mse_r);
    ASSERT_EQ(a.rows[i].mse_rdot, b.rows[i].mse_rdot);
  }
}

TEST(KSweep, CellReproducibleInIsolationAndAcrossJobCounts) {
  SimConfig cfg = short_base();
  SweepOptions opts;
  opts.n_k = 3;
  opts.runs_per_k = 4;
  opts.jobs = 1;
  const auto serial = k_sweep(cfg, opts);
  opts.jobs = 4;
  const auto parallel = k_sweep(cfg, opts);
  for (std::size_t i = 0; i < opts.n_k; ++i) {
    const SweepRow single = sweep_row(cfg, opts, i);
    EXPECT_EQ(single.mse_r, serial.rows[i].mse_r);
    EXPECT_EQ(single.mse_rdot, serial.rows[i].mse_rdot);
    EXPECT_EQ(parallel.rows[i].mse_r, serial.rows[i].mse_r);
  }
}

TEST(KSweep, SingleRowMatchesDirectAggregate) {
  SimConfig cfg = short_base();
  SweepOptions opts;
  opts.k_start = 1.0;
  opts.n_k = 1;
  opts.runs_per_k = 3;
  const auto res = k_sweep(cfg, opts);
  double sum = 0;
  for (std::size_t run = 0; run < 3; ++run) {
    SimConfig c = cfg;
    c.noise.seed = sweep_seed(cfg, 0, run);
    sum += mse_stats(simulate(c), 10).mse_r;
  }
  EXPECT_NEAR(res.rows[0].mse_r, sum / 3, 1e-12);
  EXPECT_EQ(res.rows[0].runs, 3u);
}

TEST(KSweep, Errors) {
  SimConfig cfg = short_base();
  SweepOptions opts;
  opts.k_start = 0.05;
  EXPECT_THROW(k_sweep(cfg, opts), InfeasibleGainError);
  opts = {};
  opts.runs_per_k = 0;
  EXPECT_THROW(k_sweep(cfg, opts), ConfigError);
  opts = {};
  opts.n_k = 0;
  EXPECT_THROW(k_sweep(cfg, opts), ConfigError);
}

TEST(HittingTime, StartInsideIsZero) {
  const auto p = make_params(1, 10, 1);
  const auto set = recurrent_set(p, 0.05);
  const auto traj = synthetic([](double) { return PolarState{10, kPi / 2}; }, 10, 0.01);
  EXPECT_EQ(hitting_time(traj, set), 0.0);
}

TEST(HittingTime, CensoredWhenNeverInside) {
  const auto p = make_params(1, 10, 1);
  const auto set = recurrent_set(p, 0.05);
  const auto traj = synthetic([](double) { return PolarState{20, kPi / 2}; }, 10, 0.01);
  EXPECT_FALSE(hitting_time(traj, set).has_value());
}

TEST(HittingTime, NestedSetsHitEarlierForLargerEpsilon) {
  SimConfig cfg = short_base();
  cfg.noise = {0, NoiseMode::kNone, 0};
  cfg.t_final = 100;
  cfg.initial = PolarState{20, 0};
  const auto traj = simulate(cfg);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.01, 0.03, 0.06, 0.09}) {
    const auto t = hitting_time(traj, recurrent_set(cfg.params, eps));
    ASSERT_TRUE(t.has_value());
    EXPECT_LE(*t, prev);
    prev = *t;
  }
}

TEST(RecurrenceTrial, DeterministicRunsAgree) {
  SimConfig cfg = short_base();
  cfg.noise = {0.0, NoiseMode::kMeasurement, 3};
  cfg.initial = PolarState{15, 0};
  const auto stats = recurrence_trial(cfg, 0.05, 20, 100);
  EXPECT_EQ(stats.censored, 0u);
  for (const auto& h : stats.runs) EXPECT_EQ(h.time, stats.runs.front().time);
  EXPECT_LT(stats.stddev, 1e-12);
  EXPECT_NEAR(stats.bound, 226.66621872226774, 1e-9);
  EXPECT_TRUE(stats.mean_within_bound());
}

TEST(RecurrenceTrial, StartInside) {
  SimConfig cfg = short_base();
  cfg.initial = PolarState{10, kPi / 2};
  const auto stats = recurrence_trial(cfg, 0.05, 5, 50);
  EXPECT_TRUE(stats.start_inside);
  EXPECT_EQ(stats.bound, 0.0);
  EXPECT_EQ(stats.mean, 0.0);
}

TEST(RecurrenceTrial, CensoringIsCounted) {
  SimConfig cfg = short_base();
  cfg.noise = {0.0, NoiseMode::kNone, 0};
  cfg.initial = PolarState{40, kPi};  // heading straight away from the target
  const auto stats = recurrence_trial(cfg, 0.05, 3, 5);
  EXPECT_EQ(stats.censored, 3u);
  for (const auto& h : stats.runs) {
    EXPECT_TRUE(h.censored);
    EXPECT_EQ(h.time, 5.0);
  }
}

TEST(RecurrenceTrial, InfeasibleEpsilon) {
  SimConfig cfg = short_base();
  EXPECT_THROW(recurrence_trial(cfg, 0.5, 2, 10), NoSolutionError);
}

TEST(ParallelFor, VisitsEveryIndexAndRethrowsLowestFailure) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  try {
    parallel_for(10, 3, [](std::size_t i) {
      if (i == 4 || i == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "4");
  }
}

}  // namespace
}  // namespace circnav
