#include "circnav_cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ostream>

#include "circnav/analysis.hpp"
#include "circnav/errors.hpp"
#include "circnav/experiments.hpp"

namespace circnav::cli {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_config_header(std::ostream& out, const RunConfig& cfg) {
  for (const auto& [key, value] : describe(cfg)) {
    out << "# " << key << " = " << value << '\n';
  }
}

void cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const ControllerParams p = make_params(cfg.k, cfg.r_d, cfg.speed);
  const auto f = [](double v) { return fmt::format("{:.10g}", v); };

  out << "k = " << f(p.k) << '\n';
  out << "r_d = " << f(p.r_d) << '\n';
  out << "V = " << f(p.speed) << '\n';
  out << "r_s = " << f(p.r_s) << '\n';
  out << "max_turn_rate = " << f(p.saturation()) << '\n';

  const auto radii = inner_radii(p);
  if (radii) {
    out << "r_i_minus = " << f(radii->minus) << '\n';
    out << "r_i_plus = " << f(radii->plus) << '\n';
  } else {
    out << "inner_radii = none (no inner equilibria for 1/r_d < k < sqrt(5)/r_d = "
        << f(std::sqrt(5.0) / p.r_d) << ")\n";
  }

  if (!radii) {
    out << "epsilon_max = not applicable (inner region empty)\n";
    return;
  }
  const double eps_max = epsilon_max(p);
  out << "r_star = " << f(inner_margin_minimizer(p)) << '\n';
  out << "epsilon_max = " << f(eps_max) << '\n';

  const double eps = cfg.epsilon;
  out << "epsilon = " << f(eps) << '\n';
  try {
    const RecurrentSet set = recurrent_set(p, eps);
    out << "r_i_minus_eps = " << f(set.r_i_minus_eps) << '\n';
    out << "r_i_plus_eps = " << f(set.r_i_plus_eps) << '\n';
    out << "r_a_eps = " << f(set.r_a_eps) << '\n';
    const RecurrenceBound b = recurrence_bound(p, set, cfg.initial_r, wrap_angle(cfg.initial_theta));
    out << "initial = (" << f(cfg.initial_r) << ", " << f(cfg.initial_theta) << ")\n";
    if (b.inside) {
      out << "recurrence_bound = 0 (initial point inside the recurrent set)\n";
    } else {
      out << "recurrence_bound = " << f(b.seconds) << '\n';
    }
  } catch (const NoSolutionError& e) {
    out << "recurrent_set = infeasible: " << e.what() << '\n';
  }
}

Termination cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const Trajectory traj = simulate(to_sim_config(cfg));
  write_config_header(out, cfg);
  out << "t,x,y,psi,r,theta,u,nu\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.cart.x) << ',' << format_double(s.cart.y)
        << ',' << format_double(s.cart.psi) << ',' << format_double(s.polar.r) << ','
        << format_double(s.polar.theta) << ',' << format_double(s.u) << ','
        << format_double(s.nu) << '\n';
  }
  if (traj.status == Termination::kSingularity) {
    out << "# terminated = singularity\n";
  }
  return traj.status;
}

void cmd_sweep(const RunConfig& cfg, unsigned jobs, std::ostream& out) {
  const SweepResult res = k_sweep(to_sim_config(cfg), to_sweep_options(cfg, jobs));
  write_config_header(out, cfg);
  out << "k,r_s,mse_r,mse_rdot,runs,terminated\n";
  for (const auto& row : res.rows) {
    out << format_double(row.k) << ',' << format_double(row.r_s) << ','
        << format_double(row.mse_r) << ',' << format_double(row.mse_rdot) << ',' << row.runs
        << ',' << row.terminated << '\n';
  }
}

void cmd_recurrence(const RunConfig& cfg, unsigned jobs, std::ostream& out) {
  const SimConfig sim = to_sim_config(cfg);
  const RecurrenceStats stats = recurrence_trial(sim, cfg.epsilon, cfg.runs_per_k, cfg.horizon, jobs);
  write_config_header(out, cfg);
  out << "# censored = " << stats.censored << " of " << stats.runs.size() << '\n';
  if (stats.start_inside) out << "# initial point inside the recurrent set\n";
  out << "seed,hit_time,censored\n";
  for (const auto& h : stats.runs) {
    out << h.seed << ',' << format_double(h.time) << ',' << (h.censored ? 1 : 0) << '\n';
  }
  out << "mean," << format_double(stats.mean) << ",\n";
  out << "std," << format_double(stats.stddev) << ",\n";
  out << "bound," << format_double(stats.bound) << ",\n";
}

}  // namespace circnav::cli
