#pragma once

#include <iosfwd>
#include <string>

#include "circnav/dynamics.hpp"
#include "circnav_cli/run_config.hpp"

namespace circnav::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitRuntime = 3,
  kExitIo = 4,
};

/// Fixed floating format for every CSV value: 17 significant digits.
std::string format_double(double v);

/// Writes the effective configuration as "# section.key = value" lines.
void write_config_header(std::ostream& out, const RunConfig& cfg);

/// Human-readable report of r_s, inner radii, eps_max, the eps-boundaries and
/// the recurrence bound from (initial_r, initial_theta).
void cmd_analyze(const RunConfig& cfg, std::ostream& out);

/// Trajectory CSV with header t,x,y,psi,r,theta,u,nu. Returns the run status.
Termination cmd_simulate(const RunConfig& cfg, std::ostream& out);

/// Sweep CSV with header k,r_s,mse_r,mse_rdot,runs,terminated.
void cmd_sweep(const RunConfig& cfg, unsigned jobs, std::ostream& out);

/// Recurrence CSV with header seed,hit_time,censored followed by summary rows
/// keyed mean, std and bound in the seed column.
void cmd_recurrence(const RunConfig& cfg, unsigned jobs, std::ostream& out);

}  // namespace circnav::cli
