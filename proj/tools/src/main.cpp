#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circnav/errors.hpp"
#include "circnav_cli/commands.hpp"
#include "circnav_cli/run_config.hpp"

namespace {

using circnav::cli::ExitCode;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-only circumnavigation simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::vector<std::string> overrides;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI run configuration file");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--seed", seed, "override noise.seed");
    sub->add_option("--jobs", jobs, "worker threads (default: all processors)");
    sub->add_option("--set", overrides, "override a key: section.key=value")->take_all();
  };
  auto* analyze = app.add_subcommand("analyze", "equilibria, recurrent set and recurrence bound");
  auto* simulate = app.add_subcommand("simulate", "single closed-loop run to trajectory CSV");
  auto* sweep = app.add_subcommand("sweep", "gain sweep with MSE statistics to CSV");
  auto* recurrence = app.add_subcommand("recurrence", "Monte Carlo recurrence times to CSV");
  for (auto* sub : {analyze, simulate, sweep, recurrence}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitCode::kExitConfig;
  }

  try {
    circnav::cli::RunConfig cfg;
    if (!config_path.empty()) cfg = circnav::cli::load_config(config_path);
    for (const auto& o : overrides) circnav::cli::apply_override(cfg, o);
    if (seed) cfg.seed = *seed;

    std::ostringstream buf;
    int code = ExitCode::kExitOk;
    if (*analyze) {
      circnav::cli::cmd_analyze(cfg, buf);
    } else if (*simulate) {
      if (circnav::cli::cmd_simulate(cfg, buf) != circnav::Termination::kCompleted) {
        std::cerr << "circnav: run terminated early: range fell below the singularity guard\n";
        code = ExitCode::kExitRuntime;
      }
    } else if (*sweep) {
      circnav::cli::cmd_sweep(cfg, jobs, buf);
    } else if (*recurrence) {
      circnav::cli::cmd_recurrence(cfg, jobs, buf);
    }
    emit(out_path, buf.str());
    return code;
  } catch (const IoError& e) {
    std::cerr << "circnav: I/O error: " << e.what() << '\n';
    return ExitCode::kExitIo;
  } catch (const circnav::ConfigError& e) {
    std::cerr << "circnav: config error: " << e.what() << '\n';
    return ExitCode::kExitConfig;
  } catch (const circnav::InfeasibleGainError& e) {
    std::cerr << "circnav: config error: " << e.what() << '\n';
    return ExitCode::kExitConfig;
  } catch (const circnav::NoSolutionError& e) {
    std::cerr << "circnav: config error: " << e.what() << '\n';
    return ExitCode::kExitConfig;
  } catch (const circnav::DomainError& e) {
    std::cerr << "circnav: config error: " << e.what() << '\n';
    return ExitCode::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "circnav: runtime error: " << e.what() << '\n';
    return ExitCode::kExitRuntime;
  }
}
