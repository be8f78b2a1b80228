// qhydro: run experiments, built-in verification suites and plot-script generation.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error, 3 solver error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhydro/config.hpp"
#include "qhydro/error.hpp"
#include "qhydro/experiment.hpp"
#include "qhydro/verify.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kSolverExit = 3;

int report(const qhydro::Error& e) {
  std::cerr << "qhydro: " << e.what() << '\n';
  switch (e.kind()) {
    case qhydro::ErrorKind::ConfigError:
    case qhydro::ErrorKind::MissingArtifact: return kConfigExit;
    default: return kSolverExit;
  }
}

int cmd_run(const std::string& path) {
  qhydro::ExperimentConfig config;
  try {
    config = qhydro::load_config(path);
  } catch (const qhydro::Error& e) {
    std::cerr << "qhydro: " << e.what() << '\n';
    return kConfigExit;
  }
  try {
    const qhydro::RunSummary s = qhydro::run_experiment(config);
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "record: " << s.directory.string() << '\n'
              << "snapshots: " << s.snapshots << '\n';
    if (s.dispersion) {
      std::cout << "k,omega_measured,omega_analytic,rel_err\n";
      for (const auto& e : s.dispersion->entries) {
        std::cout << e.k << ',' << e.omega_measured << ',' << e.omega_analytic << ',' << e.rel_err << '\n';
      }
      std::cout << "max rel_err: " << s.dispersion->max_rel_err() << '\n';
    }
    std::cout << "wall time: " << s.wall_seconds << " s\n";
  } catch (const qhydro::Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "qhydro: " << e.what() << '\n';
    return kSolverExit;
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  const auto results = qhydro::run_verification(qhydro::parse_verify_suite(suite), &std::cout);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_plot(const std::string& dir) {
  try {
    for (const auto& p : qhydro::write_plot_scripts(dir)) std::cout << p.string() << '\n';
  } catch (const qhydro::Error& e) {
    return report(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum hydrodynamics solvers and Bogoliubov spectrum checks"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", config_path, "Path to the config file")->required();

  std::string suite = "quick";
  auto* verify = app.add_subcommand("verify", "Run built-in property checks");
  verify->add_option("--suite", suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  std::string record_dir;
  auto* plot = app.add_subcommand("plot", "Write gnuplot scripts for a record directory");
  plot->add_option("record", record_dir, "Record directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigExit;
  }

  if (*run) return cmd_run(config_path);
  if (*verify) return cmd_verify(suite);
  return cmd_plot(record_dir);
}
