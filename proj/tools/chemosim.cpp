// chemosim: run, sweep, verify and plot for the singular-sensitivity
// chemotaxis simulator.

#include <iostream>

#include <CLI11.hpp>

#include "chemo/config.hpp"
#include "chemo/harness.hpp"
#include "chemo/verification.hpp"

using namespace chemo;

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume simulator for logistic chemotaxis with weak singular sensitivity"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("config", run_config, "YAML run document")->required()->check(CLI::ExistingFile);

  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the Cartesian product of a sweep document");
  sweep_cmd->add_option("config", sweep_config, "YAML sweep document")->required()->check(CLI::ExistingFile);

  std::string verify_out = "chemosim_verify";
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle and convergence suite");
  verify_cmd->add_option("-o,--out", verify_out, "Directory for order reports");

  std::string plot_csv;
  std::string plot_out = "plots";
  auto* plot_cmd = app.add_subcommand("plot", "Write gnuplot data and scripts for a series CSV");
  plot_cmd->add_option("series", plot_csv, "series.csv from a run")->required();
  plot_cmd->add_option("-o,--out", plot_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      RunConfig cfg = load_config(run_config);
      apply_environment(cfg);
      const RunResult r = run_single(cfg);
      std::cout << to_string(r.status);
      if (r.summary) std::cout << " at t=" << r.summary->final.state.t << " after " << r.summary->steps << " steps";
      std::cout << "; verdicts " << (r.report.all_pass() ? "all pass" : "NOT all pass") << "; artifacts in "
                << cfg.output_dir.string() << '\n';
      if (!r.message.empty()) std::cout << r.message << '\n';
      return r.exit_code;
    }
    if (*sweep_cmd) {
      SweepConfig sweep = load_sweep(sweep_config);
      apply_environment(sweep.base);
      const SweepResult r = run_sweep(sweep);
      int worst = kExitOk;
      for (const auto& row : r.rows) {
        std::cout << "run " << row.index << ": exit " << row.result.exit_code << " ("
                  << to_string(row.result.status) << ")\n";
        worst = std::max(worst, row.result.exit_code);
      }
      std::cout << "aggregate written to " << (sweep.base.output_dir / "sweep.json").string() << '\n';
      return worst;
    }
    if (*verify_cmd) {
      bool ok = true;
      for (const auto& c : run_verification(verify_out)) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        ok = ok && c.pass;
      }
      return ok ? kExitOk : kExitUsage;
    }
    if (*plot_cmd) {
      for (const auto& p : emit_plots(plot_csv, plot_out)) std::cout << p.string() << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
