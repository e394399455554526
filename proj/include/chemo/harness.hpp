#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chemo/config.hpp"
#include "chemo/diagnostics.hpp"
#include "chemo/integrator.hpp"

namespace chemo {

// Process exit codes of a run.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBlowup = 2,
  kExitSolverOrPositivity = 3,
  kExitSingular = 4,
};

int exit_code_for(StepStatus s);

struct RunResult {
  int exit_code = kExitOk;
  StepStatus status = StepStatus::Advanced;
  std::string message;
  std::optional<RunSummary> summary;  // empty if the run aborted before stepping
  std::vector<DiagnosticsRecord> series;
  BoundReport report;
  double blowup_threshold = 0.0;
  double max_v_residual = 0.0;  // worst relative residual of the signal solves
  // smallest values of u and v over all samples
  double min_u_sampled = 0.0;
  double min_v_sampled = 0.0;
};

// Runs one configuration and writes into cfg.output_dir:
//   series.csv    one row per diagnostics sample
//   report.json   bound verdicts
//   checkpoint/   final state, parameters and step control
//   summary.txt   human-readable outcome
// Artifacts are written on failure too.
RunResult run_single(const RunConfig& cfg);

struct SweepRow {
  std::size_t index = 0;
  std::vector<double> values;
  RunResult result;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<SweepRow> rows;  // Cartesian-product order
};

// Runs every sweep point (up to max_parallel at a time) into
// base.output_dir/run_NNN and writes sweep.json plus sweep_matrix.txt there.
SweepResult run_sweep(const SweepConfig& sweep);

// Override of output_dir from CHEMOSIM_OUTPUT_DIR, when set.
void apply_environment(RunConfig& cfg);

class MissingColumn : public Error {
 public:
  explicit MissingColumn(std::string column)
      : Error("missing column '" + column + "'"), column_(std::move(column)) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

// Writes <field>.dat and plot_<field>.gp for every numeric diagnostics column
// of a series CSV (log-scale y for sup_u). Returns the script paths.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv,
                                              const std::filesystem::path& out_dir);

}  // namespace chemo
