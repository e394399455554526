#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chemo/checkpoint.hpp"
#include "chemo/field_io.hpp"
#include "chemo/harness.hpp"
#include "chemo/operators.hpp"
#include "test_util.hpp"

using namespace chemo;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig logistic_config(const std::filesystem::path& out) {
  RunConfig cfg = parse_config("grid: {nx: 3, ny: 3}\ninitial: {u0: 2, v0: 1}\ncontrol: {t_end: 5}\n");
  cfg.output_dir = out;
  return cfg;
}

const char* kBumpDoc = R"(
grid: {nx: 12, ny: 12}
model: {chi: 2, k: 0.5, mu: 1}
initial:
  kind: gaussian_bumps
  v_background: 0.5
  bumps:
    - {x: 0.3, y: 0.4, amplitude: 5, width: 0.1}
control: {t_end: 0.2}
diagnostics: {sample_interval: 0.05}
)";

}  // namespace

TEST_CASE("homogeneous logistic run exits 0 with every verdict passing") {
  const auto dir = test::scratch_dir("harness_logistic");
  const RunResult r = run_single(logistic_config(dir));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.status == StepStatus::Advanced);
  CHECK(r.report.all_pass());
  REQUIRE(r.summary.has_value());
  CHECK(r.summary->final.state.t == 5.0);
  for (const char* f : {"series.csv", "report.json", "summary.txt", "checkpoint/checkpoint.json", "checkpoint/u.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const std::string report = slurp(dir / "report.json");
  CHECK(report.find("\"mass_bound\"") != std::string::npos);
  CHECK(report.find("\"worst_ratio\"") != std::string::npos);
}

TEST_CASE("threshold below the initial maximum exits 2") {
  const auto dir = test::scratch_dir("harness_blowup");
  RunConfig cfg = logistic_config(dir);
  cfg.control.blowup_threshold = 1.0;
  cfg.blowup_threshold_set = true;
  const RunResult r = run_single(cfg);
  CHECK(r.exit_code == kExitBlowup);
  CHECK(r.status == StepStatus::BlowupDetected);
  CHECK_FALSE(r.report.get("sup_bounded").pass);
  CHECK(std::filesystem::exists(dir / "summary.txt"));
}

TEST_CASE("fixed step beyond the taxis CFL limit exits 3") {
  const auto dir = test::scratch_dir("harness_cfl");
  const Grid g(16, 16);
  write_field_csv(ScalarField::sample(g, [](double x, double y) {
                    return 1.0 + 20.0 * std::exp(-((x - 0.3) * (x - 0.3) + (y - 0.5) * (y - 0.5)) / 0.02);
                  }),
                  dir / "u.csv");
  write_field_csv(ScalarField::sample(g, [](double x, double) { return 0.05 + x * x; }), dir / "v.csv");
  std::ofstream(dir / "run.yaml") << "grid: {nx: 16, ny: 16}\n"
                                     "model: {chi: 20, k: 0.75}\n"
                                     "initial: {kind: from_file, path: .}\n"
                                     "control: {t_end: 5, dt_init: 0.5, dt_min: 0.5, dt_max: 0.5}\n"
                                     "output_dir: out\n";
  const RunConfig cfg = load_config(dir / "run.yaml");
  const RunResult r = run_single(cfg);
  CHECK(r.exit_code == kExitSolverOrPositivity);
  CHECK(r.status == StepStatus::PositivityFailure);
  CHECK(slurp(dir / "out" / "summary.txt").find("PositivityFailure") != std::string::npos);
}

TEST_CASE("repeated runs produce byte-identical series") {
  const auto a = test::scratch_dir("harness_det_a");
  const auto b = test::scratch_dir("harness_det_b");
  RunConfig cfg = parse_config(kBumpDoc);
  cfg.output_dir = a;
  run_single(cfg);
  cfg.output_dir = b;
  run_single(cfg);
  const std::string sa = slurp(a / "series.csv");
  CHECK(sa.size() > 100);
  CHECK(sa == slurp(b / "series.csv"));
  CHECK(slurp(a / "checkpoint" / "u.csv") == slurp(b / "checkpoint" / "u.csv"));
}

TEST_CASE("sweep rows keep Cartesian order under parallel execution") {
  const auto dir = test::scratch_dir("harness_sweep");
  std::string doc = "base:\n";
  std::istringstream base(kBumpDoc);
  for (std::string line; std::getline(base, line);) {
    if (!line.empty()) doc += "  " + line + "\n";
  }
  doc += "  output_dir: " + dir.string() + "\n";
  doc += "axes:\n  - {name: model.k, values: [0.25, 0.75]}\n  - {name: model.chi, values: [1, 5]}\nmax_parallel: 3\n";
  const SweepResult s = run_sweep(parse_sweep(doc));
  REQUIRE(s.rows.size() == 4);
  CHECK(s.axis_names == std::vector<std::string>{"model.k", "model.chi"});
  const double expected[4][2] = {{0.25, 1}, {0.25, 5}, {0.75, 1}, {0.75, 5}};
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(s.rows[n].index == n);
    CHECK(s.rows[n].values == std::vector<double>{expected[n][0], expected[n][1]});
    CHECK(s.rows[n].result.exit_code == kExitOk);
  }
  CHECK(std::filesystem::exists(dir / "run_003" / "series.csv"));
  const std::string json = slurp(dir / "sweep.json");
  CHECK(json.find("\"model.k\"") != std::string::npos);
  CHECK(json.find("\"index\": 3") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "sweep_matrix.txt"));
}

TEST_CASE("a sweep without axes is a single run") {
  const auto dir = test::scratch_dir("harness_sweep_empty");
  const auto single = test::scratch_dir("harness_sweep_single");
  const SweepResult s = run_sweep(parse_sweep("base:\n  grid: {nx: 6, ny: 6}\n  control: {t_end: 0.3}\n  output_dir: " +
                                              dir.string() + "\n"));
  REQUIRE(s.rows.size() == 1);
  RunConfig cfg = parse_config("grid: {nx: 6, ny: 6}\ncontrol: {t_end: 0.3}\n");
  cfg.output_dir = single;
  run_single(cfg);
  CHECK(slurp(dir / "run_000" / "series.csv") == slurp(single / "series.csv"));
}

TEST_CASE("a kappa axis dispatches to the elliptic branch") {
  const auto dir = test::scratch_dir("harness_sweep_kappa");
  const SweepResult s = run_sweep(parse_sweep("base:\n  grid: {nx: 10, ny: 10}\n  model: {alpha: 2, beta: 3}\n"
                                              "  initial: {kind: gaussian_bumps, count: 1, amplitude: 4, width: 0.15, "
                                              "v_background: 1}\n  control: {t_end: 0.1}\n  output_dir: " +
                                              dir.string() + "\naxes:\n  - {name: model.kappa, values: [0, 1]}\n"));
  REQUIRE(s.rows.size() == 2);
  for (const auto& row : s.rows) CHECK(row.result.exit_code == kExitOk);
  CHECK_FALSE(s.rows[0].result.report.get("v_comparison").applicable);
  CHECK(s.rows[1].result.report.get("v_comparison").applicable);

  const Checkpoint cp = read_checkpoint(dir / "run_000" / "checkpoint");
  CHECK(cp.params.kappa == 0);
  const ScalarField lap = laplacian(cp.state.v);
  double r2 = 0.0, b2 = 0.0;
  for (std::size_t m = 0; m < lap.size(); ++m) {
    const double b = 3.0 * cp.state.u[m];
    const double r = b - (2.0 * cp.state.v[m] - lap[m]);
    r2 += r * r;
    b2 += b * b;
  }
  CHECK(std::sqrt(r2 / b2) <= 1e-9);
}

TEST_CASE("output directory can be overridden from the environment") {
  RunConfig cfg = parse_config("{}");
  ::setenv("CHEMOSIM_OUTPUT_DIR", "/tmp/chemosim_env_override", 1);
  apply_environment(cfg);
  ::unsetenv("CHEMOSIM_OUTPUT_DIR");
  CHECK(cfg.output_dir == std::filesystem::path("/tmp/chemosim_env_override"));
  RunConfig untouched = parse_config("{}");
  apply_environment(untouched);
  CHECK(untouched.output_dir == std::filesystem::path("chemosim_out"));
}

TEST_CASE("plots are emitted for every numeric column") {
  const auto dir = test::scratch_dir("harness_plots");
  const RunResult r = run_single(logistic_config(dir / "run"));
  REQUIRE(r.exit_code == kExitOk);
  const auto scripts = emit_plots(dir / "run" / "series.csv", dir / "plots");
  CHECK(scripts.size() == record_columns().size() - 1);
  for (const auto& s : scripts) CHECK(std::filesystem::exists(s));
  CHECK(slurp(dir / "plots" / "plot_sup_u.gp").find("logscale y") != std::string::npos);
  const std::string mass = slurp(dir / "plots" / "mass.dat");
  CHECK(std::count(mass.begin(), mass.end(), '\n') == 1 + static_cast<long>(r.series.size()));
}

TEST_CASE("a single-sample series still yields scripts") {
  const auto dir = test::scratch_dir("harness_plots_single");
  RunConfig cfg = logistic_config(dir / "run");
  cfg.control.t_end = 0.0;
  const RunResult r = run_single(cfg);
  CHECK(r.series.size() == 1);
  CHECK(emit_plots(dir / "run" / "series.csv", dir / "plots").size() == record_columns().size() - 1);
  const std::string l2 = slurp(dir / "plots" / "l2_u.dat");
  CHECK(std::count(l2.begin(), l2.end(), '\n') == 2);
}

TEST_CASE("truncated series raises MissingColumn") {
  const auto dir = test::scratch_dir("harness_plots_truncated");
  std::ofstream(dir / "header.csv") << "t,mass,l2_u\n0,1,1\n";
  try {
    emit_plots(dir / "header.csv", dir / "plots");
    FAIL("expected MissingColumn");
  } catch (const MissingColumn& e) {
    CHECK(e.column() == "lp_v");
  }
  run_single(logistic_config(dir / "run"));
  const std::string full = slurp(dir / "run" / "series.csv");
  // header plus the first data row, then a row cut short after four values
  std::ofstream(dir / "short.csv") << full.substr(0, full.find('\n', full.find('\n') + 1)) << "\n0.5,1,1,1\n";
  try {
    emit_plots(dir / "short.csv", dir / "plots");
    FAIL("expected MissingColumn");
  } catch (const MissingColumn& e) {
    CHECK(e.column() == "grad_v_sq");
  }
}
