#include "chemo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chemo/checkpoint.hpp"
#include "chemo/field_io.hpp"
#include "chemo/oracles.hpp"

namespace chemo {

int exit_code_for(StepStatus s) {
  switch (s) {
    case StepStatus::Advanced: return kExitOk;
    case StepStatus::BlowupDetected: return kExitBlowup;
    case StepStatus::SolverFailure:
    case StepStatus::PositivityFailure: return kExitSolverOrPositivity;
    case StepStatus::SingularSignal: return kExitSingular;
  }
  return kExitUsage;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
}

std::string summary_text(const RunConfig& cfg, const RunResult& r) {
  std::ostringstream s;
  const auto& p = cfg.params;
  s << "chemosim run summary\n";
  s << "parameters: chi=" << p.chi << " r=" << p.r << " mu=" << p.mu << " k=" << p.k << " alpha=" << p.alpha
    << " beta=" << p.beta << " kappa=" << p.kappa << '\n';
  s << "grid: " << cfg.grid.nx << "x" << cfg.grid.ny << " on " << cfg.grid.lx << "x" << cfg.grid.ly << '\n';
  s << "status: " << to_string(r.status) << " (exit " << r.exit_code << ")\n";
  if (!r.message.empty()) s << "message: " << r.message << '\n';
  if (r.summary) {
    s << "final time: " << r.summary->final.state.t << " of " << cfg.control.t_end << '\n';
    s << "steps: " << r.summary->steps << " (retries " << r.summary->retries << ")\n";
    s << "max sup u: " << r.summary->max_sup_u << " (threshold " << r.blowup_threshold << ")\n";
    s << "wall time: " << std::fixed << std::setprecision(3) << r.summary->wall_seconds << " s\n";
    s << std::defaultfloat;
  }
  s << "verdicts:\n";
  for (const auto& v : r.report.verdicts) {
    s << "  " << std::left << std::setw(22) << v.name << (v.applicable ? (v.pass ? "pass" : "FAIL") : "n/a ")
      << "  worst_ratio=" << v.worst_ratio << " at t=" << v.worst_time << "  [" << v.kind << "]\n";
  }
  return s.str();
}

}  // namespace

RunResult run_single(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  RunResult result;
  const InitialData init = validate_initial_data(build_initial_data(cfg), cfg.grid.build());
  StepControl control = cfg.control;
  if (!cfg.blowup_threshold_set) control.blowup_threshold = default_blowup_threshold(init.u0);
  result.blowup_threshold = control.blowup_threshold;

  DiagnosticsMonitor monitor(cfg.params, cfg.diag);
  RunHooks hooks;
  hooks.sample_interval = cfg.diag.sample_interval;
  result.min_u_sampled = std::numeric_limits<double>::infinity();
  result.min_v_sampled = std::numeric_limits<double>::infinity();
  hooks.on_sample = [&](const SimState& s) {
    result.min_u_sampled = std::min(result.min_u_sampled, s.u.min());
    result.min_v_sampled = std::min(result.min_v_sampled, s.v.min());
    monitor.on_sample(s);
  };
  hooks.on_step = [&](const SimState& s) { monitor.on_step(s); };

  try {
    const SimState start = initial_state(init, cfg.params, control);
    if (control.singular_guard == 0.0) control.singular_guard = 1e-12 * start.v.min();
    result.summary = run_from(start, cfg.params, control, hooks);
    result.max_v_residual = result.summary->max_v_residual;
    result.status = result.summary->final.status;
    result.message = result.summary->final.message;
  } catch (const SingularSignal& e) {
    result.status = StepStatus::SingularSignal;
    result.message = e.what();
  } catch (const NoConvergence& e) {
    result.status = StepStatus::SolverFailure;
    result.message = e.what();
  }
  result.exit_code = exit_code_for(result.status);
  result.series = monitor.records();

  write_series_csv(result.series, cfg.output_dir / "series.csv");
  if (!result.series.empty()) {
    result.report = verdicts(result.series, cfg.params, cfg.diag, {cfg.grid.lx * cfg.grid.ly, control.blowup_threshold});
  }
  write_text(cfg.output_dir / "report.json", report_json(result.report) + "\n");
  if (result.summary) write_checkpoint(cfg.output_dir / "checkpoint", {result.summary->final.state, cfg.params, control});
  write_text(cfg.output_dir / "summary.txt", summary_text(cfg, result));
  return result;
}

void apply_environment(RunConfig& cfg) {
  if (const char* dir = std::getenv("CHEMOSIM_OUTPUT_DIR"); dir && *dir) cfg.output_dir = dir;
}

SweepResult run_sweep(const SweepConfig& sweep) {
  std::vector<SweepPoint> points = expand_sweep(sweep);
  SweepResult out;
  for (const auto& a : sweep.axes) out.axis_names.push_back(a.name);
  out.rows.resize(points.size());

  const std::filesystem::path root = sweep.base.output_dir;
  std::filesystem::create_directories(root);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      std::ostringstream name;
      name << "run_" << std::setw(3) << std::setfill('0') << i;
      RunConfig cfg = points[i].config;
      cfg.output_dir = root / name.str();
      SweepRow& row = out.rows[i];
      row.index = i;
      row.values = points[i].values;
      try {
        row.result = run_single(cfg);
      } catch (const std::exception& e) {
        row.result.exit_code = kExitUsage;
        row.result.message = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(sweep.max_parallel), points.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream matrix;
  std::vector<std::string> verdict_names;
  for (const auto& row : out.rows) {
    for (const auto& v : row.result.report.verdicts) {
      if (std::find(verdict_names.begin(), verdict_names.end(), v.name) == verdict_names.end()) {
        verdict_names.push_back(v.name);
      }
    }
  }
  for (const auto& n : out.axis_names) matrix << std::setw(12) << n << ' ';
  matrix << std::setw(5) << "exit";
  for (const auto& n : verdict_names) matrix << ' ' << n;
  matrix << '\n';
  for (const auto& row : out.rows) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (std::size_t a = 0; a < out.axis_names.size(); ++a) {
      params[out.axis_names[a]] = row.values[a];
      matrix << std::setw(12) << row.values[a] << ' ';
    }
    matrix << std::setw(5) << row.result.exit_code;
    nlohmann::ordered_json verdict_json = nlohmann::ordered_json::object();
    for (const auto& n : verdict_names) {
      std::string cell = "-";
      for (const auto& v : row.result.report.verdicts) {
        if (v.name == n) {
          cell = v.applicable ? (v.pass ? "pass" : "FAIL") : "n/a";
          verdict_json[n] = v.applicable ? nlohmann::ordered_json(v.pass) : nlohmann::ordered_json(nullptr);
        }
      }
      matrix << ' ' << std::setw(static_cast<int>(n.size())) << cell;
    }
    matrix << '\n';
    rows.push_back({{"index", row.index},
                    {"params", params},
                    {"exit_code", row.result.exit_code},
                    {"status", to_string(row.result.status)},
                    {"message", row.result.message},
                    {"all_pass", row.result.report.all_pass()},
                    {"verdicts", verdict_json},
                    {"max_sup_u", row.result.summary ? row.result.summary->max_sup_u : 0.0},
                    {"steps", row.result.summary ? row.result.summary->steps : 0L},
                    {"max_v_residual", row.result.max_v_residual},
                    {"wall_seconds", row.result.summary ? row.result.summary->wall_seconds : 0.0}});
  }
  nlohmann::ordered_json doc = {{"axes", out.axis_names}, {"runs", rows}};
  write_text(root / "sweep.json", doc.dump(2) + "\n");
  write_text(root / "sweep_matrix.txt", matrix.str());
  return out;
}

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir) {
  std::ifstream in(csv);
  if (!in) throw IoError("cannot open " + csv.string());
  const auto& expected = record_columns();
  std::string line;
  std::vector<std::string> header;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
  }
  for (std::size_t c = 0; c < expected.size(); ++c) {
    if (c >= header.size() || header[c] != expected[c]) throw MissingColumn(expected[c]);
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() < expected.size()) throw MissingColumn(expected[cells.size()]);
    rows.push_back(std::move(cells));
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> scripts;
  for (std::size_t c = 1; c < expected.size(); ++c) {
    const std::string& field = expected[c];
    std::ostringstream data;
    data << "# t " << field << '\n';
    for (const auto& row : rows) {
      if (row[c] == "nan" || row[c] == "-nan") continue;
      data << row[0] << ' ' << row[c] << '\n';
    }
    write_text(out_dir / (field + ".dat"), data.str());
    std::ostringstream gp;
    gp << "set terminal pngcairo size 900,600\n";
    gp << "set output '" << field << ".png'\n";
    gp << "set xlabel 't'\n";
    gp << "set ylabel '" << field << "'\n";
    gp << "set grid\n";
    if (field == "sup_u") gp << "set logscale y\n";
    gp << "plot '" << field << ".dat' using 1:2 with linespoints title '" << field << "'\n";
    const auto script = out_dir / ("plot_" + field + ".gp");
    write_text(script, gp.str());
    scripts.push_back(script);
  }
  return scripts;
}

}  // namespace chemo
