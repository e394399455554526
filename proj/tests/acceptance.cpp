// Acceptance suite: one PASS/FAIL line per criterion. The optional argument is
// the directory receiving run artifacts.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chemo/config.hpp"
#include "chemo/harness.hpp"
#include "chemo/oracles.hpp"
#include "chemo/verification.hpp"

using namespace chemo;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Positivity and the signal comparison bound, watched at every step and sample.
struct Watch {
  double vmin0 = 0.0;
  double alpha = 0.0;
  bool positive = true;
  bool comparison = true;

  void operator()(const SimState& s) {
    positive = positive && s.u.min() >= 0.0 && s.v.min() > 0.0;
    comparison = comparison && s.v.min() >= std::exp(-alpha * s.t) * vmin0 * (1.0 - 1e-6);
  }
};

Watch watched_run(const InitialData& d, const ModelParameters& p, const StepControl& c) {
  Watch w{d.v0.min(), p.alpha};
  RunHooks hooks;
  hooks.sample_interval = 0.1;
  hooks.on_sample = [&](const SimState& s) { w(s); };
  hooks.on_step = [&](const SimState& s) { w(s); };
  const RunSummary rs = run(d, p, c, hooks);
  if (rs.final.status != StepStatus::Advanced) w.positive = w.comparison = false;
  return w;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSweep = R"(
base:
  model: {r: 1, alpha: 1, beta: 1, kappa: 1}
  grid: {nx: 128, ny: 128}
  initial: {kind: gaussian_bumps, count: 3, amplitude: 50, width: 0.05, v_background: 0.01}
  control: {t_end: 20, dt_max: 0.01}
  diagnostics: {sample_interval: 0.1, p_exponent: 2, q_exponent: 0.5, bound_tolerance: 1.0e-6, plateau_tolerance: 0.05}
  seed: 1
axes:
  - {name: model.k, values: [0.25, 0.5, 0.75]}
  - {name: model.chi, values: [1, 5]}
  - {name: model.mu, values: [0.5, 1]}
max_runs: 12
)";

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::create_directories(out);
  std::vector<std::pair<std::string, Outcome>> results(10);
  bool positivity = true;
  bool comparison = true;
  std::string positivity_detail;

  // standard sweep (criteria 1, 2, 7, 8, 9, 10)
  SweepConfig sweep = parse_sweep(kSweep);
  sweep.base.output_dir = out / "sweep";
  sweep.max_parallel = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::fprintf(stderr, "running %d-way sweep of 12 runs into %s\n", sweep.max_parallel, sweep.base.output_dir.c_str());
  const SweepResult sr = run_sweep(sweep);

  Outcome mass, windowed, plateau;
  int advanced = 0, blowups = 0, failures = 0;
  double worst_mass = 0.0, worst_window = 0.0, worst_cmp = INFINITY;
  for (const auto& row : sr.rows) {
    const RunResult& r = row.result;
    std::string tag = "run_" + std::to_string(row.index) + " (k=" + fmt(row.values[0]) + " chi=" + fmt(row.values[1]) +
                      " mu=" + fmt(row.values[2]) + ")";
    if (r.status == StepStatus::BlowupDetected) ++blowups;
    if (r.exit_code != kExitOk) {
      ++failures;
      plateau.pass = false;
      plateau.detail += tag + " exit " + std::to_string(r.exit_code) + ": " + r.message + "; ";
      continue;
    }
    ++advanced;
    const Verdict& m = r.report.get("mass_bound");
    const Verdict& w = r.report.get("windowed_l2_bound");
    const Verdict& v = r.report.get("v_comparison");
    worst_mass = std::max(worst_mass, m.worst_ratio);
    worst_window = std::max(worst_window, w.worst_ratio);
    worst_cmp = std::min(worst_cmp, v.worst_ratio);
    if (!m.pass) mass = {false, mass.detail + tag + " ratio " + fmt(m.worst_ratio) + " at t=" + fmt(m.worst_time) + "; "};
    if (!w.pass || !w.applicable) {
      windowed = {false, windowed.detail + tag + " ratio " + fmt(w.worst_ratio) + " at t=" + fmt(w.worst_time) + "; "};
    }
    if (!v.pass) comparison = false;
    for (const char* name : {"plateau_u_ln_u", "plateau_z_func", "plateau_lp_v"}) {
      const Verdict& pv = r.report.get(name);
      if (!pv.pass) {
        plateau.pass = false;
        plateau.detail += tag + " " + name + " growth " + fmt(pv.worst_ratio) + "; ";
      }
    }
    if (!(r.min_u_sampled >= 0.0 && r.min_v_sampled > 0.0)) {
      positivity = false;
      positivity_detail += tag + " min u " + fmt(r.min_u_sampled) + " min v " + fmt(r.min_v_sampled) + "; ";
    }
  }
  if (advanced == 0) mass.pass = windowed.pass = false;
  mass.detail = std::to_string(advanced) + " advanced runs, worst mass/bound " + fmt(worst_mass) +
                (mass.detail.empty() ? "" : "; " + mass.detail);
  windowed.detail = "worst window/bound " + fmt(worst_window) + (windowed.detail.empty() ? "" : "; " + windowed.detail);
  plateau.pass = plateau.pass && blowups == 0 && sr.rows.size() == 12;
  plateau.detail = std::to_string(blowups) + " blow-ups, " + std::to_string(failures) + " failed exits" +
                   (plateau.detail.empty() ? "" : "; " + plateau.detail);
  results[0] = {"mass bound", mass};
  results[1] = {"windowed L2 bound", windowed};
  results[7] = {"boundedness sweep", plateau};

  // 10: determinism
  {
    RunConfig again = expand_sweep(sweep)[0].config;
    again.output_dir = out / "determinism";
    run_single(again);
    const std::string a = slurp(out / "sweep" / "run_000" / "series.csv");
    const std::string b = slurp(out / "determinism" / "series.csv");
    results[9] = {"determinism", {!a.empty() && a == b, "run_000 repeated, " + std::to_string(a.size()) + " bytes " +
                                                            (a == b ? "identical" : "differ")}};
  }

  // 3: conservation without reaction over 1000 steps
  {
    RunConfig cfg = parse_config(
        "model: {chi: 5, k: 0.5}\ngrid: {nx: 64, ny: 64}\n"
        "initial: {kind: gaussian_bumps, count: 3, amplitude: 50, width: 0.05, v_background: 0.01}\n");
    cfg.params.r = 0.0;
    cfg.params.mu = 0.0;
    const InitialData d = build_initial_data(cfg);
    StepControl c = cfg.control;
    c.blowup_threshold = 1e300;
    SimState s = initial_state(d, cfg.params, c);
    c.singular_guard = 1e-12 * s.v.min();
    Watch w{s.v.min(), cfg.params.alpha};
    const double m0 = integrate(s.u);
    bool advanced_all = true;
    for (int n = 0; n < 1000 && advanced_all; ++n) {
      const StepOutcome o = step(s, cfg.params, c, 1e9);
      advanced_all = o.status == StepStatus::Advanced;
      s = o.state;
      w(s);
    }
    const double rel = std::abs(integrate(s.u) - m0) / m0;
    results[2] = {"conservation", {advanced_all && rel <= 1e-10,
                                   "1000 steps to t=" + fmt(s.t) + ", relative mass change " + fmt(rel)}};
    positivity = positivity && w.positive;
    comparison = comparison && w.comparison;
    if (!w.positive) positivity_detail += "conservation run; ";
  }

  // 4: temporal oracle
  {
    const OrderReport r = logistic_temporal_study({2e-3, 1e-3, 5e-4});
    const double rel = r.error_table[1].error / logistic_oracle(2.0, 1.0, 1.0, 5.0);
    const bool ok = r.observed_order >= 0.8 && r.observed_order <= 1.2 && rel <= 1e-3;
    results[3] = {"temporal oracle", {ok, "order " + fmt(r.observed_order) + ", relative error at dt=1e-3 " + fmt(rel)}};
    std::ofstream(out / "order_logistic_time.json") << order_report_json(r) << '\n';
    const OracleCase oc = homogeneous_logistic_case(2.0, 1.0, logistic_oracle_params(), 5.0);
    StepControl c;
    c.dt_init = c.dt_min = c.dt_max = 5e-4;
    c.t_end = 5.0;
    const Watch w = watched_run(oc.init(Grid(3, 3)), oc.params, c);
    positivity = positivity && w.positive;
    comparison = comparison && w.comparison;
    if (!w.positive) positivity_detail += "logistic oracle run; ";
  }

  // 5: spatial oracle
  {
    const OrderReport r = heat_spatial_study({32, 64, 128});
    results[4] = {"spatial oracle", {r.observed_order >= 1.8 && r.observed_order <= 2.2,
                                     "order " + fmt(r.observed_order) + " on 32/64/128"}};
    std::ofstream(out / "order_heat_space.json") << order_report_json(r) << '\n';
    const OracleCase oc = heat_eigenmode_case(0.5, 1, 0, 0.05);
    const Grid g(128, 128);
    StepControl c;
    c.dt_init = c.dt_min = c.dt_max = 0.5 * g.hx() * g.hx();
    c.t_end = 0.05;
    const Watch w = watched_run(oc.init(g), oc.params, c);
    positivity = positivity && w.positive;
    comparison = comparison && w.comparison;
    if (!w.positive) positivity_detail += "heat oracle run; ";
  }

  // 6: steady state
  {
    const ModelParameters p{5.0, 1.0, 0.5, 0.75, 1.0, 1.0, 1};
    const double drift = steady_state_drift(p, Grid(32, 32), 10000, 1e-2);
    results[5] = {"steady state", {drift <= 1e-8, "sup drift after 1e4 steps " + fmt(drift)}};
    const double u_star = p.r / p.mu;
    StepControl c;
    c.dt_init = c.dt_min = c.dt_max = 1e-2;
    c.t_end = 100.0;
    const Grid g(32, 32);
    const Watch w = watched_run({ScalarField(g, u_star), ScalarField(g, p.beta * u_star / p.alpha)}, p, c);
    positivity = positivity && w.positive;
    comparison = comparison && w.comparison;
    if (!w.positive) positivity_detail += "steady state run; ";
  }

  results[6] = {"v comparison", {comparison, "worst sweep min_v/bound " + fmt(worst_cmp)}};
  results[8] = {"positivity", {positivity, positivity_detail.empty() ? "min u >= 0 and min v > 0 everywhere"
                                                                       : positivity_detail}};

  bool all = true;
  std::ofstream summary(out / "acceptance.txt");
  for (std::size_t n = 0; n < results.size(); ++n) {
    const auto& [name, o] = results[n];
    all = all && o.pass;
    char line[64];
    std::snprintf(line, sizeof line, "criterion %2zu %-20s", n + 1, name.c_str());
    const std::string text = std::string(line) + (o.pass ? "PASS  " : "FAIL  ") + o.detail;
    std::printf("%s\n", text.c_str());
    summary << text << '\n';
  }
  return all ? 0 : 1;
}
