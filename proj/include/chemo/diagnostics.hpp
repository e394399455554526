#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemo/params.hpp"
#include "chemo/state.hpp"

namespace chemo {

struct DiagnosticsConfig {
  double sample_interval = 0.1;
  double p_exponent = 2.0;
  double q_exponent = 0.5;  // 0 < q < p − 1
  double lambda = 0.1;
  double tau = 1.0;  // min{1, t_end/2}
  double bound_tolerance = 1e-6;
  double plateau_tolerance = 0.05;
};

// Window length used by the windowed L² bound.
double window_length(double t_end);

void validate_diagnostics(const DiagnosticsConfig& cfg);

// One sample of every monitored functional. Field order is the CSV column order.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;        // ∫u
  double l2_u = 0.0;        // ∫u²
  double lp_v = 0.0;        // ∫v^p
  double grad_v_sq = 0.0;   // ∫|∇v|²
  double l_func = 0.0;      // −∫u ln v
  double u_ln_u = 0.0;      // ∫u ln u, with 0 ln 0 = 0
  double y_func = 0.0;      // ∫u ln u − λ∫u ln v + ½∫|∇v|²
  double z_func = 0.0;      // ∫u^p v^{-q} + ∫u^p + ∫|∇v|^{2p}
  double cross_func = 0.0;  // ∫u^p |∇v|^p v^{-kp}
  double sup_u = 0.0;
  double min_v = 0.0;
  double windowed_l2 = 0.0;  // ∫_{t−τ}^{t} ∫u², NaN until a full window is available
};

const std::vector<std::string>& record_columns();
std::vector<double> record_values(const DiagnosticsRecord& r);

// Evaluates every functional on s (windowed_l2 is left NaN; see
// DiagnosticsMonitor). Throws SingularSignal if a functional is not finite.
DiagnosticsRecord sample(const SimState& s, const ModelParameters& p, const DiagnosticsConfig& cfg);

// max{r|Ω|/μ, ∫u0}; r = 0 contributes nothing, μ = 0 with r > 0 is unbounded.
double mass_bound(const ModelParameters& p, double domain_area, double u0_mass);
double mass_bound(const ModelParameters& p, const Grid& g, double u0_mass);

// m(rτ + 1)/μ
double windowed_l2_bound(const ModelParameters& p, double m, double tau);

// Collects records during a run and maintains the running time integral of
// ∫u² (trapezoidal over accepted steps) for the trailing-window functional.
class DiagnosticsMonitor {
 public:
  DiagnosticsMonitor(ModelParameters p, DiagnosticsConfig cfg);

  void on_step(const SimState& s);
  void on_sample(const SimState& s);

  const std::vector<DiagnosticsRecord>& records() const { return records_; }

 private:
  void accumulate(const SimState& s);
  double cumulative_at(double t) const;

  ModelParameters params_;
  DiagnosticsConfig cfg_;
  std::vector<DiagnosticsRecord> records_;
  std::vector<double> times_;
  std::vector<double> cumulative_;
  double last_l2_ = 0.0;
};

struct Verdict {
  std::string name;
  std::string kind;  // "explicit", "plateau-heuristic" or "threshold"
  bool applicable = true;
  bool pass = true;
  double worst_time = 0.0;
  double worst_ratio = 0.0;
};

struct BoundReport {
  std::vector<Verdict> verdicts;

  bool all_pass() const;
  const Verdict& get(const std::string& name) const;
};

struct VerdictContext {
  double domain_area = 1.0;
  double blowup_threshold = 0.0;
};

// Checks a completed series:
//   mass_bound        mass ≤ m(1 + tol)
//   windowed_l2_bound windowed_l2 ≤ m(rτ+1)/μ · (1 + tol)
//   v_comparison      min_v ≥ e^{−αt} min v0 (1 − tol)      (κ = 1 only)
//   plateau_*         late-time growth of lp_v, grad_v_sq, u_ln_u, y_func,
//                     z_func, cross_func stays within plateau_tolerance
//   sup_bounded       sup_u never exceeds the blow-up threshold
// The first record must be the initial state. Throws Error on an empty series.
BoundReport verdicts(const std::vector<DiagnosticsRecord>& series, const ModelParameters& p,
                     const DiagnosticsConfig& cfg, const VerdictContext& ctx);

void write_series_csv(const std::vector<DiagnosticsRecord>& series, const std::filesystem::path& path);
std::string report_json(const BoundReport& report);

}  // namespace chemo
