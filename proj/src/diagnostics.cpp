#include "chemo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "chemo/errors.hpp"
#include "chemo/field_io.hpp"
#include "chemo/operators.hpp"

namespace chemo {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double window_length(double t_end) { return std::min(1.0, 0.5 * t_end); }

void validate_diagnostics(const DiagnosticsConfig& cfg) {
  if (!(cfg.sample_interval > 0.0)) throw OutOfRange("sample_interval", "must be > 0");
  if (!(cfg.p_exponent > 1.0)) throw OutOfRange("p_exponent", "must be > 1");
  if (!(cfg.q_exponent > 0.0 && cfg.q_exponent < cfg.p_exponent - 1.0)) {
    throw OutOfRange("q_exponent", "must satisfy 0 < q < p - 1");
  }
  if (!(cfg.lambda > 0.0)) throw OutOfRange("lambda", "must be > 0");
  if (!(cfg.tau >= 0.0)) throw OutOfRange("tau", "must be >= 0");
  if (!(cfg.bound_tolerance >= 0.0)) throw OutOfRange("bound_tolerance", "must be >= 0");
  if (!(cfg.plateau_tolerance >= 0.0)) throw OutOfRange("plateau_tolerance", "must be >= 0");
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {
      "t",      "mass",   "l2_u",   "lp_v",       "grad_v_sq", "l_func", "u_ln_u",
      "y_func", "z_func", "cross_func", "sup_u", "min_v",     "windowed_l2"};
  return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
  return {r.t,      r.mass,   r.l2_u,       r.lp_v,  r.grad_v_sq, r.l_func,     r.u_ln_u,
          r.y_func, r.z_func, r.cross_func, r.sup_u, r.min_v,     r.windowed_l2};
}

DiagnosticsRecord sample(const SimState& s, const ModelParameters& p, const DiagnosticsConfig& cfg) {
  const ScalarField& u = s.u;
  const ScalarField& v = s.v;
  const ScalarField gv = gradient_squared(v);
  const double pe = cfg.p_exponent;
  const double q = cfg.q_exponent;

  double mass = 0, l2 = 0, lpv = 0, grad = 0, ulnv = 0, ulnu = 0, z1 = 0, z2 = 0, z3 = 0, cross = 0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    const double un = u[n];
    const double vn = v[n];
    const double up = std::pow(un, pe);
    mass += un;
    l2 += un * un;
    lpv += std::pow(vn, pe);
    grad += gv[n];
    ulnv += un * std::log(vn);
    if (un > 0.0) ulnu += un * std::log(un);
    z1 += up * std::pow(vn, -q);
    z2 += up;
    z3 += std::pow(gv[n], pe);
    cross += up * std::pow(gv[n], 0.5 * pe) * std::pow(vn, -p.k * pe);
  }
  const double area = s.grid().cell_area();
  DiagnosticsRecord r;
  r.t = s.t;
  r.mass = mass * area;
  r.l2_u = l2 * area;
  r.lp_v = lpv * area;
  r.grad_v_sq = grad * area;
  r.l_func = -ulnv * area;
  r.u_ln_u = ulnu * area;
  r.y_func = r.u_ln_u + cfg.lambda * r.l_func + 0.5 * r.grad_v_sq;
  r.z_func = z1 * area + z2 * area + z3 * area;
  r.cross_func = cross * area;
  r.sup_u = u.max();
  r.min_v = v.min();
  r.windowed_l2 = kNaN;

  const auto values = record_values(r);
  for (std::size_t c = 0; c + 1 < values.size(); ++c) {
    if (!std::isfinite(values[c])) {
      throw SingularSignal("diagnostic " + record_columns()[c] + " is not finite at t = " + std::to_string(s.t));
    }
  }
  return r;
}

double mass_bound(const ModelParameters& p, double domain_area, double u0_mass) {
  double logistic = 0.0;
  if (p.r > 0.0) logistic = p.mu > 0.0 ? p.r * domain_area / p.mu : kInf;
  return std::max(logistic, u0_mass);
}

double mass_bound(const ModelParameters& p, const Grid& g, double u0_mass) {
  return mass_bound(p, g.area(), u0_mass);
}

double windowed_l2_bound(const ModelParameters& p, double m, double tau) {
  if (!(p.mu > 0.0)) return kInf;
  return m * (p.r * tau + 1.0) / p.mu;
}

DiagnosticsMonitor::DiagnosticsMonitor(ModelParameters p, DiagnosticsConfig cfg)
    : params_(p), cfg_(cfg) {}

void DiagnosticsMonitor::accumulate(const SimState& s) {
  double l2 = 0.0;
  for (double x : s.u.values()) l2 += x * x;
  l2 *= s.grid().cell_area();
  if (times_.empty()) {
    times_.push_back(s.t);
    cumulative_.push_back(0.0);
  } else if (s.t > times_.back()) {
    cumulative_.push_back(cumulative_.back() + 0.5 * (last_l2_ + l2) * (s.t - times_.back()));
    times_.push_back(s.t);
  }
  last_l2_ = l2;
}

double DiagnosticsMonitor::cumulative_at(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return cumulative_.back();
  const auto n = static_cast<std::size_t>(it - times_.begin());
  if (*it == t || n == 0) return cumulative_[n];
  const double w = (t - times_[n - 1]) / (times_[n] - times_[n - 1]);
  return cumulative_[n - 1] + w * (cumulative_[n] - cumulative_[n - 1]);
}

void DiagnosticsMonitor::on_step(const SimState& s) { accumulate(s); }

void DiagnosticsMonitor::on_sample(const SimState& s) {
  if (times_.empty() || s.t > times_.back()) accumulate(s);
  DiagnosticsRecord r = sample(s, params_, cfg_);
  const double start = times_.front();
  // relative slack absorbs round-off in sample times that land on the window edge
  if (cfg_.tau > 0.0 && s.t - start >= cfg_.tau * (1.0 - 1e-12)) {
    r.windowed_l2 = cumulative_at(s.t) - cumulative_at(std::max(start, s.t - cfg_.tau));
  }
  records_.push_back(r);
}

bool BoundReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict& BoundReport::get(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw Error("no verdict named " + name);
}

namespace {

Verdict plateau(const std::vector<DiagnosticsRecord>& series, const std::string& name,
                double DiagnosticsRecord::*field, double tol) {
  Verdict v{"plateau_" + name, "plateau-heuristic", true, true, kNaN, 0.0};
  const std::size_t n = series.size();
  if (n < 3) {
    v.applicable = false;
    return v;
  }
  const std::size_t mid_begin = n / 3;
  const std::size_t fin_begin = (2 * n) / 3;
  double mid_max = -kInf;
  double fin_max = -kInf;
  double overall = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = series[i].*field;
    overall = std::max(overall, std::abs(x));
    if (i >= mid_begin && i < fin_begin) mid_max = std::max(mid_max, x);
    if (i >= fin_begin && x > fin_max) {
      fin_max = x;
      v.worst_time = series[i].t;
    }
  }
  // functionals that settle at zero are judged against the series' own magnitude
  const double scale = std::max({std::abs(mid_max), 1e-3 * overall, std::numeric_limits<double>::min()});
  v.worst_ratio = (fin_max - mid_max) / scale;
  v.pass = v.worst_ratio <= tol;
  return v;
}

}  // namespace

BoundReport verdicts(const std::vector<DiagnosticsRecord>& series, const ModelParameters& p,
                     const DiagnosticsConfig& cfg, const VerdictContext& ctx) {
  if (series.empty()) throw Error("EmptySeries: no diagnostics samples to judge");
  BoundReport report;
  const double tol = cfg.bound_tolerance;
  const DiagnosticsRecord& first = series.front();
  const double m = mass_bound(p, ctx.domain_area, first.mass);

  {
    Verdict v{"mass_bound", "explicit", true, true, first.t, -kInf};
    for (const auto& r : series) {
      const double ratio = r.mass / m;
      if (ratio > v.worst_ratio) {
        v.worst_ratio = ratio;
        v.worst_time = r.t;
      }
    }
    v.pass = v.worst_ratio <= 1.0 + tol;
    report.verdicts.push_back(v);
  }
  {
    const double bound = windowed_l2_bound(p, m, cfg.tau);
    Verdict v{"windowed_l2_bound", "explicit", false, true, kNaN, 0.0};
    for (const auto& r : series) {
      if (std::isnan(r.windowed_l2)) continue;
      v.applicable = true;
      const double ratio = r.windowed_l2 / bound;
      if (std::isnan(v.worst_time) || ratio > v.worst_ratio) {
        v.worst_ratio = ratio;
        v.worst_time = r.t;
      }
    }
    v.pass = v.worst_ratio <= 1.0 + tol;
    report.verdicts.push_back(v);
  }
  {
    Verdict v{"v_comparison", "explicit", p.parabolic(), true, kNaN, kInf};
    if (p.parabolic()) {
      const double v0 = first.min_v;
      for (const auto& r : series) {
        const double lower = std::exp(-p.alpha * (r.t - first.t)) * v0;
        const double ratio = r.min_v / lower;
        if (ratio < v.worst_ratio) {
          v.worst_ratio = ratio;
          v.worst_time = r.t;
        }
      }
      v.pass = v.worst_ratio >= 1.0 - tol;
    } else {
      v.worst_ratio = kNaN;
    }
    report.verdicts.push_back(v);
  }
  const double ptol = cfg.plateau_tolerance;
  report.verdicts.push_back(plateau(series, "lp_v", &DiagnosticsRecord::lp_v, ptol));
  report.verdicts.push_back(plateau(series, "grad_v_sq", &DiagnosticsRecord::grad_v_sq, ptol));
  report.verdicts.push_back(plateau(series, "u_ln_u", &DiagnosticsRecord::u_ln_u, ptol));
  report.verdicts.push_back(plateau(series, "y_func", &DiagnosticsRecord::y_func, ptol));
  report.verdicts.push_back(plateau(series, "z_func", &DiagnosticsRecord::z_func, ptol));
  report.verdicts.push_back(plateau(series, "cross_func", &DiagnosticsRecord::cross_func, ptol));
  {
    Verdict v{"sup_bounded", "threshold", ctx.blowup_threshold > 0.0, true, first.t, 0.0};
    if (v.applicable) {
      for (const auto& r : series) {
        const double ratio = r.sup_u / ctx.blowup_threshold;
        if (ratio > v.worst_ratio) {
          v.worst_ratio = ratio;
          v.worst_time = r.t;
        }
      }
      v.pass = v.worst_ratio <= 1.0;
    }
    report.verdicts.push_back(v);
  }
  return report;
}

void write_series_csv(const std::vector<DiagnosticsRecord>& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const auto& cols = record_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : series) {
    const auto values = record_values(r);
    for (std::size_t c = 0; c < values.size(); ++c) out << (c ? "," : "") << format_double(values[c]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string report_json(const BoundReport& report) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& v : report.verdicts) {
    j[v.name] = {{"name", v.name},
                 {"pass", v.pass},
                 {"worst_time", v.worst_time},
                 {"worst_ratio", v.worst_ratio},
                 {"kind", v.kind},
                 {"applicable", v.applicable}};
  }
  return j.dump(2);
}

}  // namespace chemo
