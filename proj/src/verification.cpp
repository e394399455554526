#include "chemo/verification.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "chemo/errors.hpp"

namespace chemo {

ModelParameters logistic_oracle_params() { return ModelParameters{1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1}; }

OrderReport logistic_temporal_study(const std::vector<double>& dts) {
  const OracleCase oc = homogeneous_logistic_case(2.0, 1.0, logistic_oracle_params(), 5.0);
  std::vector<Resolution> runs;
  for (double dt : dts) runs.push_back({Grid(3, 3), dt});
  return convergence_study(oc, runs, Axis::Time);
}

OrderReport heat_spatial_study(const std::vector<int>& cells, double dt_factor, double t_end) {
  const OracleCase oc = heat_eigenmode_case(0.5, 1, 0, t_end);
  std::vector<Resolution> runs;
  for (int n : cells) {
    const Grid g(n, n);
    runs.push_back({g, dt_factor * g.hx() * g.hx()});
  }
  return convergence_study(oc, runs, Axis::Space);
}

double steady_state_drift(const ModelParameters& p, const Grid& g, long steps, double dt) {
  const double u_star = p.r / p.mu;
  const double v_star = p.beta * p.r / (p.alpha * p.mu);
  StepControl c;
  c.dt_init = c.dt_min = c.dt_max = dt;
  c.t_end = static_cast<double>(steps) * dt;
  c.blowup_threshold = 1e300;
  SimState s{ScalarField(g, u_star), ScalarField(g, v_star), 0.0, dt, 0};
  c.singular_guard = 1e-12 * v_star;
  for (long n = 0; n < steps; ++n) {
    StepOutcome o = step(s, p, c, std::numeric_limits<double>::infinity());
    if (o.status != StepStatus::Advanced) throw Error(std::string("steady-state step failed: ") + to_string(o.status));
    s = std::move(o.state);
  }
  double drift = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    drift = std::max({drift, std::abs(s.u[m] - u_star), std::abs(s.v[m] - v_star)});
  }
  return drift;
}

double homogeneous_v_rk4(double v0, const LogisticPath& path, double alpha, double beta, double t, int steps) {
  // integrate the pair (u, v) so that u is not taken from the closed form
  auto fu = [&](double u) { return path.r * u - path.mu * u * u; };
  auto fv = [&](double u, double v) { return -alpha * v + beta * u; };
  double u = path.u0;
  double v = v0;
  const double h = t / steps;
  for (int n = 0; n < steps; ++n) {
    const double k1u = fu(u), k1v = fv(u, v);
    const double k2u = fu(u + 0.5 * h * k1u), k2v = fv(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
    const double k3u = fu(u + 0.5 * h * k2u), k3v = fv(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
    const double k4u = fu(u + h * k3u), k4v = fv(u + h * k3u, v + h * k3v);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return v;
}

namespace {

void write_report(const std::filesystem::path& dir, const std::string& name, const OrderReport& r) {
  std::ofstream out(dir / (name + ".json"));
  if (!out) throw IoError("cannot write order report into " + dir.string());
  out << order_report_json(r) << '\n';
}

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

std::vector<VerificationCheck> run_verification(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<VerificationCheck> checks;
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      checks.push_back(body());
    } catch (const std::exception& e) {
      checks.push_back({name, false, e.what()});
    }
  };

  guarded("logistic_temporal_order", [&] {
    const OrderReport r = logistic_temporal_study({2e-3, 1e-3, 5e-4});
    write_report(out_dir, "order_logistic_time", r);
    const double exact = logistic_oracle(2.0, 1.0, 1.0, 5.0);
    const double rel = r.error_table[1].error / exact;
    const bool ok = r.observed_order >= 0.8 && r.observed_order <= 1.2 && rel <= 1e-3;
    return VerificationCheck{"logistic_temporal_order", ok,
                             "order " + fmt(r.observed_order) + ", relative error at dt=1e-3 " + fmt(rel)};
  });
  guarded("heat_spatial_order", [&] {
    const OrderReport r = heat_spatial_study({32, 64, 128});
    write_report(out_dir, "order_heat_space", r);
    const bool ok = r.observed_order >= 1.8 && r.observed_order <= 2.2;
    return VerificationCheck{"heat_spatial_order", ok, "order " + fmt(r.observed_order)};
  });
  guarded("signal_oracle_cross_check", [&] {
    const LogisticPath path{2.0, 1.0, 1.0};
    const double quad = homogeneous_v_oracle(1.0, path, 1.0, 1.0, 1.0);
    const double rk = homogeneous_v_rk4(1.0, path, 1.0, 1.0, 1.0, 20000);
    const double diff = std::abs(quad - rk);
    return VerificationCheck{"signal_oracle_cross_check", diff <= 1e-8, "|quadrature - rk4| = " + fmt(diff)};
  });
  guarded("steady_state_fixed_point", [&] {
    const double drift = steady_state_drift(logistic_oracle_params(), Grid(16, 16), 10000, 1e-2);
    return VerificationCheck{"steady_state_fixed_point", drift <= 1e-8, "drift " + fmt(drift)};
  });
  guarded("determinism", [&] {
    const OracleCase oc = heat_eigenmode_case(0.5, 1, 0, 0.05);
    const Grid g(32, 32);
    const Resolution res{g, 0.5 * g.hx() * g.hx()};
    const double a = oracle_error(oc, res);
    const double b = oracle_error(oc, res);
    return VerificationCheck{"determinism", a == b, "errors " + fmt(a) + " / " + fmt(b)};
  });
  guarded("taxis_self_convergence", [&] {
    ModelParameters p{2.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1};
    auto init = [](const Grid& g) {
      return InitialData{ScalarField::sample(g,
                                             [](double x, double y) {
                                               return 1.0 + 0.5 * std::cos(std::numbers::pi * x) * std::cos(std::numbers::pi * y);
                                             }),
                         ScalarField::sample(g, [](double x, double) { return 0.5 + 0.25 * std::cos(std::numbers::pi * x); })};
    };
    const auto d = self_convergence_differences(p, init, {16, 32, 64}, 4e-3, 0.1);
    const double order = std::log2(d[0] / d[1]);
    return VerificationCheck{"taxis_self_convergence", order >= 0.8,
                             "differences " + fmt(d[0]) + ", " + fmt(d[1]) + ", order " + fmt(order)};
  });
  return checks;
}

}  // namespace chemo
