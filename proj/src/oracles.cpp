#include "chemo/oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "chemo/errors.hpp"

namespace chemo {

double logistic_oracle(double u0, double r, double mu, double t) {
  if (r == 0.0) return u0 / (1.0 + mu * u0 * t);
  // divided through by e^{rt} so large rt cannot overflow
  const double decay = std::exp(-r * t);
  return r * u0 / (r * decay - mu * u0 * std::expm1(-r * t));
}

double homogeneous_v_oracle(double v0, const LogisticPath& path, double alpha, double beta, double t) {
  if (t == 0.0) return v0;
  auto integrand = [&](double s) {
    return std::exp(-alpha * (t - s)) * logistic_oracle(path.u0, path.r, path.mu, s);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double integral = gauss_kronrod<double, 61>::integrate(integrand, 0.0, t, 15, 1e-13);
  return std::exp(-alpha * t) * v0 + beta * integral;
}

ScalarField heat_eigenmode_oracle(double amplitude, int mx, int my, const Grid& g, double t) {
  using std::numbers::pi;
  const double kx = mx * pi / g.lx();
  const double ky = my * pi / g.ly();
  const double decay = std::exp(-(kx * kx + ky * ky) * t);
  return ScalarField::sample(g, [&](double x, double y) {
    return 1.0 + amplitude * std::cos(kx * x) * std::cos(ky * y) * decay;
  });
}

OracleCase heat_eigenmode_case(double amplitude, int mx, int my, double t_end, double lx, double ly) {
  OracleCase oc;
  oc.name = "heat_eigenmode_" + std::to_string(mx) + "_" + std::to_string(my);
  // pure diffusion: no taxis, no reaction, inert signal
  oc.params = ModelParameters{0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 1};
  oc.init = [=](const Grid& g) {
    return InitialData{heat_eigenmode_oracle(amplitude, mx, my, g, 0.0), ScalarField(g, 1.0)};
  };
  oc.u_exact = [=](double x, double y, double t) {
    using std::numbers::pi;
    const double kx = mx * pi / lx;
    const double ky = my * pi / ly;
    return 1.0 + amplitude * std::cos(kx * x) * std::cos(ky * y) * std::exp(-(kx * kx + ky * ky) * t);
  };
  oc.norm = Norm::Linf;
  oc.t_end = t_end;
  return oc;
}

OracleCase homogeneous_logistic_case(double u0, double v0, const ModelParameters& p, double t_end) {
  OracleCase oc;
  oc.name = "homogeneous_logistic";
  oc.params = p;
  oc.init = [=](const Grid& g) { return InitialData{ScalarField(g, u0), ScalarField(g, v0)}; };
  oc.u_exact = [=](double, double, double t) { return logistic_oracle(u0, p.r, p.mu, t); };
  if (p.parabolic()) {
    oc.v_exact = [=](double, double, double t) {
      return homogeneous_v_oracle(v0, {u0, p.r, p.mu}, p.alpha, p.beta, t);
    };
  }
  oc.norm = Norm::Linf;
  oc.t_end = t_end;
  return oc;
}

namespace {

StepControl fixed_step(double dt, double t_end) {
  StepControl c;
  c.dt_init = c.dt_min = c.dt_max = dt;
  c.cfl_safety = 1.0;
  c.t_end = t_end;
  c.blowup_threshold = 1e300;
  c.solver_tol = 1e-12;
  return c;
}

double field_error(const ScalarField& numeric, const std::function<double(double, double, double)>& exact,
                   double t, Norm norm) {
  const Grid& g = numeric.grid();
  double worst = 0.0;
  double sq = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double e = std::abs(numeric.at(i, j) - exact(g.x(i), g.y(j), t));
      worst = std::max(worst, e);
      sq += e * e;
    }
  }
  return norm == Norm::Linf ? worst : std::sqrt(sq * g.cell_area());
}

// 2×2 block average onto the grid with half the cells per axis
ScalarField restrict_to(const ScalarField& fine, const Grid& coarse) {
  ScalarField out(coarse);
  for (int j = 0; j < coarse.ny(); ++j) {
    for (int i = 0; i < coarse.nx(); ++i) {
      out.at(i, j) = 0.25 * (fine.at(2 * i, 2 * j) + fine.at(2 * i + 1, 2 * j) + fine.at(2 * i, 2 * j + 1) +
                             fine.at(2 * i + 1, 2 * j + 1));
    }
  }
  return out;
}

}  // namespace

double oracle_error(const OracleCase& oc, const Resolution& res) {
  const InitialData init = oc.init(res.grid);
  const RunSummary summary = run(init, oc.params, fixed_step(res.dt, oc.t_end));
  if (summary.final.status != StepStatus::Advanced) {
    throw Error(oc.name + ": oracle run failed with " + to_string(summary.final.status) + ": " +
                summary.final.message);
  }
  const SimState& s = summary.final.state;
  double err = field_error(s.u, oc.u_exact, s.t, oc.norm);
  if (oc.v_exact) err = std::max(err, field_error(s.v, *oc.v_exact, s.t, oc.norm));
  return err;
}

double fit_order(const std::vector<double>& scale, const std::vector<double>& error) {
  const std::size_t n = scale.size();
  if (n < 2 || error.size() != n) throw Error("order fit needs at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(scale[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

OrderReport convergence_study(const OracleCase& oc, const std::vector<Resolution>& runs, Axis axis) {
  OrderReport report{oc.name, axis, 0.0, {}};
  std::vector<double> scale;
  std::vector<double> error;
  for (const auto& res : runs) {
    const double err = oracle_error(oc, res);
    const double h = std::max(res.grid.hx(), res.grid.hy());
    report.error_table.push_back({h, res.dt, err});
    scale.push_back(axis == Axis::Space ? h : res.dt);
    error.push_back(err);
  }
  for (std::size_t i = 1; i < error.size(); ++i) {
    if (!(error[i] < error[i - 1])) {
      throw Error("InsufficientResolution: " + oc.name + " error does not decrease under refinement");
    }
  }
  report.observed_order = fit_order(scale, error);
  return report;
}

std::vector<double> self_convergence_differences(const ModelParameters& p,
                                                 const std::function<InitialData(const Grid&)>& init,
                                                 const std::vector<int>& cells, double dt_coarse,
                                                 double t_end) {
  std::vector<ScalarField> solutions;
  double dt = dt_coarse;
  for (int n : cells) {
    const Grid g(n, n);
    StepControl c = fixed_step(dt, t_end);
    c.solver_tol = 1e-11;
    const RunSummary s = run(init(g), p, c);
    if (s.final.status != StepStatus::Advanced) {
      throw Error(std::string("self-convergence run failed: ") + to_string(s.final.status));
    }
    solutions.push_back(s.final.state.u);
    dt *= 0.5;
  }
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < solutions.size(); ++i) {
    const ScalarField& coarse = solutions[i];
    const ScalarField fine = restrict_to(solutions[i + 1], coarse.grid());
    double sq = 0.0;
    for (std::size_t m = 0; m < coarse.size(); ++m) sq += (coarse[m] - fine[m]) * (coarse[m] - fine[m]);
    diffs.push_back(std::sqrt(sq * coarse.grid().cell_area()));
  }
  return diffs;
}

std::string order_report_json(const OrderReport& r) {
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const auto& row : r.error_table) table.push_back({{"h", row.h}, {"dt", row.dt}, {"error", row.error}});
  nlohmann::ordered_json j = {{"case", r.case_name},
                              {"axis", r.axis == Axis::Space ? "space" : "time"},
                              {"observed_order", r.observed_order},
                              {"error_table", table}};
  return j.dump(2);
}

}  // namespace chemo
