#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chemo/integrator.hpp"

namespace chemo {

// Closed-form solution of u' = r u − μ u².
double logistic_oracle(double u0, double r, double mu, double t);

struct LogisticPath {
  double u0 = 0.0;
  double r = 1.0;
  double mu = 1.0;
};

// Solution of v' = −α v + β u(t) along a logistic path:
//   e^{−αt} v0 + β ∫₀ᵗ e^{−α(t−s)} u(s) ds,
// the integral by adaptive Gauss–Kronrod quadrature (relative tolerance 1e-13).
double homogeneous_v_oracle(double v0, const LogisticPath& path, double alpha, double beta, double t);

// 1 + A cos(mx π x/lx) cos(my π y/ly) exp(−π²((mx/lx)² + (my/ly)²) t) at cell
// centres: the exact Neumann heat solution.
ScalarField heat_eigenmode_oracle(double amplitude, int mx, int my, const Grid& g, double t);

enum class Norm { Linf, L2 };

struct OracleCase {
  std::string name;
  ModelParameters params;
  std::function<InitialData(const Grid&)> init;
  std::function<double(double x, double y, double t)> u_exact;
  std::optional<std::function<double(double x, double y, double t)>> v_exact;
  Norm norm = Norm::Linf;
  double t_end = 1.0;
};

// Exact on the domain [0,lx]×[0,ly]; run it only on grids of that size.
OracleCase heat_eigenmode_case(double amplitude, int mx, int my, double t_end, double lx = 1.0, double ly = 1.0);
OracleCase homogeneous_logistic_case(double u0, double v0, const ModelParameters& p, double t_end);

enum class Axis { Space, Time };

struct Resolution {
  Grid grid;
  double dt;
};

struct ErrorRow {
  double h;
  double dt;
  double error;
};

struct OrderReport {
  std::string case_name;
  Axis axis;
  double observed_order;
  std::vector<ErrorRow> error_table;
};

// Runs the case at each resolution with a fixed step, measures the error of u
// (and of v when an exact signal is known; the larger of the two counts)
// against the exact solution at t_end, and fits the observed order by least
// squares on (log h, log error) or (log dt, log error).
// Throws Error("InsufficientResolution ...") if errors do not strictly decrease.
OrderReport convergence_study(const OracleCase& oc, const std::vector<Resolution>& runs, Axis axis);

// Error of a single fixed-step run against the case's exact solution.
double oracle_error(const OracleCase& oc, const Resolution& res);

// Least-squares slope of log(error) against log(scale).
double fit_order(const std::vector<double>& scale, const std::vector<double>& error);

// Self-convergence without an exact solution: solves on successively doubled
// grids (dt ∝ h), restricts each fine solution onto the next coarser grid by
// 2×2 averaging, and returns the L2 differences ‖u_h − R u_{h/2}‖.
std::vector<double> self_convergence_differences(const ModelParameters& p,
                                                 const std::function<InitialData(const Grid&)>& init,
                                                 const std::vector<int>& cells, double dt_coarse, double t_end);

std::string order_report_json(const OrderReport& r);

}  // namespace chemo
