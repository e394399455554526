#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemo/oracles.hpp"

namespace chemo {

// Parameters of the homogeneous logistic oracle: u0 = 2, r = μ = 1.
ModelParameters logistic_oracle_params();

// Temporal study on the homogeneous logistic case up to t_end = 5.
OrderReport logistic_temporal_study(const std::vector<double>& dts);

// Spatial study on the (1,0) Neumann heat eigenmode, dt = dt_factor · h².
OrderReport heat_spatial_study(const std::vector<int>& cells, double dt_factor = 0.5, double t_end = 0.05);

// Sup-norm drift of the discrete steady state (r/μ, βr/(αμ)) after `steps`
// fixed steps of length dt.
double steady_state_drift(const ModelParameters& p, const Grid& g, long steps, double dt);

// Fourth-order Runge–Kutta reference for the homogeneous signal, independent
// of the quadrature oracle.
double homogeneous_v_rk4(double v0, const LogisticPath& path, double alpha, double beta, double t, int steps);

struct VerificationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the oracle and convergence suite, writing order reports into out_dir.
std::vector<VerificationCheck> run_verification(const std::filesystem::path& out_dir);

}  // namespace chemo
