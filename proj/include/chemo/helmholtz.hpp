#pragma once

#include <optional>

#include "chemo/field.hpp"

namespace chemo {

// (shift·I − Δ_h) x = rhs with the mirrored Neumann Laplacian. shift > 0
// makes the operator symmetric positive definite.
struct HelmholtzProblem {
  double shift = 1.0;
  ScalarField rhs;
  double tol = 1e-10;
  int max_iter = 0;  // 0 selects 10·(nx + ny)
  bool jacobi = false;
  std::optional<ScalarField> initial_guess;
};

struct HelmholtzSolution {
  ScalarField solution;
  int iterations = 0;
  // ‖rhs − (shift·I − Δ_h) x‖₂ / ‖rhs‖₂, recomputed from the returned x.
  double residual = 0.0;
  // ‖rhs − (shift·I − Δ_h) x‖₂ / shift: bounds the pointwise error of x,
  // since the smallest eigenvalue of the operator is shift.
  double error_bound = 0.0;
};

int default_max_iter(const Grid& g);

// Conjugate gradients. After convergence the constant mode of the residual is
// removed exactly (adding a constant to x only shifts the residual by a
// constant), so shift·∫x = ∫rhs holds to rounding.
// Throws NoConvergence when max_iter is exhausted.
HelmholtzSolution solve_helmholtz(const HelmholtzProblem& prob);

}  // namespace chemo
