#pragma once

#include <vector>

#include "chemo/field.hpp"
#include "chemo/params.hpp"

namespace chemo {

// Quantities living on cell faces. flux_x holds the (nx+1)·ny vertical faces,
// flux_x[j·(nx+1) + i] being the face on the left of cell (i,j); flux_y holds
// the nx·(ny+1) horizontal faces, flux_y[j·nx + i] below cell (i,j). Boundary
// faces are always zero (homogeneous Neumann). Positive values point towards
// increasing x (resp. y).
struct FaceFluxSet {
  explicit FaceFluxSet(const Grid& g);

  std::vector<double> flux_x;
  std::vector<double> flux_y;
};

// 5-point Laplacian with mirrored ghost cells.
ScalarField laplacian(const ScalarField& f);

// out = shift·x − Δx, the operator of every implicit solve.
void apply_shifted_laplacian(double shift, const ScalarField& x, ScalarField& out);

// Same, returning x·out computed in the same pass.
double apply_shifted_laplacian_dot(double shift, const ScalarField& x, ScalarField& out);

// Face taxis speed χ (v_nb − v_self)/h / (½(v_self + v_nb))^k.
// Throws SingularSignal when v is non-finite or min v < v_guard.
FaceFluxSet taxis_velocity(const ScalarField& v, const ModelParameters& p, double v_guard = 0.0);

// Donor-cell fluxes w·u_upwind for the given face velocities.
FaceFluxSet upwind_fluxes(const FaceFluxSet& velocity, const ScalarField& u);

// Net outflux per unit area.
ScalarField flux_divergence(const FaceFluxSet& flux, const Grid& g);

// Per cell, Σ over faces whose velocity leaves the cell of |w| / h. A donor-cell
// step of length dt keeps u ≥ 0 as long as dt · outflow_rate ≤ 1.
ScalarField outflow_rate(const FaceFluxSet& velocity, const Grid& g);

// ∇·(χ u v^{-k} ∇v) in conservative upwind form.
ScalarField chemotactic_divergence(const ScalarField& u, const ScalarField& v, const ModelParameters& p,
                                   double v_guard = 0.0);

// |∇f|² from central differences; at boundary cells the mirrored ghost value
// is used, so the normal component reduces to a one-sided half difference.
ScalarField gradient_squared(const ScalarField& f);

}  // namespace chemo
