#pragma once

namespace chemo {

// Constants of the chemotaxis system
//   u_t       = Δu − χ∇·(u v^{-k} ∇v) + r u − μ u²
//   κ v_t     = Δv − α v + β u
// with homogeneous Neumann data on both components.
struct ModelParameters {
  double chi = 1.0;
  double r = 1.0;
  double mu = 1.0;
  double k = 0.5;
  double alpha = 1.0;
  double beta = 1.0;
  int kappa = 1;

  bool parabolic() const { return kappa == 1; }
};

// Enforces the model's standing hypotheses: χ, r, μ, α, β > 0, k ∈ (0,1),
// κ ∈ {0,1}. Throws OutOfRange naming the first offending field.
ModelParameters validate_parameters(const ModelParameters& p);

// Looser check used by the stepper itself: allows the degenerate constants
// (χ = 0, r = μ = 0, α = β = 0) that verification cases rely on, but still
// rejects anything that would make the scheme ill-defined.
void check_numerically_admissible(const ModelParameters& p);

}  // namespace chemo
