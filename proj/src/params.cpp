#include "chemo/params.hpp"

#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw OutOfRange(name, "must be finite and > 0, got " + std::to_string(value));
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw OutOfRange(name, "must be finite and >= 0, got " + std::to_string(value));
  }
}

}  // namespace

ModelParameters validate_parameters(const ModelParameters& p) {
  require_positive(p.chi, "chi");
  require_positive(p.r, "r");
  require_positive(p.mu, "mu");
  if (!(p.k > 0.0 && p.k < 1.0)) {
    throw OutOfRange("k", "must lie in (0,1), got " + std::to_string(p.k));
  }
  require_positive(p.alpha, "alpha");
  require_positive(p.beta, "beta");
  if (p.kappa != 0 && p.kappa != 1) {
    throw OutOfRange("kappa", "must be 0 or 1, got " + std::to_string(p.kappa));
  }
  return p;
}

void check_numerically_admissible(const ModelParameters& p) {
  require_nonnegative(p.chi, "chi");
  require_nonnegative(p.r, "r");
  require_nonnegative(p.mu, "mu");
  if (!(p.k >= 0.0 && p.k < 1.0)) {
    throw OutOfRange("k", "must lie in [0,1), got " + std::to_string(p.k));
  }
  require_nonnegative(p.alpha, "alpha");
  require_nonnegative(p.beta, "beta");
  if (p.kappa != 0 && p.kappa != 1) {
    throw OutOfRange("kappa", "must be 0 or 1, got " + std::to_string(p.kappa));
  }
  // the elliptic signal equation needs α > 0 to be uniquely solvable
  if (p.kappa == 0) require_positive(p.alpha, "alpha");
}

}  // namespace chemo
