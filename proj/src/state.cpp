#include "chemo/state.hpp"

#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

InitialData validate_initial_data(const InitialData& d, const Grid& g) {
  using Kind = InitialDataError::Kind;
  if (!(d.u0.grid() == g) || !(d.v0.grid() == g)) {
    throw InitialDataError(Kind::GridMismatch, "initial fields are not defined on the run grid");
  }
  for (std::size_t n = 0; n < d.u0.size(); ++n) {
    const double u = d.u0[n];
    if (!std::isfinite(u) || u < 0.0) {
      throw InitialDataError(Kind::NonnegativityViolation,
                             "u0 must be finite and nonnegative (cell " + std::to_string(n) + ")");
    }
  }
  if (!(integrate(d.u0) > 0.0)) {
    throw InitialDataError(Kind::ZeroMass, "u0 must have positive total mass");
  }
  for (std::size_t n = 0; n < d.v0.size(); ++n) {
    const double v = d.v0[n];
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InitialDataError(Kind::PositivityViolation,
                             "v0 must be finite and strictly positive (cell " + std::to_string(n) + ")");
    }
  }
  return d;
}

}  // namespace chemo
