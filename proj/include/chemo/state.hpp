#pragma once

#include "chemo/field.hpp"

namespace chemo {

struct InitialData {
  ScalarField u0;
  ScalarField v0;
};

struct SimState {
  ScalarField u;
  ScalarField v;
  double t = 0.0;
  double last_dt = 0.0;
  long step_count = 0;

  const Grid& grid() const { return u.grid(); }
};

// u0 ≥ 0 with ∫u0 > 0, v0 > 0, both on g. Throws InitialDataError.
InitialData validate_initial_data(const InitialData& d, const Grid& g);

}  // namespace chemo
