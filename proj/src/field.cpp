#include "chemo/field.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

ScalarField::ScalarField(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("field has " + std::to_string(values_.size()) + " values, grid needs " +
                std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) out.at(i, j) = f(grid.x(i), grid.y(j));
  }
  return out;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double x : f.values()) sum += x;
  return sum * f.grid().cell_area();
}

double integrate(const ScalarField& f, const std::function<double(double)>& g) {
  double sum = 0.0;
  for (double x : f.values()) sum += g(x);
  return sum * f.grid().cell_area();
}

}  // namespace chemo
