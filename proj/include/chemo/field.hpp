#pragma once

#include <functional>
#include <span>
#include <vector>

#include "chemo/grid.hpp"

namespace chemo {

// Cell-centred real values over a Grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double value = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  // Samples f at every cell centre.
  static ScalarField sample(const Grid& grid, const std::function<double(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t n) { return values_[n]; }
  double operator[](std::size_t n) const { return values_[n]; }
  double& at(int i, int j) { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double min() const;
  double max() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Midpoint-rule ∫Ω f: Σ f · cell_area.
double integrate(const ScalarField& f);

// ∫Ω g(f) without materialising the intermediate field.
double integrate(const ScalarField& f, const std::function<double(double)>& g);

}  // namespace chemo
