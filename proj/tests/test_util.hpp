#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "chemo/field.hpp"

namespace chemo::test {

inline ScalarField random_field(const Grid& g, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  ScalarField f(g);
  for (auto& x : f.values()) x = d(rng);
  return f;
}

inline Grid random_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(3, 24);
  std::uniform_real_distribution<double> l(0.5, 3.0);
  return Grid(n(rng), n(rng), l(rng), l(rng));
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto root = std::filesystem::temp_directory_path() / "chemosim_tests" / name;
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);
  return root;
}

}  // namespace chemo::test
