#include "chemo/grid.hpp"

#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 3) throw OutOfRange("nx", "need at least 3 cells, got " + std::to_string(nx));
  if (ny < 3) throw OutOfRange("ny", "need at least 3 cells, got " + std::to_string(ny));
  if (!(lx > 0.0) || !std::isfinite(lx)) throw OutOfRange("lx", "must be finite and > 0");
  if (!(ly > 0.0) || !std::isfinite(ly)) throw OutOfRange("ly", "must be finite and > 0");
  hx_ = lx / nx;
  hy_ = ly / ny;
}

}  // namespace chemo
