#pragma once

#include <cstddef>

namespace chemo {

// Uniform cell-centred discretisation of the rectangle [0,lx]×[0,ly].
// Cells are stored row-major: index = j·nx + i.
class Grid {
 public:
  Grid(int nx, int ny, double lx = 1.0, double ly = 1.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_area() const { return hx_ * hy_; }
  double area() const { return lx_ * ly_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }
  double x(int i) const { return (i + 0.5) * hx_; }
  double y(int j) const { return (j + 0.5) * hy_; }

  bool operator==(const Grid& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && lx_ == o.lx_ && ly_ == o.ly_;
  }

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
  double hx_;
  double hy_;
};

}  // namespace chemo
