#include "chemo/operators.hpp"

#include <cmath>
#include <string>

#include "chemo/errors.hpp"

namespace chemo {

FaceFluxSet::FaceFluxSet(const Grid& g)
    : flux_x(static_cast<std::size_t>(g.nx() + 1) * g.ny(), 0.0),
      flux_y(static_cast<std::size_t>(g.nx()) * (g.ny() + 1), 0.0) {}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out(f.grid());
  apply_shifted_laplacian(0.0, f, out);
  for (auto& x : out.values()) x = -x;
  return out;
}

void apply_shifted_laplacian(double shift, const ScalarField& x, ScalarField& out) {
  (void)apply_shifted_laplacian_dot(shift, x, out);
}

double apply_shifted_laplacian_dot(double shift, const ScalarField& x, ScalarField& out) {
  const Grid& g = x.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  const double cx = 1.0 / (g.hx() * g.hx());
  const double cy = 1.0 / (g.hy() * g.hy());
  const double* in = x.values().data();
  double* res = out.values().data();
  double dot = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double* row = in + static_cast<std::size_t>(j) * nx;
    const double* below = j > 0 ? row - nx : row;
    const double* above = j < ny - 1 ? row + nx : row;
    double* dst = res + static_cast<std::size_t>(j) * nx;
    auto cell = [&](int i, double left, double right) {
      const double c = row[i];
      const double lap = cx * ((left - c) + (right - c)) + cy * ((below[i] - c) + (above[i] - c));
      dst[i] = shift * c - lap;
      dot += c * dst[i];
    };
    cell(0, row[0], row[1]);
    for (int i = 1; i < nx - 1; ++i) cell(i, row[i - 1], row[i + 1]);
    cell(nx - 1, row[nx - 2], row[nx - 1]);
  }
  return dot;
}

FaceFluxSet taxis_velocity(const ScalarField& v, const ModelParameters& p, double v_guard) {
  const Grid& g = v.grid();
  const double vmin = v.min();
  if (!v.all_finite() || !(vmin > 0.0) || vmin < v_guard) {
    throw SingularSignal("signal minimum " + std::to_string(vmin) + " below trust floor " +
                         std::to_string(v_guard));
  }
  FaceFluxSet w(g);
  const int nx = g.nx();
  const int ny = g.ny();
  const double sx = p.chi / g.hx();
  const double sy = p.chi / g.hy();
  auto speed = [&](double self, double nb, double scale) {
    const double grad = scale * (nb - self);
    return p.k == 0.0 ? grad : grad / std::pow(0.5 * (self + nb), p.k);
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      w.flux_x[static_cast<std::size_t>(j) * (nx + 1) + i] = speed(v.at(i - 1, j), v.at(i, j), sx);
    }
  }
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      w.flux_y[static_cast<std::size_t>(j) * nx + i] = speed(v.at(i, j - 1), v.at(i, j), sy);
    }
  }
  return w;
}

FaceFluxSet upwind_fluxes(const FaceFluxSet& velocity, const ScalarField& u) {
  const Grid& g = u.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  FaceFluxSet f(g);
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const std::size_t n = static_cast<std::size_t>(j) * (nx + 1) + i;
      const double w = velocity.flux_x[n];
      f.flux_x[n] = w * (w > 0.0 ? u.at(i - 1, j) : u.at(i, j));
    }
  }
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t n = static_cast<std::size_t>(j) * nx + i;
      const double w = velocity.flux_y[n];
      f.flux_y[n] = w * (w > 0.0 ? u.at(i, j - 1) : u.at(i, j));
    }
  }
  return f;
}

ScalarField flux_divergence(const FaceFluxSet& flux, const Grid& g) {
  const int nx = g.nx();
  const int ny = g.ny();
  ScalarField div(g);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t fx = static_cast<std::size_t>(j) * (nx + 1) + i;
      const std::size_t fy = static_cast<std::size_t>(j) * nx + i;
      div.at(i, j) = (flux.flux_x[fx + 1] - flux.flux_x[fx]) / g.hx() +
                     (flux.flux_y[fy + nx] - flux.flux_y[fy]) / g.hy();
    }
  }
  return div;
}

ScalarField outflow_rate(const FaceFluxSet& velocity, const Grid& g) {
  const int nx = g.nx();
  const int ny = g.ny();
  ScalarField rate(g);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t fx = static_cast<std::size_t>(j) * (nx + 1) + i;
      const std::size_t fy = static_cast<std::size_t>(j) * nx + i;
      double out = 0.0;
      out += std::max(velocity.flux_x[fx + 1], 0.0) / g.hx();
      out += std::max(-velocity.flux_x[fx], 0.0) / g.hx();
      out += std::max(velocity.flux_y[fy + nx], 0.0) / g.hy();
      out += std::max(-velocity.flux_y[fy], 0.0) / g.hy();
      rate.at(i, j) = out;
    }
  }
  return rate;
}

ScalarField chemotactic_divergence(const ScalarField& u, const ScalarField& v, const ModelParameters& p,
                                   double v_guard) {
  return flux_divergence(upwind_fluxes(taxis_velocity(v, p, v_guard), u), u.grid());
}

ScalarField gradient_squared(const ScalarField& f) {
  const Grid& g = f.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  ScalarField out(g);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double c = f.at(i, j);
      const double left = i > 0 ? f.at(i - 1, j) : c;
      const double right = i < nx - 1 ? f.at(i + 1, j) : c;
      const double below = j > 0 ? f.at(i, j - 1) : c;
      const double above = j < ny - 1 ? f.at(i, j + 1) : c;
      const double dx = (right - left) / (2.0 * g.hx());
      const double dy = (above - below) / (2.0 * g.hy());
      out.at(i, j) = dx * dx + dy * dy;
    }
  }
  return out;
}

}  // namespace chemo
