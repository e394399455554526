#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chemo/errors.hpp"
#include "chemo/operators.hpp"
#include "test_util.hpp"

using namespace chemo;
using std::numbers::pi;

namespace {
const ModelParameters kTaxis{1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1};

double l1(const ScalarField& f) {
  return integrate(f, [](double x) { return std::abs(x); });
}
}  // namespace

TEST_CASE("laplacian of a constant vanishes") {
  const ScalarField lap = laplacian(ScalarField(Grid(9, 7, 2.0, 1.0), 3.7));
  for (double x : lap.values()) CHECK(x == 0.0);
}

TEST_CASE("laplacian of x^2 is 2 in the interior") {
  const Grid g(16, 5);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return x * x; });
  const ScalarField lap = laplacian(f);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) CHECK(lap.at(i, j) == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("cosine is a discrete eigenfield of the mirrored stencil") {
  for (int n : {3, 8, 33}) {
    const Grid g(n, 4, 2.5, 1.0);
    const ScalarField f = ScalarField::sample(g, [&](double x, double) { return std::cos(pi * x / g.lx()); });
    const double eig = -(2.0 / (g.hx() * g.hx())) * (1.0 - std::cos(pi * g.hx() / g.lx()));
    const ScalarField lap = laplacian(f);
    for (std::size_t m = 0; m < g.size(); ++m) CHECK(lap[m] == doctest::Approx(eig * f[m]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("laplacian commutes with reflections") {
  std::mt19937_64 rng(5);
  const Grid g(10, 7);
  ScalarField f = test::random_field(g, rng);
  // symmetrise in x
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx() / 2; ++i) f.at(g.nx() - 1 - i, j) = f.at(i, j);
  }
  const ScalarField lap = laplacian(f);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) CHECK(lap.at(i, j) == lap.at(g.nx() - 1 - i, j));
  }
}

TEST_CASE("chemotactic divergence vanishes for flat signal or empty density") {
  const Grid g(6, 6);
  std::mt19937_64 rng(1);
  const ScalarField u = test::random_field(g, rng, 0.0, 2.0);
  const ScalarField flat = chemotactic_divergence(u, ScalarField(g, 0.3), kTaxis);
  for (double x : flat.values()) CHECK(x == 0.0);
  const ScalarField v = test::random_field(g, rng, 0.5, 2.0);
  const ScalarField empty = chemotactic_divergence(ScalarField(g, 0.0), v, kTaxis);
  for (double x : empty.values()) CHECK(x == 0.0);
}

TEST_CASE("three-cell hand evaluation of the upwind flux") {
  // h = 1 on a 3x3 grid varying only in x: u = (1,1,1), v = (1,4,1)
  const Grid g(3, 3, 3.0, 3.0);
  const double v_row[3] = {1.0, 4.0, 1.0};
  ScalarField u(g, 1.0);
  ScalarField v(g);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) v.at(i, j) = v_row[i];
  }
  const ModelParameters p{1.0, 1.0, 1.0, 0.5, 1.0, 1.0, 1};
  const ScalarField div = chemotactic_divergence(u, v, p);

  // independent scalar evaluation: face speeds w = χ Δv / h / (mean v)^k
  const double w1 = (4.0 - 1.0) / 1.0 / std::sqrt((1.0 + 4.0) / 2.0);  // cell 0 -> cell 1
  const double w2 = (1.0 - 4.0) / 1.0 / std::sqrt((4.0 + 1.0) / 2.0);  // cell 1 -> cell 2 (negative: flows into cell 1)
  const double f1 = w1 * 1.0;  // donor cell 0
  const double f2 = w2 * 1.0;  // donor cell 2
  const double expected[3] = {f1 / 1.0, (f2 - f1) / 1.0, -f2 / 1.0};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) CHECK(div.at(i, j) == doctest::Approx(expected[i]).epsilon(1e-14));
  }
  // taxis concentrates density at the signal peak
  CHECK(div.at(1, 1) < 0.0);
  CHECK(div.at(0, 1) > 0.0);
}

TEST_CASE("donor cell follows the sign of the face speed") {
  const Grid g(3, 3, 3.0, 3.0);
  const double u_row[3] = {2.0, 5.0, 7.0};
  const double v_row[3] = {1.0, 4.0, 1.0};
  ScalarField u(g);
  ScalarField v(g);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      u.at(i, j) = u_row[i];
      v.at(i, j) = v_row[i];
    }
  }
  const ModelParameters p{2.0, 1.0, 1.0, 0.25, 1.0, 1.0, 1};
  const ScalarField div = chemotactic_divergence(u, v, p);
  const double w1 = 2.0 * 3.0 / std::pow(2.5, 0.25);
  const double w2 = -2.0 * 3.0 / std::pow(2.5, 0.25);
  const double f1 = w1 * 2.0;  // flow 0 -> 1 carries u of cell 0
  const double f2 = w2 * 7.0;  // flow 2 -> 1 carries u of cell 2
  CHECK(div.at(0, 0) == doctest::Approx(f1));
  CHECK(div.at(1, 0) == doctest::Approx(f2 - f1));
  CHECK(div.at(2, 0) == doctest::Approx(-f2));
}

TEST_CASE("boundary faces carry no flux") {
  std::mt19937_64 rng(2);
  const Grid g(5, 4);
  const ScalarField v = test::random_field(g, rng, 0.1, 1.0);
  const FaceFluxSet w = taxis_velocity(v, kTaxis);
  for (int j = 0; j < g.ny(); ++j) {
    CHECK(w.flux_x[static_cast<std::size_t>(j) * (g.nx() + 1)] == 0.0);
    CHECK(w.flux_x[static_cast<std::size_t>(j) * (g.nx() + 1) + g.nx()] == 0.0);
  }
  for (int i = 0; i < g.nx(); ++i) {
    CHECK(w.flux_y[static_cast<std::size_t>(i)] == 0.0);
    CHECK(w.flux_y[static_cast<std::size_t>(g.ny()) * g.nx() + i] == 0.0);
  }
}

TEST_CASE("discrete conservation of both spatial operators") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = test::random_grid(rng);
    const ScalarField u = test::random_field(g, rng, 0.0, 5.0);
    const ScalarField v = test::random_field(g, rng, 0.01, 3.0);
    CHECK(std::abs(integrate(laplacian(u))) <= 1e-12 * l1(u));
    ModelParameters p = kTaxis;
    p.k = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
    p.chi = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    CHECK(std::abs(integrate(chemotactic_divergence(u, v, p))) <= 1e-12 * p.chi * l1(u));
  }
}

TEST_CASE("upwind outflux never exceeds the donor bound") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Grid g = test::random_grid(rng);
    const ScalarField u = test::random_field(g, rng, 0.0, 5.0);
    const ScalarField v = test::random_field(g, rng, 0.01, 3.0);
    const FaceFluxSet w = taxis_velocity(v, kTaxis);
    const FaceFluxSet f = upwind_fluxes(w, u);
    const ScalarField rate = outflow_rate(w, g);
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        const std::size_t fx = static_cast<std::size_t>(j) * (g.nx() + 1) + i;
        const std::size_t fy = static_cast<std::size_t>(j) * g.nx() + i;
        const double out = std::max(f.flux_x[fx + 1], 0.0) / g.hx() + std::max(-f.flux_x[fx], 0.0) / g.hx() +
                           std::max(f.flux_y[fy + g.nx()], 0.0) / g.hy() + std::max(-f.flux_y[fy], 0.0) / g.hy();
        CHECK(out <= u.at(i, j) * rate.at(i, j) * (1.0 + 1e-14));
      }
    }
  }
}

TEST_CASE("collapsed signal raises SingularSignal") {
  const Grid g(4, 4);
  ScalarField v(g, 1.0);
  const ScalarField u(g, 1.0);
  v.at(1, 1) = 0.0;
  CHECK_THROWS_AS(chemotactic_divergence(u, v, kTaxis), SingularSignal);
  v.at(1, 1) = 1e-9;
  CHECK_NOTHROW(chemotactic_divergence(u, v, kTaxis, 1e-12));
  CHECK_THROWS_AS(chemotactic_divergence(u, v, kTaxis, 1e-8), SingularSignal);
  v.at(1, 1) = std::nan("");
  CHECK_THROWS_AS(chemotactic_divergence(u, v, kTaxis), SingularSignal);
}

TEST_CASE("gradient_squared: constants and linear fields") {
  const ScalarField flat = gradient_squared(ScalarField(Grid(5, 5), 2.0));
  for (double x : flat.values()) CHECK(x == 0.0);
  const Grid g(12, 6);
  const ScalarField f = ScalarField::sample(g, [](double x, double) { return x; });
  const ScalarField gs = gradient_squared(f);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) CHECK(gs.at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gradient_squared converges at second order on a cosine") {
  auto max_error = [](int n) {
    const Grid g(n, 3);
    const ScalarField f = ScalarField::sample(g, [](double x, double) { return std::cos(pi * x); });
    const ScalarField gs = gradient_squared(f);
    double worst = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
      const double s = std::sin(pi * g.x(i));
      worst = std::max(worst, std::abs(gs.at(i, 1) - pi * pi * s * s));
    }
    return worst;
  };
  const double e1 = max_error(32);
  const double e2 = max_error(64);
  const double e3 = max_error(128);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.1));
}
