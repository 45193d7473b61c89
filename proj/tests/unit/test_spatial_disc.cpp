#include <doctest.h>

#include <cmath>
#include <limits>

#include "selfsim/grid.hpp"
#include "selfsim/lie_group.hpp"
#include "selfsim/spatial_disc.hpp"

using namespace selfsim;

namespace {

Field gaussian_1d(const Grid& g, double center, double width, double amp = 1.0) {
  return sample_function(g, [=](const std::array<double, 3>& x) {
    const double r = (x[0] - center) / width;
    return amp * std::exp(-r * r);
  });
}

double rel_l2_diff(const Field& a, const Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    num += d * d;
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("explicit_rhs obeys the discrete mass law exactly, 1d") {
  const Grid g = Grid::line(-8.0, 8.0, 1600);
  const double p = 2.5;
  CoMovingRHS rhs(g, p, 0.4);
  const Field v = gaussian_1d(g, 0.3, 1.1);
  AlgebraElement mu{1};
  mu.mu1 = 0.37;
  mu.mu3[0] = -0.52;
  const Field r = rhs.explicit_rhs(v, mu);
  const double expect = (1.0 + 1.0 - 1.0 * p) * mu.mu1 * mass(v);
  CHECK(std::abs(mass(r) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("explicit_rhs obeys the discrete mass law exactly, 2d") {
  const Grid q = Grid::box2({-5, -5}, {5, 5}, {100, 100});
  const double p = 1.7;
  CoMovingRHS rhs(q, p, 0.4);
  const Field v = sample_function(q, [](const std::array<double, 3>& x) {
    const double dx = x[0] - 0.4, dy = x[1] + 0.2;
    return std::exp(-(dx * dx + dy * dy)) * (1.0 + 0.2 * x[1]);
  });
  AlgebraElement mu{2};
  mu.mu1 = 0.29;
  mu.mu3 = {0.11, -0.23, 0.0};
  const Field r = rhs.explicit_rhs(v, mu);
  const double expect = (1.0 + 2.0 - 2.0 * p) * mu.mu1 * mass(v);
  CHECK(std::abs(mass(r) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("explicit_rhs converges to the analytic transport terms") {
  // p = 2 so the zeroth-order source vanishes and the flux is -v^2/2 + (mu1 xi + mu3) v
  const double p = 2.0, nu = 0.4;
  AlgebraElement mu{1};
  mu.mu1 = 0.2;
  mu.mu3[0] = 0.1;
  auto error_at = [&](int n) {
    const Grid g = Grid::line(-8.0, 8.0, n);
    CoMovingRHS rhs(g, p, nu);
    const Field v = gaussian_1d(g, 0.0, 1.0);
    const Field r = rhs.explicit_rhs(v, mu);
    const Field exact = sample_function(g, [&](const std::array<double, 3>& x) {
      const double vv = std::exp(-x[0] * x[0]);
      const double dv = -2.0 * x[0] * vv;
      // d/dxi [ -v^2/2 + (mu1 xi + mu3) v ]
      return -vv * dv + mu.mu1 * vv + (mu.mu1 * x[0] + mu.mu3[0]) * dv;
    });
    return rel_l2_diff(r, exact);
  };
  const double e1 = error_at(400);
  const double e2 = error_at(800);
  CHECK(e1 < 0.05);
  CHECK(e2 < e1 / 1.5);  // between first and second order with the limiter
}

TEST_CASE("mu = 0 explicit part plus diffusion equals the direct right-hand side") {
  const Grid g = Grid::line(-8.0, 8.0, 400);
  CoMovingRHS rhs(g, 2.5, 0.3);
  const Field u = gaussian_1d(g, -0.4, 0.9);
  const Field a = rhs.explicit_rhs(u, AlgebraElement{1});
  const Field b = rhs.diffusion_apply(u);
  const Field f = rhs.original_rhs(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(f[i] == doctest::Approx(a[i] + b[i]).epsilon(1e-14));
}

TEST_CASE("diffusion_apply reproduces nu Lap on Neumann-compatible data") {
  const Grid g = Grid::line(0.0, 3.14159265358979323846, 200);
  const double nu = 0.7;
  CoMovingRHS rhs(g, 2.0, nu);
  const Field v = sample_function(g, [](const std::array<double, 3>& x) { return std::cos(x[0]); });
  const Field lap = rhs.diffusion_apply(v);
  const Field exact = sample_function(g, [&](const std::array<double, 3>& x) { return -nu * std::cos(x[0]); });
  CHECK(rel_l2_diff(lap, exact) < 1e-3);

  Field ones(g);
  for (std::size_t i = 0; i < ones.size(); ++i) ones[i] = 4.2;
  const Field z = rhs.diffusion_apply(ones);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == 0.0);
}

TEST_CASE("diffusion_solve satisfies its linear system, 1d") {
  const Grid g = Grid::line(-8.0, 8.0, 1600);
  CoMovingRHS rhs(g, 2.0, 0.4);
  const Field b = gaussian_1d(g, 0.2, 1.3);
  const double c = 0.05;
  const Field w = rhs.diffusion_solve(b, c);
  const Field lw = rhs.diffusion_apply(w);
  double res = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    res = std::max(res, std::abs(w[i] - c * lw[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  CHECK(res <= 1e-12 * scale);                       // Thomas is direct
  CHECK(std::abs(mass(w) - mass(b)) <= 1e-12);       // Neumann solve preserves the cell sum
  const Field same = rhs.diffusion_solve(b, 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(same[i] == b[i]);
}

TEST_CASE("diffusion_solve satisfies its linear system, 2d") {
  const Grid q = Grid::box2({-5, -5}, {5, 5}, {100, 100});
  CoMovingRHS rhs(q, 1.5, 0.4);
  const Field b = sample_function(q, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1])) + 0.1 * std::cos(0.3 * x[0]);
  });
  const double c = 0.08;
  const Field w = rhs.diffusion_solve(b, c);
  CHECK(rhs.last_solve_iterations() > 0);
  const Field lw = rhs.diffusion_apply(w);
  double res = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    res = std::max(res, std::abs(w[i] - c * lw[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  CHECK(res <= 1e-8 * scale);
  CHECK(std::abs(mass(w) - mass(b)) <= 1e-12 * std::max(1.0, std::abs(mass(b))));
}

TEST_CASE("constants are fixed points of the implicit solve") {
  const Grid g = Grid::line(-2.0, 2.0, 64);
  CoMovingRHS rhs(g, 2.0, 1.0);
  Field b(g);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = -1.7;
  const Field w = rhs.diffusion_solve(b, 0.3);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == doctest::Approx(-1.7).epsilon(1e-13));
}

TEST_CASE("wave_speed_bound dominates the interface-state maximum") {
  const Grid g = Grid::line(-8.0, 8.0, 800);
  const double p = 2.5;
  CoMovingRHS rhs(g, p, 0.4);
  const Field v = gaussian_1d(g, 0.0, 1.0, 1.8);
  AlgebraElement mu{1};
  mu.mu1 = 0.4;
  mu.mu3[0] = -0.3;
  const double bound = rhs.wave_speed_bound(v, mu);
  (void)rhs.explicit_rhs(v, mu);
  CHECK(rhs.cached_max_speed() > 0.0);
  CHECK(bound >= rhs.cached_max_speed());
  // the bound contains the |v|^(p-1) cell maximum plus the frozen drift at the far edge
  CHECK(bound >= std::pow(1.8, p - 1.0));
}

TEST_CASE("non-finite input is rejected") {
  const Grid g = Grid::line(-1.0, 1.0, 32);
  CoMovingRHS rhs(g, 2.0, 0.4);
  Field v(g);
  v[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(rhs.explicit_rhs(v, AlgebraElement{1}));
}

TEST_CASE("constructor validates its parameters") {
  const Grid g = Grid::line(-1.0, 1.0, 32);
  CHECK_THROWS(CoMovingRHS(g, 0.9, 0.4));      // p <= 1
  CHECK_THROWS(CoMovingRHS(g, 2.0, 0.0));      // nu <= 0
  CHECK_THROWS(CoMovingRHS(g, 2.0, 0.4, 3.0)); // theta out of [1, 2]
  const Grid box(3, {0, 0, 0}, {1, 1, 1}, {8, 8, 8});
  CHECK_THROWS(CoMovingRHS(box, 2.0, 0.4));    // no 3d time stepping
}
