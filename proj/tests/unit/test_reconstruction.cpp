#include <doctest.h>

#include <cmath>
#include <vector>

#include "selfsim/grid.hpp"
#include "selfsim/group_action.hpp"
#include "selfsim/lie_group.hpp"
#include "selfsim/reconstruction.hpp"
#include "selfsim/spatial_disc.hpp"

using namespace selfsim;

TEST_CASE("time maps: hand values, round trips and the linear limit") {
  // p = 2, mu1 = 1: sigma(t) = log(1 + 2t)/2, rho(tau) = (e^(2 tau) - 1)/2
  CHECK(sigma_closed_form(1.0, 2.0, 5.0) == doctest::Approx(0.5 * std::log(11.0)).epsilon(1e-14));
  CHECK(rho_closed_form(1.0, 2.0, 1.0) == doctest::Approx(0.5 * std::expm1(2.0)).epsilon(1e-14));

  for (const double mu1 : {0.7, -0.2, 1.3}) {
    for (const double t : {0.1, 1.0, 4.0}) {
      if ((2.0 * 2.5 - 2.0) * mu1 * t <= -1.0) continue;
      const double tau = sigma_closed_form(mu1, 2.5, t);
      CHECK(rho_closed_form(mu1, 2.5, tau) == doctest::Approx(t).epsilon(1e-12));
    }
  }

  // |(2p-2) mu1| below the continuation threshold: identity map
  CHECK(sigma_closed_form(1e-13, 2.0, 3.0) == 3.0);
  CHECK(rho_closed_form(0.0, 2.0, 3.0) == 3.0);

  // finite-time horizon of decaying trajectories
  CHECK_THROWS(sigma_closed_form(-1.0, 2.0, 0.6));
}

TEST_CASE("reconstruct maps the grid affinely and rescales values exactly") {
  const Grid g = Grid::line(-8.0, 8.0, 400);
  const double p = 2.5;
  const Field v = sample_function(g, [](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0]);
  });
  GroupElement el = GroupElement::identity(1);
  el.alpha = 2.0;
  el.b[0] = 0.7;
  const Reconstructed rec = reconstruct(v, el, p, 1.25);
  CHECK(rec.t == 1.25);
  const double stretch = std::pow(2.0, p - 1.0);
  CHECK(rec.u.grid().lo(0) == doctest::Approx(stretch * -8.0 + 0.7).epsilon(1e-15));
  CHECK(rec.u.grid().hi(0) == doctest::Approx(stretch * 8.0 + 0.7).epsilon(1e-15));
  CHECK(rec.u.grid().cells(0) == 400);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(rec.u[i] == 0.5 * v[i]);
}

TEST_CASE("reconstruct_on the mapped grid agrees with the exact reconstruction") {
  const Grid g = Grid::line(-8.0, 8.0, 400);
  const double p = 2.0;
  const Field v = sample_function(g, [](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0]) * (1.0 + 0.2 * std::sin(x[0]));
  });
  GroupElement el = GroupElement::identity(1);
  el.alpha = 1.8;
  el.b[0] = -0.4;
  const Reconstructed exact = reconstruct(v, el, p, 2.0);
  const Reconstructed interp = reconstruct_on(v, el, p, 2.0, exact.u.grid());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < exact.u.size(); ++i) {
    const double d = interp.u[i] - exact.u[i];
    num += d * d;
    den += exact.u[i] * exact.u[i];
  }
  CHECK(std::sqrt(num / den) < 1e-10);  // cell centers pull back onto cell centers
}

TEST_CASE("reconstruct_on with the identity is the identity") {
  const Grid g = Grid::line(-3.0, 3.0, 240);
  const Field v = sample_function(g, [](const std::array<double, 3>& x) {
    return std::tanh(x[0]) + 0.1 * x[0];
  });
  const Reconstructed rec = reconstruct_on(v, GroupElement::identity(1), 2.0, 0.0, g);
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(rec.u[i] == doctest::Approx(v[i]).epsilon(1e-13));
}

TEST_CASE("2d reconstruction rescales both axes") {
  const Grid q = Grid::box2({-5, -5}, {5, 5}, {64, 64});
  const double p = 1.5;
  const Field v = sample_function(q, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });
  GroupElement el = GroupElement::identity(2);
  el.alpha = 4.0;
  el.b = {1.0, -2.0, 0.0};
  const Reconstructed rec = reconstruct(v, el, p, 0.5);
  const double stretch = std::pow(4.0, p - 1.0);  // = 2
  CHECK(rec.u.grid().lo(0) == doctest::Approx(stretch * -5.0 + 1.0));
  CHECK(rec.u.grid().lo(1) == doctest::Approx(stretch * -5.0 - 2.0));
  CHECK(rec.u.at(32, 32) == doctest::Approx(0.25 * v.at(32, 32)).epsilon(1e-15));
}

TEST_CASE("similarity residual is reduced by the projected rates") {
  const Grid g = Grid::line(-8.0, 8.0, 800);
  const double p = 2.0;
  CoMovingRHS rhs(g, p, 0.4);
  const Field v = sample_function(g, [](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0]);
  });
  AlgebraElement zero{1};
  const double r0 = similarity_residual(v, zero, rhs);
  CHECK(r0 > 0.0);

  // one Gram solve by hand through the public pieces
  GeneratorSet gens(g, p);
  const Field F = rhs.original_rhs(v);
  const Field l0 = gens.apply(0, v), l1 = gens.apply(1, v);
  const double g00 = inner_product(l0, l0), g01 = inner_product(l0, l1), g11 = inner_product(l1, l1);
  const double b0 = inner_product(l0, F), b1 = inner_product(l1, F);
  const double det = g00 * g11 - g01 * g01;
  AlgebraElement best{1};
  best.mu1 = (b0 * g11 - b1 * g01) / det;
  best.mu3[0] = (g00 * b1 - g01 * b0) / det;
  CHECK(similarity_residual(v, best, rhs) < r0);
}

TEST_CASE("mass law check accepts consistent series and flags corruption") {
  const int rows = 40;
  const int d = 1;
  const double p = 2.5;
  const double expo = 1.0 + d - d * p;  // -0.5
  std::vector<double> tau(rows), mu1(rows), m(rows);
  double integral = 0.0;
  for (int k = 0; k < rows; ++k) {
    tau[k] = 0.1 * k;
    mu1[k] = 0.3 + 0.1 * std::sin(tau[k]);
    if (k > 0) integral += 0.5 * (mu1[k - 1] + mu1[k]) * 0.1;
    m[k] = 0.8 * std::exp(expo * integral);
  }
  CHECK(mass_law_check(tau, mu1, m, d, p) < 1e-12);

  std::vector<double> bad = m;
  bad[20] *= 1.01;
  const double dev = mass_law_check(tau, mu1, bad, d, p);
  CHECK(dev > 0.009);
  CHECK(dev < 0.011);

  std::vector<double> short_tau(tau.begin(), tau.begin() + 10);
  CHECK_THROWS(mass_law_check(short_tau, mu1, m, d, p));
  std::vector<double> zeroed = m;
  zeroed[0] = 0.0;
  CHECK_THROWS(mass_law_check(tau, mu1, zeroed, d, p));
}
