#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "selfsim/small_matrix.hpp"

using namespace selfsim;

TEST_CASE("identity and diagonal systems") {
  SmallMatrix m;
  m.n = 3;
  for (int i = 0; i < 3; ++i) m.at(i, i) = 1.0;
  const SmallSolve s = solve_dense(m, {1.0, 2.0, 3.0, 0.0, 0.0});
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(2.0));
  CHECK(s.x[2] == doctest::Approx(3.0));
  CHECK(s.cond1 == doctest::Approx(1.0));
}

TEST_CASE("random well conditioned systems") {
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      SmallMatrix m;
      m.n = n;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m.at(i, j) = U(rng);
        m.at(i, i) += 3.0;  // diagonally dominant, hence invertible
      }
      std::array<double, 5> x_true{};
      for (int i = 0; i < n; ++i) x_true[i] = U(rng);
      std::array<double, 5> rhs{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rhs[i] += m.at(i, j) * x_true[j];
      const SmallSolve s = solve_dense(m, rhs);
      for (int i = 0; i < n; ++i) CHECK(s.x[i] == doctest::Approx(x_true[i]).epsilon(1e-10));
      CHECK(s.cond1 >= 1.0);
      CHECK(s.cond1 < 1e4);
    }
  }
}

TEST_CASE("singular matrix reports infinite condition") {
  SmallMatrix m;
  m.n = 2;
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 2.0;
  m.at(1, 0) = 2.0;
  m.at(1, 1) = 4.0;
  const SmallSolve s = solve_dense(m, {1.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(std::isinf(s.cond1));
}

TEST_CASE("condition estimate tracks known values") {
  // diag(1, eps): cond_1 = 1/eps exactly
  SmallMatrix m;
  m.n = 2;
  m.at(0, 0) = 1.0;
  m.at(1, 1) = 1e-8;
  const SmallSolve s = solve_dense(m, {1.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(s.cond1 == doctest::Approx(1e8).epsilon(1e-10));
}

TEST_CASE("order bounds are enforced") {
  SmallMatrix m;
  m.n = 6;
  CHECK_THROWS(solve_dense(m, {}));
}
