#pragma once

#include <array>

// Dense solver for the tiny (n <= 5) Gram systems of the phase conditions.

namespace selfsim {

struct SmallMatrix {
  int n = 0;
  std::array<double, 25> a{};  // row-major

  double& at(int i, int j) { return a[i * n + j]; }
  double at(int i, int j) const { return a[i * n + j]; }
};

struct SmallSolve {
  std::array<double, 5> x{};
  double cond1 = 0.0;   // 1-norm condition estimate, inf when singular
};

// LU with partial pivoting; cond1 = ||A||_1 ||A^-1||_1 with the inverse
// assembled column by column (cheap at this size).  Singular A yields
// x = 0 and cond1 = inf.
SmallSolve solve_dense(const SmallMatrix& m, const std::array<double, 5>& rhs);

}  // namespace selfsim
