#include "selfsim/small_matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selfsim {

namespace {

struct Lu {
  int n;
  std::array<double, 25> a;
  std::array<int, 5> piv;
  bool singular = false;
};

Lu factor(const SmallMatrix& m) {
  Lu lu{m.n, m.a, {}, false};
  const int n = lu.n;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu.a[i * n + k]) > std::abs(lu.a[p * n + k])) p = i;
    lu.piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(lu.a[k * n + j], lu.a[p * n + j]);
    const double d = lu.a[k * n + k];
    if (d == 0.0) {
      lu.singular = true;
      return lu;
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = lu.a[i * n + k] / d;
      lu.a[i * n + k] = f;
      for (int j = k + 1; j < n; ++j) lu.a[i * n + j] -= f * lu.a[k * n + j];
    }
  }
  return lu;
}

std::array<double, 5> lu_solve(const Lu& lu, std::array<double, 5> b) {
  const int n = lu.n;
  for (int k = 0; k < n; ++k)
    if (lu.piv[k] != k) std::swap(b[k], b[lu.piv[k]]);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) b[i] -= lu.a[i * n + j] * b[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= lu.a[i * n + j] * b[j];
    b[i] /= lu.a[i * n + i];
  }
  return b;
}

double norm1(const SmallMatrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.n; ++j) {
    double c = 0.0;
    for (int i = 0; i < m.n; ++i) c += std::abs(m.at(i, j));
    best = std::max(best, c);
  }
  return best;
}

}  // namespace

SmallSolve solve_dense(const SmallMatrix& m, const std::array<double, 5>& rhs) {
  if (m.n < 1 || m.n > 5) throw std::invalid_argument("solve_dense: order must be 1..5");
  SmallSolve out;
  const Lu lu = factor(m);
  if (lu.singular) {
    out.cond1 = std::numeric_limits<double>::infinity();
    return out;
  }
  out.x = lu_solve(lu, rhs);

  double inv_norm = 0.0;
  for (int j = 0; j < m.n; ++j) {
    std::array<double, 5> e{};
    e[j] = 1.0;
    const auto col = lu_solve(lu, e);
    double c = 0.0;
    for (int i = 0; i < m.n; ++i) c += std::abs(col[i]);
    inv_norm = std::max(inv_norm, c);
  }
  // kappa_1 >= 1 for any invertible matrix; the rounded product can dip below
  out.cond1 = std::max(1.0, norm1(m) * inv_norm);
  return out;
}

}  // namespace selfsim
