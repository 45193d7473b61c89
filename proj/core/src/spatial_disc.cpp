#include "selfsim/spatial_disc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace selfsim {

namespace {

double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min(a, std::min(b, c));
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max(a, std::max(b, c));
  return 0.0;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct AxisCoeff {
  double lin;       // mu1 (p-1) factor on xi
  double shift;     // mu3 component
  bool nonlinear;   // axis 1 carries the |v|^p flux
};

}  // namespace

CoMovingRHS::CoMovingRHS(const Grid& grid, double p, double nu, double theta)
    : grid_(grid), p_(p), nu_(nu), theta_(theta) {
  if (grid.dim() > 2) throw std::invalid_argument("CoMovingRHS: time stepping is 1d/2d only");
  if (!(p > 1.0)) throw std::invalid_argument("CoMovingRHS: p must exceed 1");
  if (!(nu > 0.0)) throw std::invalid_argument("CoMovingRHS: nu must be positive");
  if (!(theta >= 1.0 && theta <= 2.0)) throw std::invalid_argument("CoMovingRHS: theta must lie in [1,2]");
}

Field CoMovingRHS::explicit_rhs(const Field& v, const AlgebraElement& mu) const {
  if (!(v.grid() == grid_)) throw std::invalid_argument("explicit_rhs: grid mismatch");
  if (mu.d != grid_.dim()) throw std::invalid_argument("explicit_rhs: algebra dimension mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) throw std::runtime_error("explicit_rhs: non-finite input field");

  const int d = grid_.dim();
  const double src = mu.mu1 * (1.0 + d - d * p_);
  Field rhs(grid_);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = src * v[i];

  double max_speed = 0.0;
  const int nx = grid_.cells(0), ny = grid_.cells(1);

  for (int axis = 0; axis < d; ++axis) {
    const AxisCoeff co{mu.mu1 * (p_ - 1.0), mu.mu3[axis], axis == 0};
    const double dx = grid_.dx(axis);
    const int n = grid_.cells(axis);
    const int nlines = axis == 0 ? ny : nx;

    std::vector<double> line(n), slope(n), flux(n + 1);
    for (int l = 0; l < nlines; ++l) {
      auto cell = [&](int c) { return axis == 0 ? v.at(c, l) : v.at(l, c); };
      for (int c = 0; c < n; ++c) line[c] = cell(c);

      for (int c = 0; c < n; ++c) {
        const double vm = c > 0 ? line[c - 1] : line[c];
        const double vp = c + 1 < n ? line[c + 1] : line[c];
        slope[c] = minmod3(theta_ * (line[c] - vm) / dx, (vp - vm) / (2.0 * dx),
                           theta_ * (vp - line[c]) / dx);
      }

      flux[0] = 0.0;
      flux[n] = 0.0;
      for (int face = 1; face < n; ++face) {
        const double xi = grid_.lo(axis) + face * dx;
        const double wl = line[face - 1] + 0.5 * dx * slope[face - 1];
        const double wr = line[face] - 0.5 * dx * slope[face];
        const double lin = co.lin * xi + co.shift;
        double fl = lin * wl, fr = lin * wr;
        double al = lin, ar = lin;
        if (co.nonlinear) {
          fl -= std::pow(std::abs(wl), p_) / p_;
          fr -= std::pow(std::abs(wr), p_) / p_;
          al -= std::pow(std::abs(wl), p_ - 1.0) * sgn(wl);
          ar -= std::pow(std::abs(wr), p_ - 1.0) * sgn(wr);
        }
        const double a = std::max(std::abs(al), std::abs(ar));
        max_speed = std::max(max_speed, a);
        // rhs carries +d(flux)/dxi, so the upwinding term enters with +a/2
        flux[face] = 0.5 * (fl + fr) + 0.5 * a * (wr - wl);
      }

      for (int c = 0; c < n; ++c) {
        const double div = (flux[c + 1] - flux[c]) / dx;
        if (axis == 0)
          rhs.at(c, l) += div;
        else
          rhs.at(l, c) += div;
      }
    }
  }

  max_speed_ = max_speed;
  return rhs;
}

double CoMovingRHS::wave_speed_bound(const Field& v, const AlgebraElement& mu) const {
  double vmax = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) vmax = std::max(vmax, std::abs(v[i]));
  const double nonlin = std::pow(vmax, p_ - 1.0);
  double bound = 0.0;
  for (int axis = 0; axis < grid_.dim(); ++axis) {
    const double c = mu.mu1 * (p_ - 1.0);
    const double edge = std::max(std::abs(c * grid_.lo(axis) + mu.mu3[axis]),
                                 std::abs(c * grid_.hi(axis) + mu.mu3[axis]));
    bound = std::max(bound, edge + (axis == 0 ? nonlin : 0.0));
  }
  return bound;
}

Field CoMovingRHS::diffusion_apply(const Field& v) const {
  if (!(v.grid() == grid_)) throw std::invalid_argument("diffusion_apply: grid mismatch");
  Field out(grid_);
  const int nx = grid_.cells(0), ny = grid_.cells(1);
  const double cx = nu_ / (grid_.dx(0) * grid_.dx(0));
  const double cy = grid_.dim() > 1 ? nu_ / (grid_.dx(1) * grid_.dx(1)) : 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double c = v.at(i, j);
      double acc = 0.0;
      acc += cx * ((i > 0 ? v.at(i - 1, j) : c) - 2.0 * c + (i + 1 < nx ? v.at(i + 1, j) : c));
      if (grid_.dim() > 1)
        acc += cy * ((j > 0 ? v.at(i, j - 1) : c) - 2.0 * c + (j + 1 < ny ? v.at(i, j + 1) : c));
      out.at(i, j) = acc;
    }
  return out;
}

Field CoMovingRHS::diffusion_solve(const Field& rhs, double c) const {
  if (!(rhs.grid() == grid_)) throw std::invalid_argument("diffusion_solve: grid mismatch");
  if (c == 0.0) {
    solve_iters_ = 0;
    return rhs;
  }
  if (c < 0.0) throw std::invalid_argument("diffusion_solve: negative coefficient");

  Field w(grid_);
  if (grid_.dim() == 1) {
    const int n = grid_.cells(0);
    const double r = c * nu_ / (grid_.dx(0) * grid_.dx(0));
    std::vector<double> diag(n), rhsv(n);
    for (int i = 0; i < n; ++i) {
      const int neighbors = (i > 0) + (i + 1 < n);
      diag[i] = 1.0 + neighbors * r;
      rhsv[i] = rhs[i];
    }
    // Thomas sweep; the matrix is SPD and diagonally dominant
    std::vector<double> cp(n);
    cp[0] = -r / diag[0];
    rhsv[0] /= diag[0];
    for (int i = 1; i < n; ++i) {
      const double m = diag[i] + r * cp[i - 1];
      cp[i] = -r / m;
      rhsv[i] = (rhsv[i] + r * rhsv[i - 1]) / m;
    }
    w[n - 1] = rhsv[n - 1];
    for (int i = n - 2; i >= 0; --i) w[i] = rhsv[i] - cp[i] * w[i + 1];
    solve_iters_ = 0;
  } else {
    const int nx = grid_.cells(0), ny = grid_.cells(1);
    const double rx = c * nu_ / (grid_.dx(0) * grid_.dx(0));
    const double ry = c * nu_ / (grid_.dx(1) * grid_.dx(1));
    const std::size_t N = rhs.size();
    auto apply_op = [&](const Field& x, Field& out) {
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const double cc = x.at(i, j);
          double acc = cc;
          acc -= rx * ((i > 0 ? x.at(i - 1, j) : cc) - 2.0 * cc + (i + 1 < nx ? x.at(i + 1, j) : cc));
          acc -= ry * ((j > 0 ? x.at(i, j - 1) : cc) - 2.0 * cc + (j + 1 < ny ? x.at(i, j + 1) : cc));
          out.at(i, j) = acc;
        }
    };

    const double rhs_norm = l2_norm(rhs);
    if (rhs_norm == 0.0) {
      solve_iters_ = 0;
      return w;
    }
    w = rhs;  // good guess: the operator is a small perturbation of I
    Field r_res(grid_), z(grid_);
    apply_op(w, r_res);
    for (std::size_t i = 0; i < N; ++i) r_res[i] = rhs[i] - r_res[i];
    Field pdir = r_res;
    double rr = inner_product(r_res, r_res);
    const double tol = 1e-10 * rhs_norm;
    const long maxit = 10 * static_cast<long>(N);
    long it = 0;
    while (std::sqrt(rr) > tol && it < maxit) {
      apply_op(pdir, z);
      const double alpha = rr / inner_product(pdir, z);
      for (std::size_t i = 0; i < N; ++i) w[i] += alpha * pdir[i];
      for (std::size_t i = 0; i < N; ++i) r_res[i] -= alpha * z[i];
      const double rr_new = inner_product(r_res, r_res);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < N; ++i) pdir[i] = r_res[i] + beta * pdir[i];
      ++it;
    }
    if (std::sqrt(rr) > tol)
      throw std::runtime_error("diffusion_solve: conjugate gradients failed to converge");
    solve_iters_ = static_cast<int>(it);
  }

  // The Neumann operator preserves cell sums, sum(w) = sum(rhs); restore the
  // identity lost to solver truncation so long runs conserve mass exactly.
  const double shift =
      (detail::pairwise_sum(rhs.values()) - detail::pairwise_sum(w.values())) / w.size();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += shift;
  return w;
}

Field CoMovingRHS::original_rhs(const Field& u) const {
  AlgebraElement zero;
  zero.d = grid_.dim();
  Field out = explicit_rhs(u, zero);
  const Field diff = diffusion_apply(u);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += diff[i];
  return out;
}

}  // namespace selfsim
