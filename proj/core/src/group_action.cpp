#include "selfsim/group_action.hpp"

#include <cmath>
#include <stdexcept>

namespace selfsim {

namespace {

bool is_identity(const GroupElement& g) {
  return g.alpha == 1.0 && g.phi == 0.0 && g.b[0] == 0.0 && g.b[1] == 0.0 && g.b[2] == 0.0;
}

// Conservative central difference along one axis: interior face values are
// arithmetic means of the adjacent cells, boundary faces are zero, so cell
// sums telescope away exactly.
Field conservative_diff(const Field& w, int axis) {
  const Grid& g = w.grid();
  Field out(g);
  const double inv_dx = 1.0 / g.dx(axis);
  const int nx = g.cells(0), ny = g.cells(1), nz = g.cells(2);
  const int n[3] = {nx, ny, nz};
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        int idx[3] = {i, j, k};
        const int c = idx[axis];
        double up = 0.0, down = 0.0;
        if (c + 1 < n[axis]) {
          idx[axis] = c + 1;
          up = 0.5 * (w.at(i, j, k) + w.at(idx[0], idx[1], idx[2]));
        }
        if (c > 0) {
          idx[axis] = c - 1;
          down = 0.5 * (w.at(idx[0], idx[1], idx[2]) + w.at(i, j, k));
        }
        out.at(i, j, k) = (up - down) * inv_dx;
      }
  return out;
}

Field coordinate_times(const Field& v, int axis) {
  const Grid& g = v.grid();
  Field out(g);
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j)
      for (int i = 0; i < g.cells(0); ++i) {
        const int idx[3] = {i, j, k};
        out.at(i, j, k) = g.center(axis, idx[axis]) * v.at(i, j, k);
      }
  return out;
}

void axpy(Field& y, double a, const Field& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

Field apply_action(const GroupElement& g, const Field& v, double p) {
  const Grid& gr = v.grid();
  if (g.d != gr.dim()) throw std::invalid_argument("apply_action: dimension mismatch");
  if (gr.dim() > 2) throw std::invalid_argument("apply_action: 3d fields not resampled");
  if (is_identity(g)) return v;
  const double inv_alpha = 1.0 / g.alpha;
  const double scale = std::pow(g.alpha, 1.0 - p);
  Field out(gr);
  for (int j = 0; j < gr.cells(1); ++j)
    for (int i = 0; i < gr.cells(0); ++i) {
      std::array<double, kMaxDim> x{scale * (gr.center(0, i) - g.b[0]),
                                    gr.dim() > 1 ? scale * (gr.center(1, j) - g.b[1]) : 0.0,
                                    0.0};
      out.at(i, j) = inv_alpha * interpolate(v, x);
    }
  return out;
}

double m_homomorphism(const GroupElement& g, double p) {
  return std::pow(g.alpha, 2.0 - 2.0 * p);
}

GeneratorSet::GeneratorSet(const Grid& grid, double p) : grid_(grid), p_(p) {
  if (!(p > 1.0)) throw std::invalid_argument("GeneratorSet: p must exceed 1");
}

int GeneratorSet::count() const { return group_dim(grid_.dim()); }

Field GeneratorSet::apply(int j, const Field& v) const {
  if (!(v.grid() == grid_)) throw std::invalid_argument("GeneratorSet: grid mismatch");
  if (j < 0 || j >= count()) throw std::invalid_argument("GeneratorSet: basis index out of range");
  const int d = grid_.dim();

  if (j == 0) {  // scaling
    Field out(v.grid());
    const double c0 = d * (p_ - 1.0) - 1.0;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c0 * v[i];
    for (int a = 0; a < d; ++a) axpy(out, 1.0 - p_, conservative_diff(coordinate_times(v, a), a));
    return out;
  }
  if (d == 3 && j == 1) {  // rotation about x1
    Field out = conservative_diff(coordinate_times(v, 2), 1);
    axpy(out, -1.0, conservative_diff(coordinate_times(v, 1), 2));
    return out;
  }
  const int axis = d == 3 ? j - 2 : j - 1;
  Field out = conservative_diff(v, axis);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

Field GeneratorSet::combine(const std::array<double, 5>& coeffs, const Field& v) const {
  Field out(v.grid());
  for (int j = 0; j < count(); ++j) {
    if (coeffs[j] == 0.0) continue;
    axpy(out, coeffs[j], apply(j, v));
  }
  return out;
}

CanonicalReduction canonical_reduce(int d, const std::array<double, 3>& a, double nu) {
  if (d < 1 || d > 3) throw std::invalid_argument("canonical_reduce: dimension must be 1..3");
  double norm2 = 0.0;
  for (int i = 0; i < d; ++i) norm2 += a[i] * a[i];
  const double norm = std::sqrt(norm2);
  if (norm == 0.0) throw std::invalid_argument("canonical_reduce: drift direction must be nonzero");

  CanonicalReduction out;
  out.d = d;
  out.a_norm = norm;
  out.nu_eff = nu / norm;
  std::array<double, 3> q{a[0] - norm, a[1], a[2]};
  double qq = 0.0;
  for (int i = 0; i < d; ++i) qq += q[i] * q[i];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.Q[i * d + j] = (i == j) ? 1.0 : 0.0;
  if (std::sqrt(qq) > 1e-14 * norm) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.Q[i * d + j] -= 2.0 * q[i] * q[j] / qq;
  }
  return out;
}

}  // namespace selfsim
