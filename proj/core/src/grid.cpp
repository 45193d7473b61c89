#include "selfsim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace selfsim {

Grid::Grid(int dim, std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi,
           std::array<int, kMaxDim> cells, Boundary bc)
    : d_(dim), lo_(lo), hi_(hi), n_(cells), bc_(bc) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("grid dimension must be 1..3");
  for (int a = dim; a < kMaxDim; ++a) {
    lo_[a] = 0.0;
    hi_[a] = 1.0;
    n_[a] = 1;
  }
  for (int a = 0; a < dim; ++a) {
    if (!(hi_[a] > lo_[a])) throw std::invalid_argument("grid needs hi > lo on every axis");
    if (n_[a] < 4) throw std::invalid_argument("grid needs at least 4 cells per axis");
  }
  for (int a = 0; a < kMaxDim; ++a) dx_[a] = (hi_[a] - lo_[a]) / n_[a];
}

Grid Grid::line(double lo, double hi, int n) {
  return Grid(1, {lo, 0, 0}, {hi, 0, 0}, {n, 1, 1});
}

Grid Grid::box2(std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> n) {
  return Grid(2, {lo[0], lo[1], 0}, {hi[0], hi[1], 0}, {n[0], n[1], 1});
}

std::size_t Grid::size() const {
  return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < d_; ++a) v *= dx_[a];
  return v;
}

bool Grid::operator==(const Grid& o) const {
  return d_ == o.d_ && lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_ && bc_ == o.bc_;
}

Field::Field(const Grid& g) : grid_(g), values_(g.size(), 0.0) {}

namespace detail {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t h = x.size() / 2;
  return pairwise_sum(x.subspan(0, h)) + pairwise_sum(x.subspan(h));
}

}  // namespace detail

double inner_product(const Field& u, const Field& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  std::vector<double> prod(u.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u[i] * v[i];
  return detail::pairwise_sum(prod) * u.grid().cell_volume();
}

double l2_norm(const Field& u) {
  return std::sqrt(inner_product(u, u));
}

double mass(const Field& v) {
  return detail::pairwise_sum(v.values()) * v.grid().cell_volume();
}

namespace {

double interp1(const Field& v, double x) {
  const Grid& g = v.grid();
  const double dx = g.dx(0);
  const int n = g.cells(0);
  // real-valued center index, then a 4-point stencil clamped into the box
  const double t = (x - g.lo(0)) / dx - 0.5;
  int k0 = static_cast<int>(std::floor(t)) - 1;
  if (k0 < 0) k0 = 0;
  if (k0 > n - 4) k0 = n - 4;
  double out = 0.0;
  for (int m = 0; m < 4; ++m) {
    double w = 1.0;
    for (int l = 0; l < 4; ++l) {
      if (l == m) continue;
      w *= (t - (k0 + l)) / static_cast<double>(m - l);
    }
    out += w * v.at(k0 + m);
  }
  return out;
}

double interp2(const Field& v, double x, double y) {
  const Grid& g = v.grid();
  const double s = (x - g.lo(0)) / g.dx(0) - 0.5;
  const double t = (y - g.lo(1)) / g.dx(1) - 0.5;
  int i = static_cast<int>(std::floor(s));
  int j = static_cast<int>(std::floor(t));
  if (i < 0) i = 0;
  if (i > g.cells(0) - 2) i = g.cells(0) - 2;
  if (j < 0) j = 0;
  if (j > g.cells(1) - 2) j = g.cells(1) - 2;
  const double fx = s - i, fy = t - j;
  return (1 - fx) * (1 - fy) * v.at(i, j) + fx * (1 - fy) * v.at(i + 1, j) +
         (1 - fx) * fy * v.at(i, j + 1) + fx * fy * v.at(i + 1, j + 1);
}

}  // namespace

double interpolate(const Field& v, std::array<double, kMaxDim> x) {
  const Grid& g = v.grid();
  for (int a = 0; a < g.dim(); ++a)
    if (x[a] < g.lo(a) || x[a] > g.hi(a)) return 0.0;
  if (g.dim() == 1) return interp1(v, x[0]);
  if (g.dim() == 2) return interp2(v, x[0], x[1]);
  throw std::invalid_argument("interpolate: 3d sampling not supported");
}

}  // namespace selfsim
