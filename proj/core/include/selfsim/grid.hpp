#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

// Uniform cell-centered tensor grids and scalar fields on them.
//
// Cells are closed boxes of size dx per axis; values live at cell centers
// lo + (i + 1/2) dx.  Storage is flat with axis 0 fastest, so the 2d index
// is i + n0 * j.  Only homogeneous no-flux boundaries are supported, which
// every consumer in this code base assumes.
//
// Time stepping and interpolation support d = 1 and d = 2; d = 3 grids are
// allowed for storage, quadrature and the discrete symmetry generators.

namespace selfsim {

inline constexpr int kMaxDim = 3;

enum class Boundary { NoFlux };

class Grid {
 public:
  Grid() = default;
  Grid(int dim, std::array<double, kMaxDim> lo, std::array<double, kMaxDim> hi,
       std::array<int, kMaxDim> cells, Boundary bc = Boundary::NoFlux);

  static Grid line(double lo, double hi, int n);
  static Grid box2(std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> n);

  int dim() const { return d_; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double dx(int axis) const { return dx_[axis]; }
  int cells(int axis) const { return n_[axis]; }
  Boundary boundary() const { return bc_; }

  std::size_t size() const;
  double cell_volume() const;
  double center(int axis, int i) const { return lo_[axis] + (i + 0.5) * dx_[axis]; }
  std::size_t index(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_[0]) * (j + static_cast<std::size_t>(n_[1]) * k);
  }

  bool operator==(const Grid& o) const;

 private:
  int d_ = 0;
  std::array<double, kMaxDim> lo_{}, hi_{}, dx_{};
  std::array<int, kMaxDim> n_{1, 1, 1};
  Boundary bc_ = Boundary::NoFlux;
};

class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(int i, int j = 0, int k = 0) { return values_[grid_.index(i, j, k)]; }
  double at(int i, int j = 0, int k = 0) const { return values_[grid_.index(i, j, k)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

namespace detail {
// Fixed-shape pairwise reduction; keeps quadrature deterministic and the
// rounding error logarithmic in the cell count.
double pairwise_sum(std::span<const double> x);
}  // namespace detail

// Midpoint-rule L^2 pairing sum(u v) * cell_volume.  Grids must match exactly.
double inner_product(const Field& u, const Field& v);
double l2_norm(const Field& u);

// Midpoint-rule integral of v.
double mass(const Field& v);

// Pointwise evaluation of f at cell centers; f receives {x, y, z}.
template <class F>
Field sample_function(const Grid& g, F&& f) {
  Field out(g);
  const int nx = g.cells(0), ny = g.cells(1), nz = g.cells(2);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::array<double, kMaxDim> x{g.center(0, i),
                                            g.dim() > 1 ? g.center(1, j) : 0.0,
                                            g.dim() > 2 ? g.center(2, k) : 0.0};
        out.at(i, j, k) = f(x);
      }
  return out;
}

// Pointwise sample of v at x: cubic 4-point Lagrange in 1d, bilinear in 2d,
// with stencils clamped inside the box and 0 returned outside it.
double interpolate(const Field& v, std::array<double, kMaxDim> x);

}  // namespace selfsim
