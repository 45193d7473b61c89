#pragma once

#include <array>
#include <vector>

#include "selfsim/grid.hpp"
#include "selfsim/lie_group.hpp"

// Action of the similarity group on state fields,
//
//   a(g) v(x) = alpha^-1 v(alpha^(1-p) diag(1,Q^T) (x - b)),
//
// its multiplier homomorphism m(g) = alpha^(2-2p), the discretized
// infinitesimal generators, and the rotation that reduces a general drift
// direction to the canonical x1-aligned form.

namespace selfsim {

// Resamples v through the group map onto its own grid.  Points that pull
// back outside the box read as 0.  The identity returns v unchanged.
// Supported for d = 1 and d = 2 fields.
Field apply_action(const GroupElement& g, const Field& v, double p);

// One-parameter multiplier m(g) = alpha^(2-2p) satisfying m(g h) = m(g) m(h).
double m_homomorphism(const GroupElement& g, double p);

// Discrete generators L_j v = d/dt|_0 a(exp(t eps_j)) v in the basis order
// (scaling, rotation for d = 3, shifts).  All are built from conservative
// central differences with zero boundary-face values, so the shift and
// rotation generators have exactly zero discrete mass and the scaling
// generator satisfies mass(L_1 v) = (d p - d - 1) mass(v) to rounding.
//
//   scaling:   (d(p-1) - 1) v + (1-p) sum_a D_a(xi_a v)
//   rotation:  D_y(xi_3 v) - D_z(xi_2 v)            (d = 3)
//   shift j:   -D_j v
class GeneratorSet {
 public:
  GeneratorSet(const Grid& grid, double p);

  int count() const;  // = group_dim(grid.dim())
  const Grid& grid() const { return grid_; }
  double p() const { return p_; }

  Field apply(int j, const Field& v) const;

  // sum_j coeffs[j] L_j v without materializing the intermediate fields
  Field combine(const std::array<double, 5>& coeffs, const Field& v) const;

 private:
  Grid grid_;
  double p_;
};

struct CanonicalReduction {
  int d = 1;
  std::array<double, 9> Q{};  // row-major d x d, symmetric orthogonal, Q a = |a| e1
  double a_norm = 1.0;
  double nu_eff = 0.0;        // nu / |a|
};

// Householder rotation sending the drift vector a to |a| e1; the original
// solution is recovered as u(x, t) = v(Q x, t / |a|) from the canonical run
// with viscosity nu_eff.
CanonicalReduction canonical_reduce(int d, const std::array<double, 3>& a, double nu);

}  // namespace selfsim
