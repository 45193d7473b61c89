#pragma once

#include <array>
#include <cstddef>

// Similarity group G = (R_+ x SO(d-1)) |x R^d acting on states of the
// generalized d-dimensional Burgers equation, d in {1,2,3}.
//
// An element g = (alpha, Q, b) carries a scaling alpha > 0, a rotation
// Q in SO(d-1) about the x1 axis, and a shift b in R^d.  SO(0) and SO(1)
// are trivial, so only d = 3 has a rotation degree of freedom; it is stored
// as the angle phi with Q = R(phi).  Group multiplication is
//
//   (a1,Q1,b1) * (a2,Q2,b2) = (a1 a2, Q1 Q2, b1 + a1^(p-1) diag(1,Q1) b2),
//
// a semidirect product: the normal factor R^d is acted on by the rotation
// extended to d dimensions as Qt = diag(1, Q) and by the spatial stretch
// alpha^(p-1) of the scaling.  The exponent makes the function action
// a(g) a(h) = a(g * h) hold for every p: the action reads its argument at
// alpha^(1-p) Qt^T (x - b), so a shift applied after a scaling is stretched
// by alpha^(p-1).  The operations that couple scaling to shifts therefore
// take p; at p = 2 the stretch equals alpha itself.
//
// Algebra elements mu = (mu1, mu2, mu3) collect the scaling rate, the
// rotation rate (d = 3 only) and the d translation rates.  The coordinate
// vector follows the generator basis order (scaling, rotation, shifts),
// so dim(g) = 2, 3, 5 for d = 1, 2, 3.

namespace selfsim {

struct GroupElement {
  int d = 1;
  double alpha = 1.0;
  double phi = 0.0;             // rotation angle, used only when d == 3
  std::array<double, 3> b{};    // first d entries meaningful

  static GroupElement identity(int d) { return GroupElement{d, 1.0, 0.0, {}}; }
};

struct AlgebraElement {
  int d = 1;
  double mu1 = 0.0;             // scaling rate
  double mu2 = 0.0;             // rotation rate, used only when d == 3
  std::array<double, 3> mu3{};  // translation rates, first d entries meaningful
};

// Velocity of a group trajectory in the chart (alpha, phi, b).
struct GroupTangent {
  int d = 1;
  double dalpha = 0.0;
  double dphi = 0.0;
  std::array<double, 3> db{};
};

// Number of algebra coordinates: 1 + dim SO(d-1) + d.
int group_dim(int d);

// Extended rotation Qt = diag(1, R(phi)) as a d x d row-major matrix.
std::array<double, 9> rotation_matrix(const GroupElement& g);

// Group multiplication g1 * g2.
GroupElement compose(const GroupElement& g1, const GroupElement& g2, double p);

// Inverse (1/alpha, Q^T, -alpha^(1-p) diag(1,Q^T) b).
GroupElement inverse(const GroupElement& g, double p);

// exp(t mu) in closed form.  The translation part uses phi1(z) = (e^z - 1)/z
// with its z -> 0 limit at z = t(p-1)mu1; for d = 3 the last two shift
// components couple stretch and rotation through z = t((p-1)mu1 + i mu2).
GroupElement exp_group(const AlgebraElement& mu, double t, double p);

// d(L_g)|_1 mu: chart velocity (alpha mu1, mu2, alpha^(p-1) diag(1,Q) mu3)
// of the reconstruction equation g' = dL_g mu.  At g = 1 this returns mu.
GroupTangent tangent_left_translate(const GroupElement& g, const AlgebraElement& mu, double p);

// Faithful (d+1) x (d+1) representation [[alpha^(p-1) diag(1,Q), b], [0, 1]],
// row-major.  Matrix multiplication realizes compose(); alpha is recovered
// from the stretch block since p > 1.
std::array<double, 16> matrix_rep(const GroupElement& g, double p);

// Coordinate vector of mu in the generator basis order and its inverse.
std::array<double, 5> algebra_coords(const AlgebraElement& mu);
AlgebraElement algebra_from_coords(int d, const std::array<double, 5>& c);

}  // namespace selfsim
