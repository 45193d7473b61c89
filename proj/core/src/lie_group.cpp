#include "selfsim/lie_group.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace selfsim {

namespace {

void check_dim(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("group dimension must be 1, 2 or 3");
}

void check_same(int d1, int d2) {
  if (d1 != d2) throw std::invalid_argument("mixed group dimensions");
}

// phi1(z) = (e^z - 1)/z continued by 1 at z = 0.  expm1 keeps the quotient
// fully accurate down to the switch point.
double phi1(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
  return std::expm1(z) / z;
}

std::complex<double> phi1(std::complex<double> z) {
  if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
  return (std::exp(z) - 1.0) / z;
}

}  // namespace

int group_dim(int d) {
  check_dim(d);
  return d == 3 ? 5 : d + 1;
}

std::array<double, 9> rotation_matrix(const GroupElement& g) {
  check_dim(g.d);
  std::array<double, 9> q{};
  const int d = g.d;
  for (int i = 0; i < d; ++i) q[i * d + i] = 1.0;
  if (d == 3) {
    const double c = std::cos(g.phi), s = std::sin(g.phi);
    q[4] = c; q[5] = -s;
    q[7] = s; q[8] = c;
  }
  return q;
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2, double p) {
  check_dim(g1.d);
  check_same(g1.d, g2.d);
  GroupElement out;
  out.d = g1.d;
  out.alpha = g1.alpha * g2.alpha;
  out.phi = g1.phi + g2.phi;
  const auto q = rotation_matrix(g1);
  const double stretch = std::pow(g1.alpha, p - 1.0);
  const int d = g1.d;
  for (int i = 0; i < d; ++i) {
    double r = 0.0;
    for (int j = 0; j < d; ++j) r += q[i * d + j] * g2.b[j];
    out.b[i] = g1.b[i] + stretch * r;
  }
  return out;
}

GroupElement inverse(const GroupElement& g, double p) {
  check_dim(g.d);
  GroupElement out;
  out.d = g.d;
  out.alpha = 1.0 / g.alpha;
  out.phi = -g.phi;
  const auto qt = rotation_matrix(out);  // diag(1, Q^T)
  const double shrink = std::pow(g.alpha, 1.0 - p);
  const int d = g.d;
  for (int i = 0; i < d; ++i) {
    double r = 0.0;
    for (int j = 0; j < d; ++j) r += qt[i * d + j] * g.b[j];
    out.b[i] = -shrink * r;
  }
  return out;
}

GroupElement exp_group(const AlgebraElement& mu, double t, double p) {
  check_dim(mu.d);
  GroupElement out;
  out.d = mu.d;
  out.alpha = std::exp(t * mu.mu1);
  out.phi = mu.d == 3 ? t * mu.mu2 : 0.0;
  // b solves b' = alpha(t)^(p-1) Qt(t) mu3, so the shifts see the stretch
  // rate (p-1) mu1 rather than mu1 itself
  const double zr = (p - 1.0) * mu.mu1;
  out.b[0] = phi1(t * zr) * t * mu.mu3[0];
  if (mu.d == 2) {
    out.b[1] = phi1(t * zr) * t * mu.mu3[1];
  } else if (mu.d == 3) {
    // shift components 2:3 see the combined stretch/rotation rate; with the
    // plane identified with C, diag rate (p-1)mu1 + i mu2 integrates in
    // closed form
    const std::complex<double> z(t * zr, t * mu.mu2);
    const std::complex<double> w = phi1(z) * (t * std::complex<double>(mu.mu3[1], mu.mu3[2]));
    out.b[1] = w.real();
    out.b[2] = w.imag();
  }
  return out;
}

GroupTangent tangent_left_translate(const GroupElement& g, const AlgebraElement& mu, double p) {
  check_dim(g.d);
  check_same(g.d, mu.d);
  GroupTangent out;
  out.d = g.d;
  out.dalpha = g.alpha * mu.mu1;
  out.dphi = g.d == 3 ? mu.mu2 : 0.0;
  const auto q = rotation_matrix(g);
  const double stretch = std::pow(g.alpha, p - 1.0);
  const int d = g.d;
  for (int i = 0; i < d; ++i) {
    double r = 0.0;
    for (int j = 0; j < d; ++j) r += q[i * d + j] * mu.mu3[j];
    out.db[i] = stretch * r;
  }
  return out;
}

std::array<double, 16> matrix_rep(const GroupElement& g, double p) {
  check_dim(g.d);
  const int d = g.d;
  const int n = d + 1;
  std::array<double, 16> m{};
  const auto q = rotation_matrix(g);
  const double stretch = std::pow(g.alpha, p - 1.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i * n + j] = stretch * q[i * d + j];
  for (int i = 0; i < d; ++i) m[i * n + d] = g.b[i];
  m[d * n + d] = 1.0;
  return m;
}

std::array<double, 5> algebra_coords(const AlgebraElement& mu) {
  check_dim(mu.d);
  std::array<double, 5> c{};
  c[0] = mu.mu1;
  int k = 1;
  if (mu.d == 3) c[k++] = mu.mu2;
  for (int i = 0; i < mu.d; ++i) c[k++] = mu.mu3[i];
  return c;
}

AlgebraElement algebra_from_coords(int d, const std::array<double, 5>& c) {
  check_dim(d);
  AlgebraElement mu;
  mu.d = d;
  mu.mu1 = c[0];
  int k = 1;
  if (d == 3) mu.mu2 = c[k++];
  for (int i = 0; i < d; ++i) mu.mu3[i] = c[k++];
  return mu;
}

}  // namespace selfsim
