#include "selfsim/reconstruction.hpp"

#include <cmath>
#include <stdexcept>

namespace selfsim {

Reconstructed reconstruct(const Field& v, const GroupElement& g, double p, double rho) {
  const Grid& gr = v.grid();
  if (g.d != gr.dim()) throw std::invalid_argument("reconstruct: dimension mismatch");
  if (gr.dim() > 2) throw std::invalid_argument("reconstruct: 1d/2d fields only");
  const double stretch = std::pow(g.alpha, p - 1.0);
  std::array<double, kMaxDim> lo{}, hi{};
  std::array<int, kMaxDim> n{1, 1, 1};
  for (int a = 0; a < gr.dim(); ++a) {
    lo[a] = stretch * gr.lo(a) + g.b[a];
    hi[a] = stretch * gr.hi(a) + g.b[a];
    n[a] = gr.cells(a);
  }
  Reconstructed out{Field(Grid(gr.dim(), lo, hi, n)), rho};
  const double inv_alpha = 1.0 / g.alpha;
  for (std::size_t i = 0; i < v.size(); ++i) out.u[i] = inv_alpha * v[i];
  return out;
}

Reconstructed reconstruct_on(const Field& v, const GroupElement& g, double p, double rho,
                             const Grid& target) {
  if (g.d != v.grid().dim() || target.dim() != v.grid().dim())
    throw std::invalid_argument("reconstruct_on: dimension mismatch");
  if (target.dim() > 2) throw std::invalid_argument("reconstruct_on: 1d/2d fields only");
  const double inv_alpha = 1.0 / g.alpha;
  const double shrink = std::pow(g.alpha, 1.0 - p);
  Reconstructed out{Field(target), rho};
  for (int j = 0; j < target.cells(1); ++j)
    for (int i = 0; i < target.cells(0); ++i) {
      std::array<double, kMaxDim> xi{shrink * (target.center(0, i) - g.b[0]),
                                     target.dim() > 1 ? shrink * (target.center(1, j) - g.b[1])
                                                      : 0.0,
                                     0.0};
      out.u.at(i, j) = inv_alpha * interpolate(v, xi);
    }
  return out;
}

double sigma_closed_form(double mu1, double p, double t) {
  const double c = (2.0 * p - 2.0) * mu1;
  if (std::abs(c) < 1e-12) return t;
  const double arg = c * t;
  if (arg <= -1.0) throw std::domain_error("sigma_closed_form: time outside the trajectory range");
  return std::log1p(arg) / c;
}

double rho_closed_form(double mu1, double p, double tau) {
  const double c = (2.0 * p - 2.0) * mu1;
  if (std::abs(c) < 1e-12) return tau;
  return std::expm1(c * tau) / c;
}

double similarity_residual(const Field& v, const AlgebraElement& mu, const CoMovingRHS& rhs) {
  Field r = rhs.explicit_rhs(v, mu);
  const Field diff = rhs.diffusion_apply(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += diff[i];
  return l2_norm(r);
}

double mass_law_check(std::span<const double> tau, std::span<const double> mu1,
                      std::span<const double> mass_series, int d, double p) {
  if (tau.size() != mu1.size() || tau.size() != mass_series.size() || tau.size() < 2)
    throw std::invalid_argument("mass_law_check: need matching series with at least 2 rows");
  const double expo = 1.0 + d - d * p;
  const double m0 = mass_series[0];
  if (m0 == 0.0) throw std::invalid_argument("mass_law_check: initial mass must be nonzero");
  double integral = 0.0;
  double worst = 0.0;
  for (std::size_t k = 1; k < tau.size(); ++k) {
    integral += 0.5 * (mu1[k - 1] + mu1[k]) * (tau[k] - tau[k - 1]);
    const double predicted = m0 * std::exp(expo * integral);
    worst = std::max(worst, std::abs(mass_series[k] / predicted - 1.0));
  }
  return worst;
}

}  // namespace selfsim
