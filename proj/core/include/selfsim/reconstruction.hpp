#pragma once

#include <span>

#include "selfsim/grid.hpp"
#include "selfsim/lie_group.hpp"
#include "selfsim/spatial_disc.hpp"

// Maps frozen states back to the original Cauchy problem and provides the
// diagnostics built on top of a run: the closed-form time rescaling for
// constant rates, the similarity residual, and the mass transport law.

namespace selfsim {

struct Reconstructed {
  Field u;
  double t = 0.0;
};

// u(x, t) = alpha^-1 v(alpha^(1-p) (x - b)) at t = rho, sampled on the
// computational box mapped through g (x = alpha^(p-1) xi + b), where cell
// centers pull back exactly onto cell centers.  d = 1 and d = 2.
Reconstructed reconstruct(const Field& v, const GroupElement& g, double p, double rho);

// Same, sampled on a caller-chosen grid through interpolation.
Reconstructed reconstruct_on(const Field& v, const GroupElement& g, double p, double rho,
                             const Grid& target);

// sigma(t) = log1p((2p-2) mu1 t) / ((2p-2) mu1), the co-moving time that a
// constant-rate trajectory reaches at physical time t; continued by sigma = t
// when |(2p-2) mu1| < 1e-12.  Requires (2p-2) mu1 t > -1.
double sigma_closed_form(double mu1, double p, double t);

// Inverse map t(tau) for constant rates.
double rho_closed_form(double mu1, double p, double tau);

// || F(v) - sum_j mu_j L_j v ||_L2, which vanishes exactly on a discrete
// similarity profile.
double similarity_residual(const Field& v, const AlgebraElement& mu, const CoMovingRHS& rhs);

// Max relative deviation of mass(tau_k) from mass(0) exp((1+d-dp) I_k),
// I_k the trapezoid integral of mu1 over the recorded instants.
double mass_law_check(std::span<const double> tau, std::span<const double> mu1,
                      std::span<const double> mass_series, int d, double p);

}  // namespace selfsim
