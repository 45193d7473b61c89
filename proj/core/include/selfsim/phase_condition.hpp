#pragma once

#include <array>
#include <vector>

#include "selfsim/group_action.hpp"
#include "selfsim/grid.hpp"
#include "selfsim/lie_group.hpp"

// Phase conditions closing the co-moving system: dim(g) scalar equations
// that determine the rates mu from the current state.
//
// Orthogonal:  <L_j v, F(v) - sum_k mu_k L_k v> = 0, Gram system in L_j v.
// Fixed:       <L_j vhat, v - vhat> = 0 differentiated once in tau, giving
//              <L_j vhat, F(v) - sum_k mu_k L_k v> = 0 with a stored
//              reference vhat.  The undifferentiated constraint is monitored
//              as drift, not projected out.
//
// The reference is replaced by the current state when v wanders too far
// (||v - vhat|| > eta ||vhat||) or the mixed Gram matrix becomes poorly
// conditioned (estimate > 1e8); the orthogonal form errors out instead when
// its Gram condition estimate exceeds 1e12.

namespace selfsim {

enum class PhaseKind { Fixed, Orthogonal };

struct PhaseSolveResult {
  AlgebraElement mu;
  double residual = 0.0;  // max_j |r_j - (G mu)_j| over the solved system
  double cond = 0.0;      // 1-norm condition estimate of the Gram matrix
};

class PhaseCondition {
 public:
  static PhaseCondition orthogonal();
  static PhaseCondition fixed(const Field& reference, const GeneratorSet& gens, double eta = 0.15);

  PhaseKind kind() const { return kind_; }
  double eta() const { return eta_; }
  int reference_updates() const { return updates_; }
  const Field& reference() const;

  // Solves the Gram system for mu; rhs_F must be the assembled mu-free
  // right-hand side F(v).
  PhaseSolveResult solve_mu(const Field& v, const Field& rhs_F, const GeneratorSet& gens) const;

  // Values of the undifferentiated fixed constraint <L_j vhat, v - vhat>.
  std::array<double, 5> constraint_values(const Field& v) const;

  // Applies the reference update policy; cond is the estimate from the most
  // recent solve_mu at a nearby state.  Returns true when vhat was replaced.
  bool maybe_update_reference(const Field& v, const GeneratorSet& gens, double cond);

 private:
  PhaseCondition(PhaseKind kind, double eta);

  PhaseKind kind_;
  double eta_;
  int updates_ = 0;
  Field ref_;
  std::vector<Field> ref_gens_;
};

}  // namespace selfsim
