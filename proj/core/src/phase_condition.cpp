#include "selfsim/phase_condition.hpp"

#include <cmath>
#include <stdexcept>

#include "selfsim/small_matrix.hpp"

namespace selfsim {

namespace {

std::vector<Field> generator_fields(const Field& v, const GeneratorSet& gens) {
  std::vector<Field> out;
  out.reserve(gens.count());
  for (int j = 0; j < gens.count(); ++j) out.push_back(gens.apply(j, v));
  return out;
}

}  // namespace

PhaseCondition::PhaseCondition(PhaseKind kind, double eta) : kind_(kind), eta_(eta) {}

PhaseCondition PhaseCondition::orthogonal() { return PhaseCondition(PhaseKind::Orthogonal, 0.0); }

PhaseCondition PhaseCondition::fixed(const Field& reference, const GeneratorSet& gens, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("PhaseCondition: eta must be positive");
  PhaseCondition pc(PhaseKind::Fixed, eta);
  pc.ref_ = reference;
  pc.ref_gens_ = generator_fields(reference, gens);
  return pc;
}

const Field& PhaseCondition::reference() const {
  if (kind_ != PhaseKind::Fixed) throw std::logic_error("PhaseCondition: no reference in orthogonal mode");
  return ref_;
}

PhaseSolveResult PhaseCondition::solve_mu(const Field& v, const Field& rhs_F,
                                          const GeneratorSet& gens) const {
  const int dim = gens.count();
  const std::vector<Field> v_gens = generator_fields(v, gens);
  const std::vector<Field>& test = kind_ == PhaseKind::Fixed ? ref_gens_ : v_gens;
  if (kind_ == PhaseKind::Fixed && !(ref_.grid() == v.grid()))
    throw std::invalid_argument("PhaseCondition: reference grid mismatch");

  SmallMatrix G;
  G.n = dim;
  std::array<double, 5> r{};
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) G.at(j, k) = inner_product(test[j], v_gens[k]);
    r[j] = inner_product(test[j], rhs_F);
  }

  const SmallSolve sol = solve_dense(G, r);
  if (!std::isfinite(sol.cond1) || (kind_ == PhaseKind::Orthogonal && sol.cond1 > 1e12))
    throw std::runtime_error("PhaseCondition: Gram matrix is singular or badly conditioned");

  PhaseSolveResult out;
  out.mu = algebra_from_coords(gens.grid().dim(), sol.x);
  out.cond = sol.cond1;
  for (int j = 0; j < dim; ++j) {
    double resid = r[j];
    for (int k = 0; k < dim; ++k) resid -= G.at(j, k) * sol.x[k];
    out.residual = std::max(out.residual, std::abs(resid));
  }
  return out;
}

std::array<double, 5> PhaseCondition::constraint_values(const Field& v) const {
  if (kind_ != PhaseKind::Fixed) return {};
  std::array<double, 5> out{};
  Field diff = v;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= ref_[i];
  for (std::size_t j = 0; j < ref_gens_.size(); ++j) out[j] = inner_product(ref_gens_[j], diff);
  return out;
}

bool PhaseCondition::maybe_update_reference(const Field& v, const GeneratorSet& gens, double cond) {
  if (kind_ != PhaseKind::Fixed) return false;
  Field diff = v;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= ref_[i];
  const bool drifted = l2_norm(diff) > eta_ * l2_norm(ref_);
  if (!drifted && cond <= 1e8) return false;
  ref_ = v;
  ref_gens_ = generator_fields(v, gens);
  ++updates_;
  return true;
}

}  // namespace selfsim
