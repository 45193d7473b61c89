#pragma once

#include <array>
#include <optional>
#include <string>

#include "selfsim/grid.hpp"
#include "selfsim/group_action.hpp"
#include "selfsim/phase_condition.hpp"

// Run configuration: a flat "key = value" document with '#' comments.
// Unknown keys, malformed values and out-of-range settings are reported
// with line numbers; range violations are collected and reported together.
// Defaults depend on d: 1d runs get the box [-8, 8] with 1600 cells, 2d runs
// [-5, 5]^2 with 150 cells per axis.
//
// Recognized keys (see README for the grammar):
//   d, p, nu, domain_lo, domain_hi, n, cfl, theta, phase, eta, tau_end,
//   snapshot_every, dtau_max, output_dir, seed, initial, a_vec

namespace selfsim {

struct SolverConfig {
  int d = 1;
  double p = 2.0;
  double nu = 0.4;
  std::array<double, 3> lo{}, hi{};
  std::array<int, 3> n{};
  double cfl = 0.45;
  double theta = 1.5;
  PhaseKind phase = PhaseKind::Fixed;
  // Reference-update threshold for the fixed phase condition.  Small values
  // track the profile closely (approaching orthogonal behaviour), large ones
  // keep the initial reference and eventually destabilize the algebraic solve.
  double eta = 0.15;
  double tau_end = 5.0;
  double snapshot_every = 0.5;
  double dtau_max = 0.1;
  std::string output_dir = "out";
  unsigned long seed = 0;
  std::string initial;  // builtin name, "expr:<formula in x,y>" or "file:<snapshot>"
  std::optional<std::array<double, 3>> a_vec;
  std::optional<CanonicalReduction> reduction;  // derived from a_vec

  Grid make_grid() const;
  // Viscosity actually used by the run: nu, or nu/|a| after reduction.
  double effective_nu() const;
};

SolverConfig parse_config(const std::string& text);

// Round-trips through parse_config to an equivalent configuration.
std::string render_config(const SolverConfig& cfg);

// Built-in run configurations reproducing the study cases.
SolverConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Applies a single "key = value" override on top of an existing config and
// revalidates.
void apply_override(SolverConfig& cfg, const std::string& line);

// Initial data described by cfg.initial sampled on the run grid.
Field initial_condition(const SolverConfig& cfg);

}  // namespace selfsim
