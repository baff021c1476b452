#pragma once

#include <functional>
#include <map>
#include <vector>

#include "infodecomp/coordinates.hpp"
#include "infodecomp/distribution.hpp"

namespace infodecomp {

struct SolverConfig {
  // Convergence threshold on max |theta_r(x) - theta_q(x)| over targets.
  double theta_tol = 1e-9;
  // Acceptance threshold on max |eta_r(s) - eta_p(s)| off the targets.
  double eta_tol = 1e-9;
  // Bisection iteration budget per single-target solve.
  int max_bisect = 200;
  // Budget of cyclic sweeps over the target set.
  int max_outer = 10000;
  // Resolution of the exhaustive sign-change scan used as a last resort
  // when local bracketing fails.
  int bracket_grid = 10000;
  // Instrumentation hook: called with the working masses after every
  // sweep.  Not part of the numerical contract.
  std::function<void(const std::vector<double>&)> sweep_observer;
};

struct SolverStats {
  int outer_iterations = 0;
  double final_theta_residual = 0.0;
  double final_eta_residual = 0.0;
  // Bisection iterations spent per target element, summed over sweeps.
  std::map<int, long long> per_target_iterations;
};

struct MixResult {
  Distribution r;
  SolverStats stats;
};

// Computes the mixed distribution of p and q with respect to a target set
// I of non-bottom elements: the unique distribution r with
//
//   eta_r(s) = eta_p(s)   for every non-bottom s outside I,
//   theta_r(x) = theta_q(x)   for every x in I.
//
// mix(p, q, {}) returns p and mix(p, q, all non-bottom) returns q, both
// exactly.  Otherwise targets are solved one at a time: masses below a
// target are an affine function of the target's own mass, so the single
// constraint theta_r(x*) = theta_q(x*) reduces to a one-dimensional
// root-finding problem handled by bisection.  Multiple targets are swept
// cyclically, in the order given, until the theta residual drops below
// config.theta_tol.
//
// Throws invalid_argument if a target is the bottom, unknown_element for
// an out-of-range index, poset_mismatch if p and q disagree, and the
// solver errors (no_feasible_bracket, max_iterations,
// max_outer_iterations, no_convergence) when refinement fails.
MixResult mix(const Distribution& p, const Distribution& q,
              const std::vector<int>& targets, const SolverConfig& config = {});

// Single-target convenience wrapper: mix with I = {xstar}.
MixResult mix_singleton(const Distribution& p, const Distribution& q,
                        int xstar, const SolverConfig& config = {});

// Knock-down projection: mix(p, uniform, targets).  The result keeps the
// eta coordinates of p off the targets while zeroing the targets' theta
// coordinates.
MixResult e_project_knockdown(const Distribution& p,
                              const std::vector<int>& targets,
                              const SolverConfig& config = {});

}  // namespace infodecomp
