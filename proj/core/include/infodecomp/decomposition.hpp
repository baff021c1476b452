#pragma once

#include <vector>

#include "infodecomp/projection.hpp"

namespace infodecomp {

// Kullback-Leibler divergence sum p(x) log(p(x)/q(x)).  Finite for the
// strictly positive distributions this library works with; requires both
// arguments to share a poset.
double kl_divergence(const Distribution& p, const Distribution& q);

// Shannon entropy -sum p(x) log p(x), in nats.
double entropy(const Distribution& p);

struct PythagorasSplit {
  Distribution r;
  double kl_p_r = 0.0;
  double kl_r_q = 0.0;
  double kl_p_q = 0.0;
  SolverStats stats;
};

// Splits D(p, q) through the mixed distribution r = mix(p, q, targets):
// kl_p_r + kl_r_q reproduces kl_p_q up to solver tolerance.
PythagorasSplit pythagoras_split(const Distribution& p, const Distribution& q,
                                 const std::vector<int>& targets,
                                 const SolverConfig& config = {});

struct ChainDecomposition {
  // terms[k] = D(r_k, r_{k+1}) where r_k = mix(p, q, chain[k]).
  std::vector<double> terms;
  double total = 0.0;
  double direct = 0.0;
  // Intermediate mixed distributions r_1 .. r_{m-1}; the ends are p and q.
  std::vector<Distribution> mixtures;
  SolverStats stats;
};

// Decomposes D(p, q) along an increasing chain of target sets.  The chain
// must start with the empty set, end with every non-bottom element, and
// grow monotonically (not_a_chain otherwise).
ChainDecomposition chain_decompose(const Distribution& p,
                                   const Distribution& q,
                                   const std::vector<std::vector<int>>& chain,
                                   const SolverConfig& config = {});

// Validates chain shape and returns the levels as sorted unique index
// sets.  Shared by the divergence and mutual information decompositions.
std::vector<std::vector<int>> normalize_chain(
    const Poset& poset, const std::vector<std::vector<int>>& chain);

struct GainResult {
  double gain = 0.0;
  Distribution r;
  SolverStats stats;
};

// Information gain of a target set: D(p, mix(p, uniform, targets)), the
// divergence lost when the targets' interactions are flattened.
GainResult information_gain(const Distribution& p,
                            const std::vector<int>& targets,
                            const SolverConfig& config = {});

struct EntropySplit {
  double entropy = 0.0;
  double log_cardinality = 0.0;
  // H = log|S| - kl_p_r - kl_r_uniform with r the knock-down on targets.
  double kl_p_r = 0.0;
  double kl_r_uniform = 0.0;
  Distribution r;
  SolverStats stats;
};

EntropySplit entropy_split(const Distribution& p,
                           const std::vector<int>& targets,
                           const SolverConfig& config = {});

// Subvaluation v(x) = log|S| - D(p, p_x) where p_x knocks down the whole
// up-set of x.  v(bottom) equals the entropy of p.  Submodular on lattices.
std::vector<double> subvaluation(const Distribution& p,
                                 const SolverConfig& config = {});

// The induced distance d(x, y) = 2 v(x join y) - v(x) - v(y), computed as
// a sum of two divergences between nested knock-downs.  Throws
// join_does_not_exist when x and y have no least upper bound.
double poset_distance(const Distribution& p, int x, int y,
                      const SolverConfig& config = {});

// Covering graph with every edge (child, parent) weighted by
// D(knockdown(parent), knockdown(child)), the subvaluation gap across the
// edge.
CoveringGraph weighted_covering_graph(const Distribution& p,
                                      const SolverConfig& config = {});

}  // namespace infodecomp
