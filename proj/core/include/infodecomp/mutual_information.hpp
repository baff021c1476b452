#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infodecomp/decomposition.hpp"

namespace infodecomp {

// Joint distribution of an outcome Y against a poset-valued variable X.
// joint[y][x] follows the poset's canonical element order.
struct JointTable {
  PosetPtr poset;
  std::vector<std::string> y_labels;
  std::vector<std::vector<double>> joint;
};

// Validates shape, positivity and normalization.  Without smoothing every
// cell must be strictly positive (each conditional needs full support);
// with smoothing the given mass is added to every cell and the table is
// renormalized, so zeros are allowed on input.
JointTable make_joint_table(PosetPtr poset, std::vector<std::string> y_labels,
                            std::vector<std::vector<double>> joint,
                            std::optional<double> smoothing = std::nullopt);

std::vector<double> y_marginal(const JointTable& table);

Distribution x_marginal(const JointTable& table);

Distribution conditional(const JointTable& table, int y);

// mix(conditional(y), x_marginal, targets): the conditional with its
// interactions inside the target set flattened to the marginal's.
Distribution mixed_conditional(const JointTable& table, int y,
                               const std::vector<int>& targets,
                               const SolverConfig& config = {});

// I(X; Y) as the expected divergence of conditionals from the marginal.
double mutual_information(const JointTable& table);

struct RefinedMI {
  double value = 0.0;
  SolverStats stats;
};

// Mutual information retained between two nested flattening levels:
// the expected divergence of the coarse-flattened conditional from the
// fine-flattened one, for coarse targets a subset of fine targets.
// refined({}, all non-bottom) recovers mutual_information.
RefinedMI refined_mutual_information(const JointTable& table,
                                     const std::vector<int>& coarse,
                                     const std::vector<int>& fine,
                                     const SolverConfig& config = {});

struct MIChainDecomposition {
  std::vector<double> terms;
  double total = 0.0;
  double direct_mi = 0.0;
  SolverStats stats;
};

// Splits I(X; Y) along an increasing chain of target sets (same chain
// rules as chain_decompose); the terms sum to the mutual information.
MIChainDecomposition mi_chain_decompose(const JointTable& table,
                                        const std::vector<std::vector<int>>& chain,
                                        const SolverConfig& config = {});

}  // namespace infodecomp
