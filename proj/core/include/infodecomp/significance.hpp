#pragma once

#include <optional>
#include <vector>

#include "infodecomp/decomposition.hpp"

namespace infodecomp {

// Survival function of the chi-squared distribution with k degrees of
// freedom: P(X >= x).  Implemented via the regularized incomplete gamma
// function (series expansion below the a+1 knee, continued fraction
// above), absolute error below 1e-10 across the tested range.
double chi2_survival(double x, int k);

struct GTestResult {
  double lambda = 0.0;
  int dof = 0;
  bool dof_overridden = false;
  double p_value = 0.0;
  std::vector<int> targets;
  long long sample_size = 0;
  SolverStats stats;
};

// Likelihood-ratio test of the hypothesis that the target interactions
// are absent: lambda = 2 N D(p, r) with r the knock-down of p on the
// targets, referred to a chi-squared distribution.  The default degrees
// of freedom are |S| - 1; pass dof_override to use a different convention
// (invalid_dof when the override is not positive).
GTestResult g_test(const Distribution& p, const std::vector<int>& targets,
                   long long sample_size,
                   std::optional<int> dof_override = std::nullopt,
                   const SolverConfig& config = {});

}  // namespace infodecomp
