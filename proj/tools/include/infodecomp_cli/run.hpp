#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infodecomp/poset.hpp"
#include "infodecomp/projection.hpp"
#include "infodecomp_cli/json_io.hpp"

namespace infodecomp::cli {

struct RunConfig {
  std::string command;

  std::string input;
  std::string q_input;
  std::string transactions;
  std::string vectors;
  std::string points;
  std::string clusters;
  std::string output;

  std::string subset;
  std::string chain;
  std::string coarse;
  std::string fine;

  double sigma = 0.0;
  int events = 0;
  long long samples = 0;  // 0: take N from the model file
  int dof = 0;            // 0: default |S| - 1
  double smooth = 0.0;    // 0: no smoothing
  bool all_singletons = false;
  int parallel = 0;  // 0: all available cores

  SolverConfig solver;
};

// Executes one command and writes the JSON report to cfg.output (stdout
// when empty).  Returns the process exit code: 0 success, 1 validation
// error, 2 solver failure.
int run(const RunConfig& cfg);

// Element-set spec: "∅"/"EMPTY" for the empty set, "ALL" for every
// non-bottom element, an exact label, labels joined with '|', or a
// comma-separated label list (tried after exact match, since itemset
// labels themselves contain commas).  Result is sorted and deduplicated.
std::vector<int> parse_subset(const Poset& poset, const std::string& spec);

// Chain spec: levels separated by ';', each level a subset spec.
std::vector<std::vector<int>> parse_chain_spec(const Poset& poset,
                                               const std::string& spec);

}  // namespace infodecomp::cli
