#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infodecomp/distribution.hpp"

namespace infodecomp {

struct TransactionDataset {
  // Highest admissible item id; items are 1-based.
  int n_events = 0;
  std::vector<std::vector<int>> transactions;
};

struct IntVectorDataset {
  int dim = 0;
  std::vector<std::vector<long long>> points;
};

struct ClusteredDataset {
  std::vector<std::vector<double>> points;
  // Per point, the id of its cluster.
  std::vector<std::string> assignments;
  std::map<std::string, std::vector<double>> representatives;
  // Designated bottom vector; when absent a representative below all
  // retained ones must exist.
  std::optional<std::vector<double>> bottom;
};

// A poset model estimated from data.  The distribution is exact on the
// counts: numerators (per element, canonical order) over one common
// denominator, converted to doubles only for phat.
struct LearnedModel {
  PosetPtr poset;
  Distribution phat;
  double sigma = 0.0;
  long long sample_size = 0;
  std::vector<long long> numerators;
  long long denominator = 1;
  // Labels of elements whose zero mass was replaced by 1/(10 N).
  std::vector<std::string> repaired;
};

// Frequent-exact-set model over transactions: elements are the distinct
// transactions whose frequency reaches sigma, ordered by set inclusion,
// with the empty set as bottom carrying the residual mass.
LearnedModel learn_from_transactions(const TransactionDataset& data,
                                     double sigma);

// Same estimator over distinct nonnegative integer vectors under the
// componentwise order; the zero vector is the bottom.
LearnedModel learn_from_int_vectors(const IntVectorDataset& data, double sigma);

// Cluster-representative model: element masses are cluster sizes over N,
// ordered componentwise on the representatives.  The bottom is the
// designated vector, or the unique representative below all others
// (no_bottom when neither exists).
LearnedModel learn_from_clusters(const ClusteredDataset& data, double sigma);

// Canonical labels: sorted comma-joined ids for itemsets ("1,2,4,5", the
// empty set as "⊥"), comma-joined coordinates for vectors.
std::string itemset_label(const std::vector<int>& items);
std::string int_vector_label(const std::vector<long long>& v);
std::string point_label(const std::vector<double>& v);

}  // namespace infodecomp
