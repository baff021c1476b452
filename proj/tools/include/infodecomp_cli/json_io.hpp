#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "infodecomp/distribution.hpp"
#include "infodecomp/mutual_information.hpp"
#include "infodecomp/poset.hpp"
#include "infodecomp/structure_learning.hpp"

namespace infodecomp::cli {

using json = nlohmann::ordered_json;

// File plumbing.  Parse failures surface as errc::parse_error with the
// path in the message.
json load_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

// { "elements": [...], "covers": [[child, parent], ...], "bottom": label }
// "bottom" is optional on input and checked against the built poset.
json poset_to_json(const Poset& poset);
PosetPtr poset_from_json(const json& j);

// { "poset": {...}, "p": {label: mass, ...} }
json distribution_to_json(const Distribution& p);
Distribution distribution_from_json(const json& j);

// { "poset": {...}, "y_labels": [...], "joint": [[...], ...] } with one
// row per y outcome and columns following the poset's element order.
json joint_table_to_json(const JointTable& table);
JointTable joint_table_from_json(const json& j,
                                 std::optional<double> smoothing = {});

// Distribution JSON extended with the learning record:
// sigma, N, numerators (label-keyed), denominator, repaired.
json model_to_json(const LearnedModel& model);
LearnedModel model_from_json(const json& j);

// Sample count attached to a distribution/model file, when present.
std::optional<long long> sample_size_of(const json& j);

// Dataset text formats.  Transactions: one per line, whitespace- or
// comma-separated item ids, blank line = empty transaction, '#' starts a
// comment.  Vectors: CSV, one point per row.  Clustered data: CSV of
// points plus JSON {"assignments": [...], "representatives": {...},
// "bottom": [...]} ("bottom" optional).
TransactionDataset transactions_from_text(std::istream& in,
                                          int n_events_override = 0);
IntVectorDataset int_vectors_from_csv(std::istream& in);
ClusteredDataset clusters_from_files(std::istream& points_csv,
                                     const json& meta);

}  // namespace infodecomp::cli
