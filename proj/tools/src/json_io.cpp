#include "infodecomp_cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "infodecomp/error.hpp"

namespace infodecomp::cli {

namespace {

[[noreturn]] void bad(const std::string& what) {
  raise(errc::parse_error, what);
}

const json& need(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    bad(std::string(where) + " is missing the \"" + key + "\" field");
  }
  return j.at(key);
}

// A report written by this tool carries its payload under "result";
// accepting reports directly makes command outputs chainable.
const json& payload_of(const json& j) {
  if (j.is_object() && !j.contains("poset") && j.contains("result") &&
      j.at("result").is_object()) {
    return j.at("result");
  }
  return j;
}

double need_number(const json& j, const char* where) {
  if (!j.is_number()) bad(std::string(where) + " must be a number");
  return j.get<double>();
}

std::string need_string(const json& j, const char* where) {
  if (!j.is_string()) bad(std::string(where) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(errc::parse_error, "invalid JSON in " + path);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json poset_to_json(const Poset& poset) {
  json j;
  j["elements"] = poset.labels();
  json covers = json::array();
  for (auto [child, parent] : poset.cover_pairs()) {
    covers.push_back(json::array({poset.label(child), poset.label(parent)}));
  }
  j["covers"] = std::move(covers);
  j["bottom"] = poset.label(poset.bottom());
  return j;
}

PosetPtr poset_from_json(const json& j) {
  const json& elems = need(j, "elements", "poset");
  if (!elems.is_array()) bad("poset \"elements\" must be an array");
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(need_string(e, "element label"));

  const json& cov = need(j, "covers", "poset");
  if (!cov.is_array()) bad("poset \"covers\" must be an array");
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& pair : cov) {
    if (!pair.is_array() || pair.size() != 2) {
      bad("each cover must be a [child, parent] pair");
    }
    covers.emplace_back(need_string(pair[0], "cover child"),
                        need_string(pair[1], "cover parent"));
  }

  PosetPtr poset = build_poset(labels, covers);
  if (j.contains("bottom")) {
    std::string stated = need_string(j.at("bottom"), "poset \"bottom\"");
    if (stated != poset->label(poset->bottom())) {
      bad("stated bottom \"" + stated + "\" is not the minimum; found \"" +
          poset->label(poset->bottom()) + "\"");
    }
  }
  return poset;
}

json distribution_to_json(const Distribution& p) {
  json j;
  j["poset"] = poset_to_json(*p.poset());
  json masses = json::object();
  for (int i = 0; i < p.poset()->size(); ++i) {
    masses[p.poset()->label(i)] = p[i];
  }
  j["p"] = std::move(masses);
  return j;
}

Distribution distribution_from_json(const json& wrapped) {
  const json& j = payload_of(wrapped);
  PosetPtr poset = poset_from_json(need(j, "poset", "distribution"));
  const json& masses = need(j, "p", "distribution");
  if (!masses.is_object()) bad("\"p\" must map element labels to masses");
  std::vector<double> values(static_cast<std::size_t>(poset->size()), -1.0);
  for (const auto& [label, v] : masses.items()) {
    int idx = poset->index_of(label);
    values[static_cast<std::size_t>(idx)] =
        need_number(v, ("mass of \"" + label + "\"").c_str());
  }
  for (int i = 0; i < poset->size(); ++i) {
    if (values[static_cast<std::size_t>(i)] < 0.0) {
      bad("\"p\" is missing element \"" + poset->label(i) + "\"");
    }
  }
  return Distribution(std::move(poset), std::move(values));
}

json joint_table_to_json(const JointTable& table) {
  json j;
  j["poset"] = poset_to_json(*table.poset);
  j["y_labels"] = table.y_labels;
  json rows = json::array();
  for (const auto& row : table.joint) rows.push_back(row);
  j["joint"] = std::move(rows);
  return j;
}

JointTable joint_table_from_json(const json& wrapped,
                                 std::optional<double> smoothing) {
  const json& j = payload_of(wrapped);
  const json& pj = need(j, "poset", "joint table");
  PosetPtr poset = poset_from_json(pj);

  // Columns follow the file's element order, which build_poset may have
  // permuted; map through labels.
  const json& elems = pj.at("elements");
  std::vector<int> col_to_idx;
  for (const auto& e : elems) {
    col_to_idx.push_back(poset->index_of(e.get<std::string>()));
  }

  const json& yl = need(j, "y_labels", "joint table");
  if (!yl.is_array()) bad("\"y_labels\" must be an array");
  std::vector<std::string> y_labels;
  for (const auto& e : yl) y_labels.push_back(need_string(e, "y label"));

  const json& rows = need(j, "joint", "joint table");
  if (!rows.is_array() || rows.size() != y_labels.size()) {
    bad("\"joint\" must hold one row per y label");
  }
  std::vector<std::vector<double>> joint;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != col_to_idx.size()) {
      bad("each joint row must hold one mass per element");
    }
    std::vector<double> r(col_to_idx.size(), 0.0);
    for (std::size_t c = 0; c < col_to_idx.size(); ++c) {
      r[static_cast<std::size_t>(col_to_idx[c])] =
          need_number(row[c], "joint mass");
    }
    joint.push_back(std::move(r));
  }
  return make_joint_table(std::move(poset), std::move(y_labels),
                          std::move(joint), smoothing);
}

json model_to_json(const LearnedModel& model) {
  json j = distribution_to_json(model.phat);
  j["sigma"] = model.sigma;
  j["N"] = model.sample_size;
  json nums = json::object();
  for (int i = 0; i < model.poset->size(); ++i) {
    nums[model.poset->label(i)] = model.numerators[static_cast<std::size_t>(i)];
  }
  j["numerators"] = std::move(nums);
  j["denominator"] = model.denominator;
  j["repaired"] = model.repaired;
  return j;
}

LearnedModel model_from_json(const json& wrapped) {
  const json& j = payload_of(wrapped);
  Distribution phat = distribution_from_json(j);
  PosetPtr poset = phat.poset();

  double sigma = need_number(need(j, "sigma", "model"), "\"sigma\"");
  const json& nj = need(j, "N", "model");
  if (!nj.is_number_integer()) bad("\"N\" must be an integer");
  long long n_samples = nj.get<long long>();

  const json& nums = need(j, "numerators", "model");
  if (!nums.is_object()) bad("\"numerators\" must map labels to counts");
  std::vector<long long> numerators(static_cast<std::size_t>(poset->size()),
                                    -1);
  for (const auto& [label, v] : nums.items()) {
    if (!v.is_number_integer()) bad("numerators must be integers");
    numerators[static_cast<std::size_t>(poset->index_of(label))] =
        v.get<long long>();
  }
  for (long long v : numerators) {
    if (v < 0) bad("\"numerators\" does not cover every element");
  }

  const json& dj = need(j, "denominator", "model");
  if (!dj.is_number_integer()) bad("\"denominator\" must be an integer");
  long long denominator = dj.get<long long>();

  std::vector<std::string> repaired;
  if (j.contains("repaired")) {
    for (const auto& e : j.at("repaired")) {
      repaired.push_back(need_string(e, "repaired label"));
    }
  }

  return LearnedModel{std::move(poset), std::move(phat),      sigma,
                      n_samples,        std::move(numerators), denominator,
                      std::move(repaired)};
}

std::optional<long long> sample_size_of(const json& wrapped) {
  const json& j = payload_of(wrapped);
  if (j.is_object() && j.contains("N") && j.at("N").is_number_integer()) {
    return j.at("N").get<long long>();
  }
  return std::nullopt;
}

TransactionDataset transactions_from_text(std::istream& in,
                                          int n_events_override) {
  TransactionDataset data;
  data.n_events = n_events_override;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<int> items;
    std::string tok;
    bool empty_marker = false;
    while (fields >> tok) {
      if (tok == "∅") {
        empty_marker = true;
        continue;
      }
      int id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        bad("invalid item id \"" + tok + "\" in transaction file");
      }
      items.push_back(id);
      if (n_events_override == 0 && id > data.n_events) data.n_events = id;
    }
    if (empty_marker && !items.empty()) {
      bad("a transaction cannot mix ∅ with item ids");
    }
    data.transactions.push_back(std::move(items));
  }
  return data;
}

IntVectorDataset int_vectors_from_csv(std::istream& in) {
  IntVectorDataset data;
  data.dim = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<long long> v;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        long long c = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(c);
      } catch (const std::exception&) {
        bad("invalid coordinate \"" + tok + "\" in vector file");
      }
    }
    if (data.dim == 0) data.dim = static_cast<int>(v.size());
    data.points.push_back(std::move(v));
  }
  return data;
}

ClusteredDataset clusters_from_files(std::istream& points_csv,
                                     const json& meta) {
  ClusteredDataset data;
  std::string line;
  while (std::getline(points_csv, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> v;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        double c = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(c);
      } catch (const std::exception&) {
        bad("invalid coordinate \"" + tok + "\" in points file");
      }
    }
    data.points.push_back(std::move(v));
  }

  const json& asg = need(meta, "assignments", "cluster metadata");
  if (!asg.is_array()) bad("\"assignments\" must be an array");
  for (const auto& e : asg) {
    data.assignments.push_back(need_string(e, "cluster assignment"));
  }

  const json& reps = need(meta, "representatives", "cluster metadata");
  if (!reps.is_object()) {
    bad("\"representatives\" must map cluster ids to points");
  }
  for (const auto& [id, point] : reps.items()) {
    if (!point.is_array()) bad("representative of \"" + id + "\" must be an array");
    std::vector<double> v;
    for (const auto& c : point) v.push_back(need_number(c, "representative"));
    data.representatives[id] = std::move(v);
  }

  if (meta.contains("bottom") && !meta.at("bottom").is_null()) {
    const json& b = meta.at("bottom");
    if (!b.is_array()) bad("\"bottom\" must be an array");
    std::vector<double> v;
    for (const auto& c : b) v.push_back(need_number(c, "bottom point"));
    data.bottom = std::move(v);
  }
  return data;
}

}  // namespace infodecomp::cli
