#include "infodecomp/structure_learning.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "infodecomp/detail/bitset.hpp"

namespace infodecomp {

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || sigma > 1.0 || !std::isfinite(sigma)) {
    raise(errc::invalid_argument,
          "threshold must lie in (0, 1], got " + std::to_string(sigma));
  }
}

// Shared tail of the three learners.  Inputs are in a caller-chosen
// deterministic order with the bottom first; `below` holds the strict
// order over those input indices.  Builds the cover relation by
// transitive reduction, converts the exact counts to masses, and applies
// the positivity repair where a count is zero.
LearnedModel assemble(const std::vector<std::string>& labels,
                      std::vector<long long> numerators, long long n_samples,
                      double sigma,
                      const std::vector<detail::Bitset>& below) {
  const std::size_t n = labels.size();

  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    // Maximal elements of below[i] cover i: drop anything below another
    // member of below[i].
    detail::Bitset implied(n);
    below[i].for_each([&](std::size_t z) { implied |= below[z]; });
    below[i].for_each([&](std::size_t j) {
      if (!implied.test(j)) covers.emplace_back(labels[j], labels[i]);
    });
  }

  PosetPtr poset = build_poset(labels, covers);

  std::vector<long long> canonical(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    canonical[static_cast<std::size_t>(poset->index_of(labels[i]))] =
        numerators[i];
  }

  long long denominator = n_samples;
  std::vector<std::string> repaired;
  bool needs_repair = false;
  for (long long v : canonical) {
    if (v < 0) {
      raise(errc::threshold_too_low, "retained mass exceeds the sample count");
    }
    if (v == 0) needs_repair = true;
  }
  if (needs_repair) {
    long long zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (canonical[i] == 0) {
        canonical[i] = 1;
        ++zeros;
        repaired.push_back(poset->label(static_cast<int>(i)));
      } else {
        canonical[i] *= 10;
      }
    }
    denominator = 10 * n_samples + zeros;
  }

  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] = static_cast<double>(canonical[i]) / static_cast<double>(denominator);
  }
  Distribution phat(poset, std::move(mass));

  return LearnedModel{std::move(poset), std::move(phat),        sigma,
                      n_samples,        std::move(canonical),   denominator,
                      std::move(repaired)};
}

}  // namespace

std::string itemset_label(const std::vector<int>& items) {
  if (items.empty()) return "⊥";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(items[i]);
  }
  return out;
}

std::string int_vector_label(const std::vector<long long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string point_label(const std::vector<double>& v) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v[i]);
    out.append(buf, end);
  }
  return out;
}

LearnedModel learn_from_transactions(const TransactionDataset& data,
                                     double sigma) {
  check_sigma(sigma);
  if (data.transactions.empty()) {
    raise(errc::invalid_argument, "dataset has no transactions");
  }
  if (data.n_events < 1) {
    raise(errc::invalid_argument, "event count must be positive");
  }
  const long long n_samples = static_cast<long long>(data.transactions.size());

  std::map<std::vector<int>, long long> counts;
  for (const auto& raw : data.transactions) {
    std::vector<int> items = raw;
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    for (int id : items) {
      if (id < 1 || id > data.n_events) {
        raise(errc::invalid_argument,
              "item id " + std::to_string(id) + " outside [1, " +
                  std::to_string(data.n_events) + "]");
      }
    }
    ++counts[std::move(items)];
  }

  // Retention is decided on frequencies, both sides rounded the same way.
  std::vector<std::pair<std::vector<int>, long long>> retained;
  for (const auto& [items, count] : counts) {
    if (items.empty()) continue;
    double freq = static_cast<double>(count) / static_cast<double>(n_samples);
    if (freq >= sigma) retained.emplace_back(items, count);
  }
  if (retained.empty()) {
    // A dataset of nothing but empty transactions is honestly described
    // by the one-element model; anything else lost real data.
    auto bottom_hits = counts.find(std::vector<int>{});
    if (bottom_hits != counts.end() && bottom_hits->second == n_samples) {
      return assemble({itemset_label({})}, {n_samples}, n_samples, sigma,
                      {detail::Bitset(1)});
    }
    raise(errc::empty_model, "no itemset reaches frequency " +
                                 std::to_string(sigma));
  }
  std::sort(retained.begin(), retained.end(),
            [](const auto& a, const auto& b) {
              if (a.first.size() != b.first.size())
                return a.first.size() < b.first.size();
              return a.first < b.first;
            });

  std::vector<std::string> labels{itemset_label({})};
  long long retained_total = 0;
  for (const auto& [items, count] : retained) {
    labels.push_back(itemset_label(items));
    retained_total += count;
  }
  std::vector<long long> numerators{n_samples - retained_total};
  for (const auto& [items, count] : retained) numerators.push_back(count);

  const std::size_t n = labels.size();
  std::vector<detail::Bitset> member(n, detail::Bitset(
                                            static_cast<std::size_t>(data.n_events)));
  for (std::size_t i = 1; i < n; ++i) {
    for (int id : retained[i - 1].first) {
      member[i].set(static_cast<std::size_t>(id - 1));
    }
  }
  std::vector<detail::Bitset> below(n, detail::Bitset(n));
  for (std::size_t i = 1; i < n; ++i) {
    below[i].set(0);
    for (std::size_t j = 1; j < n; ++j) {
      if (j != i && member[j].is_subset_of(member[i])) below[i].set(j);
    }
  }

  return assemble(labels, std::move(numerators), n_samples, sigma, below);
}

LearnedModel learn_from_int_vectors(const IntVectorDataset& data,
                                    double sigma) {
  check_sigma(sigma);
  if (data.points.empty()) {
    raise(errc::invalid_argument, "dataset has no points");
  }
  if (data.dim < 1) {
    raise(errc::invalid_argument, "dimension must be positive");
  }
  const long long n_samples = static_cast<long long>(data.points.size());

  std::map<std::vector<long long>, long long> counts;
  for (const auto& v : data.points) {
    if (static_cast<int>(v.size()) != data.dim) {
      raise(errc::invalid_argument,
            "point of dimension " + std::to_string(v.size()) + ", expected " +
                std::to_string(data.dim));
    }
    for (long long c : v) {
      if (c < 0) {
        raise(errc::invalid_argument, "coordinates must be nonnegative");
      }
    }
    ++counts[v];
  }

  const std::vector<long long> zero(static_cast<std::size_t>(data.dim), 0);
  std::vector<std::pair<std::vector<long long>, long long>> retained;
  for (const auto& [v, count] : counts) {
    if (v == zero) continue;
    double freq = static_cast<double>(count) / static_cast<double>(n_samples);
    if (freq >= sigma) retained.emplace_back(v, count);
  }
  if (retained.empty()) {
    auto bottom_hits = counts.find(zero);
    if (bottom_hits != counts.end() && bottom_hits->second == n_samples) {
      return assemble({int_vector_label(zero)}, {n_samples}, n_samples, sigma,
                      {detail::Bitset(1)});
    }
    raise(errc::empty_model,
          "no vector reaches frequency " + std::to_string(sigma));
  }
  std::sort(retained.begin(), retained.end(),
            [](const auto& a, const auto& b) {
              long long sa = std::accumulate(a.first.begin(), a.first.end(), 0LL);
              long long sb = std::accumulate(b.first.begin(), b.first.end(), 0LL);
              if (sa != sb) return sa < sb;
              return a.first < b.first;
            });

  std::vector<std::string> labels{int_vector_label(zero)};
  long long retained_total = 0;
  for (const auto& [v, count] : retained) {
    labels.push_back(int_vector_label(v));
    retained_total += count;
  }
  std::vector<long long> numerators{n_samples - retained_total};
  for (const auto& [v, count] : retained) numerators.push_back(count);

  const std::size_t n = labels.size();
  auto dominates = [](const std::vector<long long>& hi,
                      const std::vector<long long>& lo) {
    for (std::size_t k = 0; k < hi.size(); ++k) {
      if (lo[k] > hi[k]) return false;
    }
    return true;
  };
  std::vector<detail::Bitset> below(n, detail::Bitset(n));
  for (std::size_t i = 1; i < n; ++i) {
    below[i].set(0);
    for (std::size_t j = 1; j < n; ++j) {
      if (j != i && dominates(retained[i - 1].first, retained[j - 1].first)) {
        below[i].set(j);
      }
    }
  }

  return assemble(labels, std::move(numerators), n_samples, sigma, below);
}

LearnedModel learn_from_clusters(const ClusteredDataset& data, double sigma) {
  check_sigma(sigma);
  const long long n_samples = static_cast<long long>(data.points.size());
  if (n_samples == 0) {
    raise(errc::invalid_argument, "dataset has no points");
  }
  if (data.assignments.size() != data.points.size()) {
    raise(errc::invalid_argument,
          "expected one assignment per point, got " +
              std::to_string(data.assignments.size()) + " for " +
              std::to_string(data.points.size()) + " points");
  }

  std::map<std::string, long long> sizes;
  for (const auto& id : data.assignments) ++sizes[id];

  std::size_t dim = 0;
  bool have_dim = false;
  auto check_dim = [&](const std::vector<double>& v, const std::string& what) {
    if (!have_dim) {
      dim = v.size();
      have_dim = true;
    } else if (v.size() != dim) {
      raise(errc::invalid_argument,
            what + " has dimension " + std::to_string(v.size()) +
                ", expected " + std::to_string(dim));
    }
  };
  for (const auto& [id, rep] : data.representatives) {
    check_dim(rep, "representative of cluster '" + id + "'");
  }
  if (data.bottom) check_dim(*data.bottom, "designated bottom");

  for (const auto& [id, count] : sizes) {
    if (!data.representatives.count(id)) {
      raise(errc::invalid_argument,
            "cluster '" + id + "' has no representative");
    }
  }

  std::vector<std::pair<std::vector<double>, long long>> retained;
  for (const auto& [id, count] : sizes) {
    double freq = static_cast<double>(count) / static_cast<double>(n_samples);
    if (freq >= sigma) {
      retained.emplace_back(data.representatives.at(id), count);
    }
  }
  if (retained.empty()) {
    raise(errc::empty_model,
          "no cluster reaches frequency " + std::to_string(sigma));
  }
  for (std::size_t i = 0; i < retained.size(); ++i) {
    for (std::size_t j = i + 1; j < retained.size(); ++j) {
      if (retained[i].first == retained[j].first) {
        raise(errc::invalid_argument,
              "two clusters share the representative " +
                  point_label(retained[i].first));
      }
    }
  }

  auto dominates = [](const std::vector<double>& hi,
                      const std::vector<double>& lo) {
    for (std::size_t k = 0; k < hi.size(); ++k) {
      if (lo[k] > hi[k]) return false;
    }
    return true;
  };

  std::vector<double> bottom_vec;
  if (data.bottom) {
    bottom_vec = *data.bottom;
    for (const auto& [rep, count] : retained) {
      if (!dominates(rep, bottom_vec)) {
        raise(errc::no_bottom, "designated bottom is not below representative " +
                                   point_label(rep));
      }
    }
  } else {
    int found = -1;
    for (std::size_t i = 0; i < retained.size(); ++i) {
      bool below_all = true;
      for (std::size_t j = 0; j < retained.size(); ++j) {
        if (!dominates(retained[j].first, retained[i].first)) {
          below_all = false;
          break;
        }
      }
      if (below_all) {
        found = static_cast<int>(i);
        break;
      }
    }
    if (found < 0) {
      raise(errc::no_bottom,
            "no representative lies below all others and no bottom was supplied");
    }
    bottom_vec = retained[static_cast<std::size_t>(found)].first;
  }

  // A retained representative equal to the bottom vector is the bottom.
  long long bottom_hits = 0;
  std::erase_if(retained, [&](const auto& entry) {
    if (entry.first == bottom_vec) {
      bottom_hits = entry.second;
      return true;
    }
    return false;
  });
  if (retained.empty()) {
    if (bottom_hits == n_samples) {
      return assemble({point_label(bottom_vec)}, {n_samples}, n_samples,
                      sigma, {detail::Bitset(1)});
    }
    raise(errc::empty_model, "only the bottom cluster reaches the threshold");
  }
  std::sort(retained.begin(), retained.end(),
            [](const auto& a, const auto& b) {
              double sa = std::accumulate(a.first.begin(), a.first.end(), 0.0);
              double sb = std::accumulate(b.first.begin(), b.first.end(), 0.0);
              if (sa != sb) return sa < sb;
              return a.first < b.first;
            });

  std::vector<std::string> labels{point_label(bottom_vec)};
  long long retained_total = 0;
  for (const auto& [rep, count] : retained) {
    labels.push_back(point_label(rep));
    retained_total += count;
  }
  std::vector<long long> numerators{n_samples - retained_total};
  for (const auto& [rep, count] : retained) numerators.push_back(count);

  const std::size_t n = labels.size();
  std::vector<detail::Bitset> below(n, detail::Bitset(n));
  for (std::size_t i = 1; i < n; ++i) {
    below[i].set(0);
    for (std::size_t j = 1; j < n; ++j) {
      if (j != i &&
          dominates(retained[i - 1].first, retained[j - 1].first)) {
        below[i].set(j);
      }
    }
  }

  return assemble(labels, std::move(numerators), n_samples, sigma, below);
}

}  // namespace infodecomp
