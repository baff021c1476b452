#include "infodecomp/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "infodecomp/detail/kahan.hpp"

namespace infodecomp {

namespace {

void merge_stats(SolverStats& into, const SolverStats& from) {
  into.outer_iterations += from.outer_iterations;
  into.final_theta_residual =
      std::max(into.final_theta_residual, from.final_theta_residual);
  into.final_eta_residual =
      std::max(into.final_eta_residual, from.final_eta_residual);
  for (const auto& [element, count] : from.per_target_iterations) {
    into.per_target_iterations[element] += count;
  }
}

std::vector<int> up_targets(const Poset& poset, int x) {
  std::vector<int> targets = poset.up_set(x);
  std::erase(targets, poset.bottom());
  return targets;
}

}  // namespace

double kl_divergence(const Distribution& p, const Distribution& q) {
  require_same_poset(p, q);
  detail::Kahan acc;
  for (int x = 0; x < p.size(); ++x) {
    acc.add(p[x] * std::log(p[x] / q[x]));
  }
  return acc.value();
}

double entropy(const Distribution& p) {
  detail::Kahan acc;
  for (int x = 0; x < p.size(); ++x) {
    acc.add(-p[x] * std::log(p[x]));
  }
  return acc.value();
}

PythagorasSplit pythagoras_split(const Distribution& p, const Distribution& q,
                                 const std::vector<int>& targets,
                                 const SolverConfig& config) {
  MixResult mixed = mix(p, q, targets, config);
  PythagorasSplit split{std::move(mixed.r), 0.0, 0.0, 0.0, std::move(mixed.stats)};
  split.kl_p_r = kl_divergence(p, split.r);
  split.kl_r_q = kl_divergence(split.r, q);
  split.kl_p_q = kl_divergence(p, q);
  return split;
}

std::vector<std::vector<int>> normalize_chain(
    const Poset& poset, const std::vector<std::vector<int>>& chain) {
  if (chain.size() < 2) {
    raise(errc::not_a_chain, "chain needs at least two levels");
  }
  std::vector<std::vector<int>> levels;
  levels.reserve(chain.size());
  for (const auto& raw : chain) {
    std::vector<int> level = raw;
    for (int x : level) {
      if (!poset.contains(x)) {
        raise(errc::not_a_chain,
              "chain level names element index " + std::to_string(x) +
                  " outside the poset");
      }
      if (x == poset.bottom()) {
        raise(errc::not_a_chain, "chain levels cannot contain the bottom");
      }
    }
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    levels.push_back(std::move(level));
  }
  if (!levels.front().empty()) {
    raise(errc::not_a_chain, "chain must start with the empty set");
  }
  if (static_cast<int>(levels.back().size()) != poset.size() - 1) {
    raise(errc::not_a_chain, "chain must end with every non-bottom element");
  }
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    if (!std::includes(levels[k + 1].begin(), levels[k + 1].end(),
                       levels[k].begin(), levels[k].end())) {
      raise(errc::not_a_chain,
            "chain level " + std::to_string(k + 1) +
                " does not contain level " + std::to_string(k));
    }
    if (levels[k + 1].size() == levels[k].size()) {
      raise(errc::not_a_chain,
            "chain level " + std::to_string(k + 1) + " repeats level " +
                std::to_string(k));
    }
  }
  return levels;
}

ChainDecomposition chain_decompose(const Distribution& p,
                                   const Distribution& q,
                                   const std::vector<std::vector<int>>& chain,
                                   const SolverConfig& config) {
  require_same_poset(p, q);
  std::vector<std::vector<int>> levels = normalize_chain(*p.poset(), chain);

  ChainDecomposition out;
  out.direct = kl_divergence(p, q);
  const Distribution* prev = &p;
  detail::Kahan total;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    MixResult step = mix(p, q, levels[k], config);
    double term = kl_divergence(*prev, step.r);
    out.terms.push_back(term);
    total.add(term);
    merge_stats(out.stats, step.stats);
    if (k + 1 < levels.size()) {
      out.mixtures.push_back(std::move(step.r));
      prev = &out.mixtures.back();
    }
  }
  out.total = total.value();
  return out;
}

GainResult information_gain(const Distribution& p,
                            const std::vector<int>& targets,
                            const SolverConfig& config) {
  MixResult mixed = e_project_knockdown(p, targets, config);
  GainResult out{0.0, std::move(mixed.r), std::move(mixed.stats)};
  out.gain = kl_divergence(p, out.r);
  return out;
}

EntropySplit entropy_split(const Distribution& p,
                           const std::vector<int>& targets,
                           const SolverConfig& config) {
  MixResult mixed = e_project_knockdown(p, targets, config);
  EntropySplit out{0.0, 0.0, 0.0, 0.0, std::move(mixed.r), std::move(mixed.stats)};
  out.entropy = entropy(p);
  out.log_cardinality = std::log(static_cast<double>(p.size()));
  out.kl_p_r = kl_divergence(p, out.r);
  out.kl_r_uniform = kl_divergence(out.r, uniform_distribution(p.poset()));
  return out;
}

std::vector<double> subvaluation(const Distribution& p,
                                 const SolverConfig& config) {
  const Poset& poset = *p.poset();
  const double log_card = std::log(static_cast<double>(poset.size()));
  std::vector<double> v(static_cast<std::size_t>(poset.size()));
  for (int x = 0; x < poset.size(); ++x) {
    MixResult knock = e_project_knockdown(p, up_targets(poset, x), config);
    v[static_cast<std::size_t>(x)] = log_card - kl_divergence(p, knock.r);
  }
  return v;
}

double poset_distance(const Distribution& p, int x, int y,
                      const SolverConfig& config) {
  const Poset& poset = *p.poset();
  std::optional<int> j = poset.join(x, y);
  if (!j) {
    raise(errc::join_does_not_exist,
          "'" + poset.label(x) + "' and '" + poset.label(y) +
              "' have no least upper bound");
  }
  Distribution r_join = e_project_knockdown(p, up_targets(poset, *j), config).r;
  Distribution r_x = e_project_knockdown(p, up_targets(poset, x), config).r;
  Distribution r_y = e_project_knockdown(p, up_targets(poset, y), config).r;
  return kl_divergence(r_join, r_x) + kl_divergence(r_join, r_y);
}

CoveringGraph weighted_covering_graph(const Distribution& p,
                                      const SolverConfig& config) {
  const Poset& poset = *p.poset();
  std::vector<Distribution> knock;
  knock.reserve(static_cast<std::size_t>(poset.size()));
  for (int x = 0; x < poset.size(); ++x) {
    knock.push_back(e_project_knockdown(p, up_targets(poset, x), config).r);
  }
  CoveringGraph graph = covering_graph(p.poset());
  graph.weights.reserve(graph.edges.size());
  for (const auto& [child, parent] : graph.edges) {
    graph.weights.push_back(kl_divergence(knock[static_cast<std::size_t>(parent)],
                                          knock[static_cast<std::size_t>(child)]));
  }
  return graph;
}

}  // namespace infodecomp
