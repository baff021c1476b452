#include "infodecomp/mutual_information.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "infodecomp/detail/kahan.hpp"

namespace infodecomp {

namespace {
constexpr double kTableTol = 1e-12;

void check_y(const JointTable& table, int y) {
  if (y < 0 || y >= static_cast<int>(table.joint.size())) {
    raise(errc::invalid_argument,
          "outcome index " + std::to_string(y) + " out of range [0, " +
              std::to_string(table.joint.size()) + ")");
  }
}
}  // namespace

JointTable make_joint_table(PosetPtr poset, std::vector<std::string> y_labels,
                            std::vector<std::vector<double>> joint,
                            std::optional<double> smoothing) {
  if (!poset) {
    raise(errc::invalid_argument, "joint table needs a poset");
  }
  if (y_labels.empty() || joint.size() != y_labels.size()) {
    raise(errc::invalid_argument,
          "expected one row per outcome label, got " +
              std::to_string(joint.size()) + " rows for " +
              std::to_string(y_labels.size()) + " labels");
  }
  if (smoothing && !(*smoothing > 0.0)) {
    raise(errc::invalid_argument, "smoothing mass must be positive");
  }
  const std::size_t n = static_cast<std::size_t>(poset->size());
  double total = 0.0;
  for (std::size_t y = 0; y < joint.size(); ++y) {
    if (joint[y].size() != n) {
      raise(errc::invalid_argument,
            "row " + std::to_string(y) + " has " +
                std::to_string(joint[y].size()) + " cells, poset has " +
                std::to_string(n) + " elements");
    }
    for (std::size_t x = 0; x < n; ++x) {
      double v = joint[y][x];
      if (!std::isfinite(v) || v < 0.0 || (!smoothing && v == 0.0)) {
        raise(errc::non_positive_probability,
              "cell (" + y_labels[y] + ", '" +
                  poset->label(static_cast<int>(x)) + "') is " +
                  std::to_string(v));
      }
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kTableTol) {
    raise(errc::not_normalized,
          "table sums to " + std::to_string(total) + ", expected 1");
  }
  if (smoothing) {
    double mass = *smoothing;
    double scale = 1.0 + mass * static_cast<double>(joint.size()) *
                             static_cast<double>(n);
    for (auto& row : joint) {
      for (double& v : row) v = (v + mass) / scale;
    }
  }
  return JointTable{std::move(poset), std::move(y_labels), std::move(joint)};
}

std::vector<double> y_marginal(const JointTable& table) {
  std::vector<double> out;
  out.reserve(table.joint.size());
  for (const auto& row : table.joint) {
    detail::Kahan acc;
    for (double v : row) acc.add(v);
    out.push_back(acc.value());
  }
  return out;
}

Distribution x_marginal(const JointTable& table) {
  const std::size_t n = static_cast<std::size_t>(table.poset->size());
  std::vector<double> mass(n, 0.0);
  for (const auto& row : table.joint) {
    for (std::size_t x = 0; x < n; ++x) mass[x] += row[x];
  }
  double total = 0.0;
  for (double v : mass) total += v;
  for (double& v : mass) v /= total;
  return Distribution(table.poset, std::move(mass));
}

Distribution conditional(const JointTable& table, int y) {
  check_y(table, y);
  const auto& row = table.joint[static_cast<std::size_t>(y)];
  detail::Kahan acc;
  for (double v : row) acc.add(v);
  double py = acc.value();
  std::vector<double> mass(row.size());
  for (std::size_t x = 0; x < row.size(); ++x) mass[x] = row[x] / py;
  return Distribution(table.poset, std::move(mass));
}

Distribution mixed_conditional(const JointTable& table, int y,
                               const std::vector<int>& targets,
                               const SolverConfig& config) {
  return mix(conditional(table, y), x_marginal(table), targets, config).r;
}

double mutual_information(const JointTable& table) {
  const Distribution marginal = x_marginal(table);
  const std::vector<double> py = y_marginal(table);
  detail::Kahan acc;
  for (std::size_t y = 0; y < table.joint.size(); ++y) {
    acc.add(py[y] *
            kl_divergence(conditional(table, static_cast<int>(y)), marginal));
  }
  return acc.value();
}

RefinedMI refined_mutual_information(const JointTable& table,
                                     const std::vector<int>& coarse,
                                     const std::vector<int>& fine,
                                     const SolverConfig& config) {
  std::vector<int> lo = coarse;
  std::vector<int> hi = fine;
  std::sort(lo.begin(), lo.end());
  lo.erase(std::unique(lo.begin(), lo.end()), lo.end());
  std::sort(hi.begin(), hi.end());
  hi.erase(std::unique(hi.begin(), hi.end()), hi.end());
  if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end())) {
    raise(errc::invalid_argument,
          "refinement needs nested target sets (coarse inside fine)");
  }

  const Distribution marginal = x_marginal(table);
  const std::vector<double> py = y_marginal(table);
  RefinedMI out;
  detail::Kahan acc;
  for (std::size_t y = 0; y < table.joint.size(); ++y) {
    const Distribution cond = conditional(table, static_cast<int>(y));
    MixResult at_lo = mix(cond, marginal, lo, config);
    MixResult at_hi = mix(cond, marginal, hi, config);
    acc.add(py[y] * kl_divergence(at_lo.r, at_hi.r));
    out.stats.outer_iterations += at_lo.stats.outer_iterations + at_hi.stats.outer_iterations;
    out.stats.final_theta_residual =
        std::max({out.stats.final_theta_residual,
                  at_lo.stats.final_theta_residual,
                  at_hi.stats.final_theta_residual});
    out.stats.final_eta_residual = std::max({out.stats.final_eta_residual,
                                             at_lo.stats.final_eta_residual,
                                             at_hi.stats.final_eta_residual});
    for (const auto& [element, count] : at_lo.stats.per_target_iterations) {
      out.stats.per_target_iterations[element] += count;
    }
    for (const auto& [element, count] : at_hi.stats.per_target_iterations) {
      out.stats.per_target_iterations[element] += count;
    }
  }
  out.value = acc.value();
  return out;
}

MIChainDecomposition mi_chain_decompose(
    const JointTable& table, const std::vector<std::vector<int>>& chain,
    const SolverConfig& config) {
  std::vector<std::vector<int>> levels = normalize_chain(*table.poset, chain);

  MIChainDecomposition out;
  out.direct_mi = mutual_information(table);
  detail::Kahan total;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    RefinedMI term =
        refined_mutual_information(table, levels[k], levels[k + 1], config);
    out.terms.push_back(term.value);
    total.add(term.value);
    out.stats.outer_iterations += term.stats.outer_iterations;
    out.stats.final_theta_residual = std::max(out.stats.final_theta_residual,
                                              term.stats.final_theta_residual);
    out.stats.final_eta_residual = std::max(out.stats.final_eta_residual,
                                            term.stats.final_eta_residual);
    for (const auto& [element, count] : term.stats.per_target_iterations) {
      out.stats.per_target_iterations[element] += count;
    }
  }
  out.total = total.value();
  return out;
}

}  // namespace infodecomp
