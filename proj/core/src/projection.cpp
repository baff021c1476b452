#include "infodecomp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace infodecomp {

namespace {

constexpr double kResidualFloor = 1e-11;
constexpr double kIntervalCollapse = 1e-13;
constexpr int kMaxHalvings = 200;

double inner_tolerance(const SolverConfig& config) {
  return std::min(kResidualFloor, config.theta_tol * 1e-2);
}

void raw_theta(const Poset& poset, const std::vector<double>& mass,
               std::vector<double>& theta) {
  const int n = poset.size();
  theta.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    double below = 0.0;
    poset.down_bits(x).for_each([&](std::size_t s) {
      if (static_cast<int>(s) != x) below += theta[s];
    });
    theta[static_cast<std::size_t>(x)] = std::log(mass[static_cast<std::size_t>(x)]) - below;
  }
}

// Single-target solve.  Holding every eta coordinate off x* fixed pins the
// masses outside the down-set of x* and makes each mass inside it an affine
// function of t = r(x*):
//
//   r(s) = work(s) + sum over w in the down-set with w > s of (work(w) - r(w))
//
// evaluated from the target downward.  The remaining constraint
// theta_r(x*) = goal is solved for t by bisection inside the open interval
// where all masses stay positive.
class SingleTargetSolver {
 public:
  SingleTargetSolver(const Poset& poset, std::vector<int> sub)
      : poset_(poset), sub_(std::move(sub)), m_(sub_.size()) {}

  // Refines work in place; returns bisection iterations spent.
  long long solve(std::vector<double>& work, double goal,
                  const SolverConfig& config) {
    goal_ = goal;
    prepare(work);

    const double inner_tol = inner_tolerance(config);
    const double width = t_hi_ - t_lo_;
    const double margin = width * 1e-15;

    auto clamp_interior = [&](double t) {
      return std::min(std::max(t, t_lo_ + margin), t_hi_ - margin);
    };

    double t0 = clamp_interior(work[static_cast<std::size_t>(sub_.back())]);
    double g0 = eval(t0);
    {
      // A probe can land on a ulp-infeasible point at the very edge of the
      // interval; pull it toward the center until it evaluates.
      double center = 0.5 * (t_lo_ + t_hi_);
      int guard = 0;
      while (std::isnan(g0) && guard++ < kMaxHalvings) {
        t0 = 0.5 * (t0 + center);
        g0 = eval(t0);
      }
      if (std::isnan(g0)) {
        raise(errc::no_feasible_bracket,
              "no evaluable point for target '" + poset_.label(sub_.back()) + "'");
      }
    }

    if (std::abs(g0) <= inner_tol) {
      adopt(work, t0);
      return 0;
    }

    // Walk toward the boundary the root must lie against (theta of the
    // target grows with its own mass, so positive g means the root is at
    // smaller t) until the sign flips.
    double boundary = g0 > 0.0 ? t_lo_ : t_hi_;
    double lo = 0.0, hi = 0.0, g_lo = 0.0, g_hi = 0.0;
    bool bracketed = false;
    double u = t0;
    for (int k = 0; k < kMaxHalvings && !bracketed; ++k) {
      double next = 0.5 * (u + boundary);
      if (next == u) break;
      double gn = eval(next);
      if (std::isnan(gn)) {
        u = next;
        continue;
      }
      if (std::abs(gn) <= inner_tol) {
        adopt(work, next);
        return k + 1;
      }
      if ((gn > 0.0) != (g0 > 0.0)) {
        lo = std::min(next, t0);
        hi = std::max(next, t0);
        g_lo = next < t0 ? gn : g0;
        g_hi = next < t0 ? g0 : gn;
        bracketed = true;
      } else {
        u = next;
      }
    }

    long long iterations = 0;
    if (!bracketed) {
      // Exhaustive fallback: scan the feasible interval for a sign change.
      double prev_t = std::numeric_limits<double>::quiet_NaN();
      double prev_g = std::numeric_limits<double>::quiet_NaN();
      const int grid = std::max(config.bracket_grid, 2);
      for (int i = 1; i < grid && !bracketed; ++i) {
        double t = t_lo_ + width * static_cast<double>(i) / grid;
        double g = eval(t);
        if (std::isnan(g)) continue;
        if (std::abs(g) <= inner_tol) {
          adopt(work, t);
          return iterations;
        }
        if (!std::isnan(prev_g) && (g > 0.0) != (prev_g > 0.0)) {
          lo = prev_t;
          hi = t;
          g_lo = prev_g;
          g_hi = g;
          bracketed = true;
        }
        prev_t = t;
        prev_g = g;
      }
      if (!bracketed) {
        raise(errc::no_feasible_bracket,
              "no sign change for target '" + poset_.label(sub_.back()) +
                  "' in (" + std::to_string(t_lo_) + ", " +
                  std::to_string(t_hi_) + ")");
      }
    }

    double best_t = std::abs(g_lo) < std::abs(g_hi) ? lo : hi;
    double best_g = std::abs(g_lo) < std::abs(g_hi) ? g_lo : g_hi;
    while (iterations < config.max_bisect) {
      ++iterations;
      double mid = 0.5 * (lo + hi);
      double gm = eval(mid);
      if (std::abs(gm) < std::abs(best_g)) {
        best_t = mid;
        best_g = gm;
      }
      if (std::abs(gm) <= inner_tol) {
        adopt(work, mid);
        return iterations;
      }
      if ((gm > 0.0) == (g_lo > 0.0)) {
        lo = mid;
        g_lo = gm;
      } else {
        hi = mid;
        g_hi = gm;
      }
      if (hi - lo <= kIntervalCollapse * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        adopt(work, best_t);
        return iterations;
      }
    }
    raise(errc::max_iterations,
          "bisection budget exhausted for target '" + poset_.label(sub_.back()) +
              "', residual " + std::to_string(best_g));
  }

 private:
  // Back-substitution at t = 0 and t = 1 yields the affine coefficients and
  // from them the open interval of t keeping every mass positive.
  void prepare(const std::vector<double>& work) {
    alpha_.assign(m_, 0.0);
    beta_.assign(m_, 0.0);
    back_substitute(work, 0.0, alpha_);
    back_substitute(work, 1.0, beta_);
    for (std::size_t j = 0; j < m_; ++j) beta_[j] -= alpha_[j];

    t_lo_ = 0.0;
    t_hi_ = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < m_; ++j) {
      if (beta_[j] > 0.0) {
        t_lo_ = std::max(t_lo_, -alpha_[j] / beta_[j]);
      } else if (beta_[j] < 0.0) {
        t_hi_ = std::min(t_hi_, -alpha_[j] / beta_[j]);
      } else if (alpha_[j] <= 0.0) {
        t_lo_ = 1.0;
        t_hi_ = 0.0;
      }
    }
    if (!(t_lo_ < t_hi_) || !std::isfinite(t_hi_)) {
      raise(errc::no_feasible_bracket,
            "no positive-mass interval for target '" +
                poset_.label(sub_.back()) + "'");
    }
  }

  void back_substitute(const std::vector<double>& work, double t,
                       std::vector<double>& out) const {
    out[m_ - 1] = t;
    for (std::size_t j = m_ - 1; j-- > 0;) {
      double diff = 0.0;
      for (std::size_t k = j + 1; k < m_; ++k) {
        if (poset_.leq(sub_[j], sub_[k])) {
          diff += work[static_cast<std::size_t>(sub_[k])] - out[k];
        }
      }
      out[j] = work[static_cast<std::size_t>(sub_[j])] + diff;
    }
  }

  // g(t) = theta_r(x*) - goal, NaN when t leaves the feasible region.
  double eval(double t) {
    r_.resize(m_);
    th_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      r_[j] = alpha_[j] + beta_[j] * t;
      if (!(r_[j] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    }
    for (std::size_t j = 0; j < m_; ++j) {
      double below = 0.0;
      for (std::size_t k = 0; k < j; ++k) {
        if (poset_.leq(sub_[k], sub_[j])) below += th_[k];
      }
      th_[j] = std::log(r_[j]) - below;
    }
    return th_[m_ - 1] - goal_;
  }

  void adopt(std::vector<double>& work, double t) const {
    for (std::size_t j = 0; j < m_; ++j) {
      double v = alpha_[j] + beta_[j] * t;
      if (!(v > 0.0)) {
        raise(errc::no_convergence,
              "adopted solution lost positivity at '" +
                  poset_.label(sub_[j]) + "'");
      }
      work[static_cast<std::size_t>(sub_[j])] = v;
    }
  }

  const Poset& poset_;
  std::vector<int> sub_;
  std::size_t m_;
  double goal_ = 0.0;
  std::vector<double> alpha_, beta_, r_, th_;
  double t_lo_ = 0.0, t_hi_ = 0.0;
};

std::vector<int> checked_targets(const Poset& poset,
                                 const std::vector<int>& targets) {
  std::vector<char> seen(static_cast<std::size_t>(poset.size()), 0);
  std::vector<int> out;
  out.reserve(targets.size());
  for (int x : targets) {
    if (!poset.contains(x)) {
      raise(errc::unknown_element,
            "target index " + std::to_string(x) + " out of range");
    }
    if (x == poset.bottom()) {
      raise(errc::invalid_argument, "the bottom element cannot be a target");
    }
    if (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

MixResult mix(const Distribution& p, const Distribution& q,
              const std::vector<int>& targets, const SolverConfig& config) {
  require_same_poset(p, q);
  const Poset& poset = *p.poset();
  const int n = poset.size();
  std::vector<int> I = checked_targets(poset, targets);

  if (I.empty()) {
    return {p, SolverStats{}};
  }
  if (static_cast<int>(I.size()) == n - 1) {
    return {Distribution(p.poset(), q.values()), SolverStats{}};
  }

  const ThetaCoords theta_q = theta_from_p(q);

  std::vector<double> work = p.values();
  std::vector<SingleTargetSolver> solvers;
  solvers.reserve(I.size());
  for (int x : I) solvers.emplace_back(poset, poset.down_set(x));

  SolverStats stats;
  std::vector<double> th;
  double residual = 0.0;
  for (;;) {
    raw_theta(poset, work, th);
    residual = 0.0;
    for (int x : I) {
      residual = std::max(residual,
                          std::abs(th[static_cast<std::size_t>(x)] -
                                   theta_q.values[static_cast<std::size_t>(x)]));
    }
    if (residual <= config.theta_tol) break;
    if (stats.outer_iterations >= config.max_outer) {
      raise(errc::max_outer_iterations,
            "theta residual " + std::to_string(residual) + " after " +
                std::to_string(stats.outer_iterations) + " sweeps");
    }
    for (std::size_t i = 0; i < I.size(); ++i) {
      long long used = solvers[i].solve(
          work, theta_q.values[static_cast<std::size_t>(I[i])], config);
      stats.per_target_iterations[I[i]] += used;
    }
    ++stats.outer_iterations;
    if (config.sweep_observer) config.sweep_observer(work);
  }
  stats.final_theta_residual = residual;

  double total = 0.0;
  for (double v : work) total += v;
  for (double& v : work) v /= total;

  // The sweeps touch eta coordinates only at the targets; verify the rest
  // survived within tolerance.
  const EtaCoords eta_p = eta_from_p(p);
  std::vector<char> in_I(static_cast<std::size_t>(n), 0);
  for (int x : I) in_I[static_cast<std::size_t>(x)] = 1;
  double eta_residual = 0.0;
  for (int s = 1; s < n; ++s) {
    if (in_I[static_cast<std::size_t>(s)]) continue;
    double above = 0.0;
    poset.up_bits(s).for_each([&](std::size_t x) { above += work[x]; });
    eta_residual = std::max(
        eta_residual, std::abs(above - eta_p.values[static_cast<std::size_t>(s)]));
  }
  stats.final_eta_residual = eta_residual;
  if (eta_residual > config.eta_tol) {
    raise(errc::no_convergence,
          "eta coordinates drifted by " + std::to_string(eta_residual));
  }

  return {Distribution(p.poset(), std::move(work)), stats};
}

MixResult mix_singleton(const Distribution& p, const Distribution& q,
                        int xstar, const SolverConfig& config) {
  return mix(p, q, std::vector<int>{xstar}, config);
}

MixResult e_project_knockdown(const Distribution& p,
                              const std::vector<int>& targets,
                              const SolverConfig& config) {
  return mix(p, uniform_distribution(p.poset()), targets, config);
}

}  // namespace infodecomp
