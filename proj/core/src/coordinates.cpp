#include "infodecomp/coordinates.hpp"

#include <cmath>

namespace infodecomp {

namespace {

constexpr double kThetaSumTol = 1e-10;
constexpr double kEtaBottomTol = 1e-12;
constexpr int kOrthogonalityLimit = 6;

void check_coords(const PosetPtr& poset, const std::vector<double>& values,
                  const char* what) {
  if (!poset) {
    raise(errc::invalid_argument, std::string(what) + " coordinates need a poset");
  }
  if (static_cast<int>(values.size()) != poset->size()) {
    raise(errc::invalid_argument,
          std::string(what) + " coordinates have " +
              std::to_string(values.size()) + " entries, poset has " +
              std::to_string(poset->size()));
  }
}

// Depth-first accumulation over the strict down-set or up-set of x along
// cover edges.  The mark array (stamped with x) keeps shared descendants
// from being counted twice in non-lattice posets; one array is reused for
// all elements of a pass, giving the O(|down-set|)-per-element bound
// without clearing between elements.
class CoverWalker {
 public:
  explicit CoverWalker(const Poset& poset)
      : poset_(poset), mark_(static_cast<std::size_t>(poset.size()), -1) {}

  template <typename F>
  void strict_down(int x, F&& visit) {
    stack_.assign(poset_.cover_children(x).begin(),
                  poset_.cover_children(x).end());
    walk(x, visit, /*down=*/true);
  }

  template <typename F>
  void strict_up(int x, F&& visit) {
    stack_.assign(poset_.cover_parents(x).begin(),
                  poset_.cover_parents(x).end());
    walk(x, visit, /*down=*/false);
  }

 private:
  template <typename F>
  void walk(int x, F&& visit, bool down) {
    while (!stack_.empty()) {
      int s = stack_.back();
      stack_.pop_back();
      if (mark_[static_cast<std::size_t>(s)] == x) continue;
      mark_[static_cast<std::size_t>(s)] = x;
      visit(s);
      const std::vector<int>& next =
          down ? poset_.cover_children(s) : poset_.cover_parents(s);
      stack_.insert(stack_.end(), next.begin(), next.end());
    }
  }

  const Poset& poset_;
  std::vector<int> mark_;
  std::vector<int> stack_;
};

}  // namespace

ThetaCoords theta_from_p(const Distribution& p) {
  const Poset& poset = *p.poset();
  const int n = poset.size();
  std::vector<double> theta(static_cast<std::size_t>(n));
  CoverWalker walker(poset);
  // log p(x) = sum_{s <= x} theta(s), solved along the linear extension:
  // every s < x has a smaller index and is already known.
  for (int x = 0; x < n; ++x) {
    double below = 0.0;
    walker.strict_down(x, [&](int s) { below += theta[static_cast<std::size_t>(s)]; });
    theta[static_cast<std::size_t>(x)] = std::log(p[x]) - below;
  }
  return ThetaCoords{p.poset(), std::move(theta)};
}

EtaCoords eta_from_p(const Distribution& p) {
  const Poset& poset = *p.poset();
  const int n = poset.size();
  std::vector<double> eta(static_cast<std::size_t>(n));
  CoverWalker walker(poset);
  for (int s = 0; s < n; ++s) {
    double above = p[s];
    walker.strict_up(s, [&](int x) { above += p[x]; });
    eta[static_cast<std::size_t>(s)] = above;
  }
  eta[0] = 1.0;
  return EtaCoords{p.poset(), std::move(eta)};
}

Distribution p_from_theta(const ThetaCoords& theta, bool normalize) {
  check_coords(theta.poset, theta.values, "theta");
  const Poset& poset = *theta.poset;
  const int n = poset.size();
  std::vector<double> mass(static_cast<std::size_t>(n));
  CoverWalker walker(poset);
  double total = 0.0;
  for (int x = 0; x < n; ++x) {
    double logp = theta.values[static_cast<std::size_t>(x)];
    walker.strict_down(x, [&](int s) { logp += theta.values[static_cast<std::size_t>(s)]; });
    mass[static_cast<std::size_t>(x)] = std::exp(logp);
    total += mass[static_cast<std::size_t>(x)];
  }
  if (!normalize && std::abs(total - 1.0) > kThetaSumTol) {
    raise(errc::not_normalized,
          "theta coordinates imply total mass " + std::to_string(total));
  }
  for (double& v : mass) v /= total;
  return Distribution(theta.poset, std::move(mass));
}

Distribution p_from_eta(const EtaCoords& eta) {
  check_coords(eta.poset, eta.values, "eta");
  const Poset& poset = *eta.poset;
  const int n = poset.size();
  if (std::abs(eta.values[0] - 1.0) > kEtaBottomTol) {
    raise(errc::inconsistent_eta,
          "bottom coordinate must be 1, got " + std::to_string(eta.values[0]));
  }
  for (int s = 0; s < n; ++s) {
    double v = eta.values[static_cast<std::size_t>(s)];
    if (!(v > 0.0) || v > 1.0) {
      raise(errc::inconsistent_eta,
            "coordinate of '" + poset.label(s) + "' must lie in (0, 1], got " +
                std::to_string(v));
    }
  }
  // eta(x) = p(x) + sum_{s > x} p(s); peel masses from the top down.
  std::vector<double> mass(static_cast<std::size_t>(n));
  CoverWalker walker(poset);
  for (int x = n - 1; x >= 0; --x) {
    double above = 0.0;
    walker.strict_up(x, [&](int s) { above += mass[static_cast<std::size_t>(s)]; });
    double v = eta.values[static_cast<std::size_t>(x)] - above;
    if (!(v > 0.0)) {
      raise(errc::inconsistent_eta,
            "coordinates imply mass " + std::to_string(v) + " at '" +
                poset.label(x) + "'");
    }
    mass[static_cast<std::size_t>(x)] = v;
  }
  return Distribution(eta.poset, std::move(mass));
}

std::vector<std::vector<double>> check_orthogonality(const Distribution& p,
                                                     double step) {
  const Poset& poset = *p.poset();
  const int n = poset.size();
  if (n > kOrthogonalityLimit) {
    raise(errc::poset_too_large,
          "orthogonality check supports at most " +
              std::to_string(kOrthogonalityLimit) + " elements, got " +
              std::to_string(n));
  }
  if (n < 2) {
    return {};
  }

  const ThetaCoords theta = theta_from_p(p);
  const EtaCoords eta = eta_from_p(p);

  // d log p / d theta_i, central difference.  Moving one natural coordinate
  // de-normalizes the masses, so each probe is renormalized, matching the
  // convention that the bottom coordinate carries the log-partition term.
  std::vector<std::vector<double>> dtheta(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    ThetaCoords plus = theta;
    ThetaCoords minus = theta;
    plus.values[static_cast<std::size_t>(i)] += step;
    minus.values[static_cast<std::size_t>(i)] -= step;
    Distribution p_plus = p_from_theta(plus, true);
    Distribution p_minus = p_from_theta(minus, true);
    std::vector<double> grad(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      grad[static_cast<std::size_t>(x)] =
          (std::log(p_plus[x]) - std::log(p_minus[x])) / (2.0 * step);
    }
    dtheta[static_cast<std::size_t>(i - 1)] = std::move(grad);
  }

  // d log p / d eta_j, central difference; the bottom coordinate stays 1.
  std::vector<std::vector<double>> deta(static_cast<std::size_t>(n - 1));
  for (int j = 1; j < n; ++j) {
    EtaCoords plus = eta;
    EtaCoords minus = eta;
    plus.values[static_cast<std::size_t>(j)] += step;
    minus.values[static_cast<std::size_t>(j)] -= step;
    Distribution p_plus = p_from_eta(plus);
    Distribution p_minus = p_from_eta(minus);
    std::vector<double> grad(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      grad[static_cast<std::size_t>(x)] =
          (std::log(p_plus[x]) - std::log(p_minus[x])) / (2.0 * step);
    }
    deta[static_cast<std::size_t>(j - 1)] = std::move(grad);
  }

  std::vector<std::vector<double>> gram(
      static_cast<std::size_t>(n - 1),
      std::vector<double>(static_cast<std::size_t>(n - 1), 0.0));
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      double acc = 0.0;
      for (int x = 0; x < n; ++x) {
        acc += p[x] * dtheta[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] *
               deta[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)];
      }
      gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
    }
  }
  return gram;
}

}  // namespace infodecomp
