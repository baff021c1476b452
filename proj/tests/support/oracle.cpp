#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "infodecomp/error.hpp"
#include "infodecomp/structure_learning.hpp"

namespace infodecomp::testing {

namespace {

std::vector<std::vector<double>> zeta_matrix(const Poset& poset) {
  int n = poset.size();
  std::vector<std::vector<double>> z(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int x = 0; x < n; ++x) {
    for (int s = 0; s < n; ++s) {
      if (poset.leq(s, x)) z[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)] = 1.0;
    }
  }
  return z;
}

// Gaussian elimination with partial pivoting; a is destroyed.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      raise(errc::no_convergence, "singular Jacobian in the reference solver");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
    x[row] = acc / a[row][row];
  }
  return x;
}

}  // namespace

std::vector<double> oracle_theta(const Poset& poset,
                                 const std::vector<double>& p) {
  const int n = poset.size();
  if (n > 64) {
    raise(errc::poset_too_large, "reference theta is limited to 64 elements");
  }
  auto z = zeta_matrix(poset);
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  // Z is unit lower triangular in the canonical order.
  for (int x = 0; x < n; ++x) {
    double acc = std::log(p[static_cast<std::size_t>(x)]);
    for (int s = 0; s < x; ++s) {
      acc -= z[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)] *
             theta[static_cast<std::size_t>(s)];
    }
    theta[static_cast<std::size_t>(x)] = acc;
  }
  return theta;
}

std::vector<double> oracle_eta(const Poset& poset,
                               const std::vector<double>& p) {
  const int n = poset.size();
  if (n > 64) {
    raise(errc::poset_too_large, "reference eta is limited to 64 elements");
  }
  auto z = zeta_matrix(poset);
  std::vector<double> eta(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int x = 0; x < n; ++x) {
      acc += z[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)] *
             p[static_cast<std::size_t>(x)];
    }
    eta[static_cast<std::size_t>(s)] = acc;
  }
  return eta;
}

std::vector<double> oracle_mix(const Poset& poset,
                               const std::vector<double>& p,
                               const std::vector<double>& q,
                               const std::vector<int>& targets) {
  const int n = poset.size();
  if (n > 8) {
    raise(errc::poset_too_large, "reference mix is limited to 8 elements");
  }
  const std::size_t m = static_cast<std::size_t>(n) - 1;

  std::vector<bool> in_targets(static_cast<std::size_t>(n), false);
  for (int t : targets) in_targets[static_cast<std::size_t>(t)] = true;

  std::vector<double> theta_q = oracle_theta(poset, q);
  std::vector<double> eta_p = oracle_eta(poset, p);

  // Unknowns are the masses on non-bottom elements; the bottom mass is
  // the remainder.
  auto full = [&](const std::vector<double>& u) {
    std::vector<double> masses(static_cast<std::size_t>(n), 0.0);
    double rest = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      masses[i + 1] = u[i];
      rest -= u[i];
    }
    masses[0] = rest;
    return masses;
  };
  auto positive = [&](const std::vector<double>& u) {
    auto masses = full(u);
    return std::all_of(masses.begin(), masses.end(),
                       [](double v) { return v > 0.0; });
  };
  auto residual = [&](const std::vector<double>& u) {
    auto masses = full(u);
    std::vector<double> theta = oracle_theta(poset, masses);
    std::vector<double> eta = oracle_eta(poset, masses);
    std::vector<double> f(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      int x = static_cast<int>(i) + 1;
      f[i] = in_targets[static_cast<std::size_t>(x)]
                 ? theta[static_cast<std::size_t>(x)] -
                       theta_q[static_cast<std::size_t>(x)]
                 : eta[static_cast<std::size_t>(x)] -
                       eta_p[static_cast<std::size_t>(x)];
    }
    return f;
  };
  auto norm_inf = [](const std::vector<double>& f) {
    double w = 0.0;
    for (double v : f) w = std::max(w, std::abs(v));
    return w;
  };

  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(p.begin() + 1, p.end()));
  starts.push_back(std::vector<double>(q.begin() + 1, q.end()));
  starts.push_back(std::vector<double>(m, 1.0 / static_cast<double>(n)));

  for (const auto& start : starts) {
    std::vector<double> u = start;
    if (!positive(u)) continue;
    bool ok = false;
    for (int iter = 0; iter < 400; ++iter) {
      std::vector<double> f = residual(u);
      if (norm_inf(f) < 1e-10) {
        ok = true;
        break;
      }
      std::vector<std::vector<double>> jac(m, std::vector<double>(m, 0.0));
      for (std::size_t b = 0; b < m; ++b) {
        double h = 1e-7 * std::max(1e-4, std::abs(u[b]));
        std::vector<double> hi = u, lo = u;
        hi[b] += h;
        lo[b] -= h;
        if (!positive(lo)) {
          // One-sided difference when the lower probe leaves the simplex.
          std::vector<double> fh = residual(hi), f0 = residual(u);
          for (std::size_t a = 0; a < m; ++a) jac[a][b] = (fh[a] - f0[a]) / h;
          continue;
        }
        std::vector<double> fh = residual(hi), fl = residual(lo);
        for (std::size_t a = 0; a < m; ++a) {
          jac[a][b] = (fh[a] - fl[a]) / (2.0 * h);
        }
      }
      std::vector<double> rhs(m);
      for (std::size_t a = 0; a < m; ++a) rhs[a] = -f[a];
      std::vector<double> step;
      try {
        step = solve_dense(std::move(jac), std::move(rhs));
      } catch (const Error&) {
        break;
      }
      double lambda = 1.0;
      std::vector<double> next(m);
      int halvings = 0;
      for (; halvings <= 60; ++halvings) {
        for (std::size_t b = 0; b < m; ++b) next[b] = u[b] + lambda * step[b];
        if (positive(next)) break;
        lambda *= 0.5;
      }
      if (halvings > 60) break;
      u = next;
    }
    if (ok && norm_inf(residual(u)) < 1e-10) {
      return full(u);
    }
  }
  raise(errc::no_convergence, "reference mix failed from every start");
}

BooleanCoords oracle_boolean_lattice(int n, const std::vector<double>& p) {
  if (n > 4) {
    raise(errc::poset_too_large, "reference lattice is limited to 4 items");
  }
  const std::size_t size = std::size_t{1} << n;
  BooleanCoords out;
  out.theta.assign(size, 0.0);
  out.eta.assign(size, 0.0);
  for (std::size_t a = 0; a < size; ++a) {
    double th = 0.0, et = 0.0;
    for (std::size_t b = 0; b < size; ++b) {
      if ((b & a) == b) {
        int diff = std::popcount(a) - std::popcount(b);
        th += ((diff % 2 == 0) ? 1.0 : -1.0) * std::log(p[b]);
      }
      if ((b & a) == a) et += p[b];
    }
    out.theta[a] = th;
    out.eta[a] = et;
  }
  return out;
}

BooleanLattice boolean_lattice(int n) {
  if (n > 4) {
    raise(errc::poset_too_large, "reference lattice is limited to 4 items");
  }
  const std::size_t size = std::size_t{1} << n;
  auto label_of = [](std::size_t mask) {
    std::vector<int> items;
    for (int i = 0; i < 8; ++i) {
      if (mask & (std::size_t{1} << i)) items.push_back(i + 1);
    }
    return itemset_label(items);
  };
  std::vector<std::string> labels;
  for (std::size_t mask = 0; mask < size; ++mask) {
    labels.push_back(label_of(mask));
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t mask = 0; mask < size; ++mask) {
    for (int i = 0; i < n; ++i) {
      std::size_t bit = std::size_t{1} << i;
      if (!(mask & bit)) covers.emplace_back(label_of(mask), label_of(mask | bit));
    }
  }
  BooleanLattice out;
  out.poset = build_poset(labels, covers);
  for (std::size_t mask = 0; mask < size; ++mask) {
    out.index_of_mask.push_back(out.poset->index_of(label_of(mask)));
  }
  return out;
}

}  // namespace infodecomp::testing
