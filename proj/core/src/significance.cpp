#include "infodecomp/significance.hpp"

#include <cmath>
#include <limits>

namespace infodecomp {

namespace {

constexpr double kGammaEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kGammaMaxIter = 1000;

// Lower regularized incomplete gamma P(a, z) by power series, for z < a+1.
double gamma_p_series(double a, double z) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < kGammaMaxIter; ++i) {
    ap += 1.0;
    term *= z / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEps) {
      return sum * std::exp(-z + a * std::log(z) - std::lgamma(a));
    }
  }
  raise(errc::no_convergence, "incomplete gamma series stalled");
}

// Upper regularized incomplete gamma Q(a, z) by continued fraction
// (modified Lentz), for z >= a+1.
double gamma_q_fraction(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEps) {
      return h * std::exp(-z + a * std::log(z) - std::lgamma(a));
    }
  }
  raise(errc::no_convergence, "incomplete gamma fraction stalled");
}

}  // namespace

double chi2_survival(double x, int k) {
  if (k <= 0) {
    raise(errc::invalid_dof,
          "degrees of freedom must be positive, got " + std::to_string(k));
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    raise(errc::invalid_argument,
          "statistic must be finite and non-negative, got " + std::to_string(x));
  }
  if (x == 0.0) return 1.0;
  const double a = 0.5 * static_cast<double>(k);
  const double z = 0.5 * x;
  if (z < a + 1.0) {
    return 1.0 - gamma_p_series(a, z);
  }
  return gamma_q_fraction(a, z);
}

GTestResult g_test(const Distribution& p, const std::vector<int>& targets,
                   long long sample_size, std::optional<int> dof_override,
                   const SolverConfig& config) {
  if (targets.empty()) {
    raise(errc::invalid_argument, "the test needs a non-empty target set");
  }
  if (sample_size < 1) {
    raise(errc::invalid_argument,
          "sample size must be at least 1, got " + std::to_string(sample_size));
  }
  int dof = p.size() - 1;
  if (dof_override) {
    if (*dof_override <= 0) {
      raise(errc::invalid_dof, "degrees of freedom override must be positive, got " +
                                   std::to_string(*dof_override));
    }
    dof = *dof_override;
  }

  GainResult gain = information_gain(p, targets, config);
  GTestResult out;
  out.lambda = std::max(0.0, 2.0 * static_cast<double>(sample_size) * gain.gain);
  out.dof = dof;
  out.dof_overridden = dof_override.has_value();
  out.p_value = chi2_survival(out.lambda, dof);
  out.targets = targets;
  out.sample_size = sample_size;
  out.stats = std::move(gain.stats);
  return out;
}

}  // namespace infodecomp
