#include "infodecomp/distribution.hpp"

#include <cmath>
#include <utility>

namespace infodecomp {

namespace {
constexpr double kNormalizationTol = 1e-12;
// Masses this small can no longer be taken the log of reliably.
constexpr double kMassFloor = 1e-300;
}

Distribution::Distribution(PosetPtr poset, std::vector<double> values)
    : poset_(std::move(poset)), values_(std::move(values)) {
  if (!poset_) {
    raise(errc::invalid_argument, "distribution needs a poset");
  }
  if (static_cast<int>(values_.size()) != poset_->size()) {
    raise(errc::invalid_argument,
          "expected " + std::to_string(poset_->size()) + " masses, got " +
              std::to_string(values_.size()));
  }
  double total = 0.0;
  for (std::size_t x = 0; x < values_.size(); ++x) {
    double v = values_[x];
    if (!(v >= kMassFloor) || !std::isfinite(v)) {
      raise(errc::non_positive_probability,
            "mass of '" + poset_->label(static_cast<int>(x)) +
                "' must be at least 1e-300, got " + std::to_string(v));
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    raise(errc::not_normalized,
          "masses sum to " + std::to_string(total) + ", expected 1");
  }
}

Distribution uniform_distribution(PosetPtr poset) {
  if (!poset) {
    raise(errc::invalid_argument, "distribution needs a poset");
  }
  const int n = poset->size();
  std::vector<double> values(static_cast<std::size_t>(n), 1.0 / n);
  return Distribution(std::move(poset), std::move(values));
}

void require_same_poset(const Distribution& a, const Distribution& b) {
  if (a.poset() == b.poset()) return;
  if (!a.poset()->same_structure(*b.poset())) {
    raise(errc::poset_mismatch,
          "distributions live on different posets");
  }
}

}  // namespace infodecomp
