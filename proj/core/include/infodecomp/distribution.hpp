#pragma once

#include <vector>

#include "infodecomp/poset.hpp"

namespace infodecomp {

// A strictly positive probability mass function over the elements of a
// poset, indexed like the poset (values()[x] is the mass of element x).
//
// Construction validates positivity of every mass and normalization to
// within 1e-12; the stored values are not rescaled.
class Distribution {
 public:
  Distribution(PosetPtr poset, std::vector<double> values);

  const PosetPtr& poset() const noexcept { return poset_; }

  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](int x) const { return values_[static_cast<std::size_t>(x)]; }

  int size() const noexcept { return static_cast<int>(values_.size()); }

 private:
  PosetPtr poset_;
  std::vector<double> values_;
};

// The uniform distribution on the poset's elements.
Distribution uniform_distribution(PosetPtr poset);

// Throws poset_mismatch unless both distributions live on structurally
// equal posets.
void require_same_poset(const Distribution& a, const Distribution& b);

}  // namespace infodecomp
