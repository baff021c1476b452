#pragma once

#include <vector>

#include "infodecomp/distribution.hpp"

namespace infodecomp {

// Natural coordinates of a distribution: log p(x) = sum of values over the
// down-set of x.  values[bottom] equals log p(bottom); the potential psi
// is its negation.
struct ThetaCoords {
  PosetPtr poset;
  std::vector<double> values;

  double psi() const { return -values[0]; }
};

// Expectation coordinates: values[s] is the probability that an outcome
// lies in the up-set of s.  values[bottom] is always 1.
struct EtaCoords {
  PosetPtr poset;
  std::vector<double> values;
};

ThetaCoords theta_from_p(const Distribution& p);

EtaCoords eta_from_p(const Distribution& p);

// Inverse of theta_from_p.  With normalize = false the implied masses must
// already sum to 1 within 1e-10 (not_normalized otherwise); with
// normalize = true the masses are rescaled, which amounts to shifting the
// bottom coordinate.
Distribution p_from_theta(const ThetaCoords& theta, bool normalize = false);

// Inverse of eta_from_p.  Requires values[bottom] = 1 and rejects
// coordinate vectors that imply a non-positive mass (inconsistent_eta).
Distribution p_from_eta(const EtaCoords& eta);

// Numerically estimates the Gram matrix pairing the two coordinate systems:
// entry (i, j) is E[d log p / d theta_i * d log p / d eta_j] over the
// non-bottom elements, via central finite differences with the given step.
// Dual flatness makes this the identity matrix; the helper exists so tests
// can confirm that on small posets (poset_too_large above 6 elements).
std::vector<std::vector<double>> check_orthogonality(const Distribution& p,
                                                     double step = 1e-5);

}  // namespace infodecomp
