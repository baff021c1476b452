#pragma once

#include <random>
#include <vector>

#include "infodecomp/distribution.hpp"
#include "infodecomp/poset.hpp"

namespace infodecomp::testing {

using Rng = std::mt19937_64;

// Product of chains with the given lengths (each >= 2), ordered
// componentwise; always a lattice.  Labels are comma-joined coordinates.
PosetPtr product_of_chains(const std::vector<int>& dims);

// Random product of chains with at most max_size elements (and at least
// two).
PosetPtr random_lattice(Rng& rng, int max_size);

// Random poset with a unique bottom, built from a random closed relation
// on 2..max_size elements; not a lattice in general.
PosetPtr random_poset(Rng& rng, int max_size);

// Strictly positive random distribution on the poset; every mass is at
// least 0.03 / |S|.
Distribution random_distribution(Rng& rng, PosetPtr poset);

// Random subset of the non-bottom elements, each kept with probability
// keep; sorted.  May be empty unless force_nonempty is set.
std::vector<int> random_targets(Rng& rng, const Poset& poset, double keep,
                                bool force_nonempty = false);

// Random increasing chain of target sets from {} to all of S+.
std::vector<std::vector<int>> random_chain(Rng& rng, const Poset& poset);

}  // namespace infodecomp::testing
