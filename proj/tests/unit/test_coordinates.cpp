#include <cmath>
#include <vector>

#include "doctest.h"

#include "checks.hpp"
#include "fixtures.hpp"
#include "infodecomp/coordinates.hpp"

using namespace infodecomp;
using namespace infodecomp::testing;

TEST_CASE("theta of the diamond distribution") {
  ThetaCoords theta = theta_from_p(diamond_p());
  const std::vector<double> expected{-2.3025850929940457, 1.0986122886681097,
                                     0.69314718055994531,
                                     -0.40546510810816438};
  CHECK(max_abs_diff(theta.values, expected) <= 1e-12);
  CHECK(std::abs(theta.psi() - 2.3025850929940457) <= 1e-12);
}

TEST_CASE("eta of the diamond distribution") {
  EtaCoords eta = eta_from_p(diamond_p());
  const std::vector<double> expected{1.0, 0.7, 0.6, 0.4};
  CHECK(max_abs_diff(eta.values, expected) <= 1e-12);
}

TEST_CASE("theta of a chain distribution") {
  ThetaCoords theta = theta_from_p(chain4_p());
  const std::vector<double> expected{-2.2072749131897208, 1.3633048428951919,
                                     -0.5831462853456168,
                                     -0.087011376989629766};
  CHECK(max_abs_diff(theta.values, expected) <= 1e-12);
}

TEST_CASE("uniform distribution has zero interactions") {
  Distribution u = uniform_distribution(diamond());
  ThetaCoords theta = theta_from_p(u);
  CHECK(std::abs(theta.values[0] + std::log(4.0)) <= 1e-14);
  for (int x = 1; x < 4; ++x) {
    CHECK(std::abs(theta.values[static_cast<std::size_t>(x)]) <= 1e-14);
  }
  EtaCoords eta = eta_from_p(u);
  CHECK(std::abs(eta.values[0] - 1.0) <= 1e-15);
  CHECK(std::abs(eta.values[3] - 0.25) <= 1e-15);
}

TEST_CASE("coordinate round trips") {
  for (const Distribution* p : {&diamond_p(), &chain4_p()}) {
    Distribution via_theta = p_from_theta(theta_from_p(*p));
    CHECK(max_abs_diff(via_theta.values(), p->values()) <= 1e-12);
    Distribution via_eta = p_from_eta(eta_from_p(*p));
    CHECK(max_abs_diff(via_eta.values(), p->values()) <= 1e-12);
  }
}

TEST_CASE("theta inverse normalization modes") {
  ThetaCoords theta = theta_from_p(diamond_p());
  theta.values[0] += 0.3;
  CHECK(error_code_of([&] { p_from_theta(theta); }) == errc::not_normalized);
  Distribution rescaled = p_from_theta(theta, true);
  CHECK(max_abs_diff(rescaled.values(), diamond_p().values()) <= 1e-12);
}

TEST_CASE("eta inverse rejects inconsistent coordinates") {
  CHECK(error_code_of([] {
          p_from_eta(EtaCoords{diamond(), {0.9, 0.7, 0.6, 0.4}});
        }) == errc::inconsistent_eta);
  // eta(x1) < eta(top) forces a negative mass on x1.
  CHECK(error_code_of([] {
          p_from_eta(EtaCoords{diamond(), {1.0, 0.7, 0.6, 0.75}});
        }) == errc::inconsistent_eta);
  CHECK(error_code_of([] {
          p_from_eta(EtaCoords{diamond(), {1.0, 0.7, 0.6}});
        }) == errc::invalid_argument);
}

TEST_CASE("distribution validation") {
  CHECK(error_code_of([] { Distribution(diamond(), {0.5, 0.5, 0.0, 0.0}); }) ==
        errc::non_positive_probability);
  CHECK(error_code_of([] { Distribution(diamond(), {0.5, 0.5, -0.2, 0.2}); }) ==
        errc::non_positive_probability);
  CHECK(error_code_of([] { Distribution(diamond(), {0.3, 0.3, 0.3, 0.3}); }) ==
        errc::not_normalized);
  CHECK(error_code_of([] { Distribution(diamond(), {0.5, 0.5}); }) ==
        errc::invalid_argument);
  CHECK(error_code_of([] {
          require_same_poset(diamond_p(), chain4_p());
        }) == errc::poset_mismatch);
}

TEST_CASE("dual coordinates are orthogonal on a small poset") {
  auto gram = check_orthogonality(diamond_p());
  REQUIRE(gram.size() == 3);
  for (std::size_t i = 0; i < gram.size(); ++i) {
    REQUIRE(gram[i].size() == 3);
    for (std::size_t j = 0; j < gram[i].size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(gram[i][j] - expected) <= 1e-6);
    }
  }
}

TEST_CASE("orthogonality check refuses large posets") {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < 7; ++i) {
    labels.push_back("e" + std::to_string(i));
    if (i > 0) covers.push_back({labels[static_cast<std::size_t>(i - 1)],
                                 labels[static_cast<std::size_t>(i)]});
  }
  Distribution u = uniform_distribution(build_poset(labels, covers));
  CHECK(error_code_of([&] { check_orthogonality(u); }) ==
        errc::poset_too_large);
}
