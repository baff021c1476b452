#include <cmath>
#include <vector>

#include "doctest.h"

#include "checks.hpp"
#include "fixtures.hpp"
#include "infodecomp/coordinates.hpp"
#include "infodecomp/projection.hpp"

using namespace infodecomp;
using namespace infodecomp::testing;

namespace {

const Distribution& diamond_q() {
  static const Distribution q(diamond(), {0.25, 0.15, 0.25, 0.35});
  return q;
}

}  // namespace

TEST_CASE("knock-down projections of the diamond") {
  struct Case {
    int target;
    std::vector<double> r;
  };
  const std::vector<Case> cases{
      {1, {0.2, 0.2, 0.2, 0.4}},
      {2, {0.15, 0.3, 0.15, 0.4}},
      {3, {0.12, 0.28, 0.18, 0.42}},
  };
  for (const auto& c : cases) {
    MixResult res = e_project_knockdown(diamond_p(), {c.target});
    CHECK(max_abs_diff(res.r.values(), c.r) <= 1e-9);
    CHECK(res.stats.final_theta_residual <= 1e-9);
    CHECK(res.stats.final_eta_residual <= 1e-9);
    CHECK(res.stats.outer_iterations >= 1);
    CHECK(res.stats.per_target_iterations.count(c.target) == 1);
  }
}

TEST_CASE("mix endpoints are exact") {
  MixResult none = mix(diamond_p(), diamond_q(), {});
  CHECK(none.r.values() == diamond_p().values());
  CHECK(none.stats.outer_iterations == 0);

  MixResult all = mix(diamond_p(), diamond_q(), {1, 2, 3});
  CHECK(all.r.values() == diamond_q().values());
  CHECK(all.stats.outer_iterations == 0);
}

TEST_CASE("single-target mix against the closed form") {
  // eta is pinned off x1, so the masses of x2 and top stay put; the theta
  // constraint fixes the x1:bot ratio to q's 3:5.
  MixResult res = mix(diamond_p(), diamond_q(), {1});
  CHECK(max_abs_diff(res.r.values(), {0.25, 0.15, 0.2, 0.4}) <= 1e-9);

  MixResult single = mix_singleton(diamond_p(), diamond_q(), 1);
  CHECK(single.r.values() == res.r.values());
}

TEST_CASE("mix pins theta on targets and eta off targets") {
  const std::vector<int> targets{1, 3};
  MixResult res = mix(diamond_p(), diamond_q(), targets);
  ThetaCoords theta_r = theta_from_p(res.r);
  ThetaCoords theta_q = theta_from_p(diamond_q());
  for (int x : targets) {
    CHECK(std::abs(theta_r.values[static_cast<std::size_t>(x)] -
                   theta_q.values[static_cast<std::size_t>(x)]) <= 1e-9);
  }
  EtaCoords eta_r = eta_from_p(res.r);
  EtaCoords eta_p = eta_from_p(diamond_p());
  CHECK(std::abs(eta_r.values[2] - eta_p.values[2]) <= 1e-9);
  CHECK(std::abs(eta_r.values[0] - 1.0) <= 1e-12);
}

TEST_CASE("duplicate targets collapse") {
  MixResult once = mix(diamond_p(), diamond_q(), {2});
  MixResult twice = mix(diamond_p(), diamond_q(), {2, 2});
  CHECK(max_abs_diff(once.r.values(), twice.r.values()) <= 1e-12);
}

TEST_CASE("sweep observer sees every sweep") {
  std::vector<std::vector<double>> observed;
  SolverConfig config;
  config.sweep_observer = [&](const std::vector<double>& masses) {
    observed.push_back(masses);
  };
  MixResult res = mix(diamond_p(), diamond_q(), {1, 3}, config);
  REQUIRE(!observed.empty());
  CHECK(static_cast<int>(observed.size()) == res.stats.outer_iterations);
  for (const auto& masses : observed) {
    double total = 0.0;
    for (double v : masses) {
      CHECK(v > 0.0);
      total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-6);
  }
  CHECK(max_abs_diff(observed.back(), res.r.values()) <= 1e-9);
}

TEST_CASE("mix input validation") {
  CHECK(error_code_of([] { mix(diamond_p(), diamond_q(), {0}); }) ==
        errc::invalid_argument);
  CHECK(error_code_of([] { mix(diamond_p(), diamond_q(), {7}); }) ==
        errc::unknown_element);
  CHECK(error_code_of([] { mix(diamond_p(), diamond_q(), {-1}); }) ==
        errc::unknown_element);
  CHECK(error_code_of([] { mix(diamond_p(), chain4_p(), {1}); }) ==
        errc::poset_mismatch);
}

TEST_CASE("solver budgets are enforced") {
  SolverConfig no_sweeps;
  no_sweeps.max_outer = 0;
  Distribution u = uniform_distribution(diamond());
  CHECK(error_code_of([&] { mix(diamond_p(), u, {1, 2}, no_sweeps); }) ==
        errc::max_outer_iterations);

  // A distribution already satisfying the constraints needs no sweeps, so
  // a zero budget is not an error.
  MixResult trivial = mix(diamond_p(), diamond_p(), {1, 2}, no_sweeps);
  CHECK(max_abs_diff(trivial.r.values(), diamond_p().values()) <= 1e-12);
  CHECK(trivial.stats.outer_iterations == 0);

  SolverConfig no_bisect;
  no_bisect.max_bisect = 0;
  CHECK(error_code_of([&] { mix(diamond_p(), u, {1}, no_bisect); }) ==
        errc::max_iterations);
}
