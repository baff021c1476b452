// Microbenchmarks for the coordinate transforms, the projection solver,
// the per-element significance scan, and the transaction learner.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "infodecomp/coordinates.hpp"
#include "infodecomp/decomposition.hpp"
#include "infodecomp/projection.hpp"
#include "infodecomp/significance.hpp"
#include "infodecomp/structure_learning.hpp"

using namespace infodecomp;

namespace {

// side x side grid lattice; element (i, j) sits below (i', j') when both
// coordinates do.  Size scales quadratically with the argument.
PosetPtr grid_poset(int side) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  auto name = [&](int i, int j) {
    return std::to_string(i) + "," + std::to_string(j);
  };
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      labels.push_back(name(i, j));
      if (i + 1 < side) covers.emplace_back(name(i, j), name(i + 1, j));
      if (j + 1 < side) covers.emplace_back(name(i, j), name(i, j + 1));
    }
  }
  return build_poset(labels, covers);
}

Distribution skewed_distribution(PosetPtr poset) {
  const int n = poset->size();
  std::vector<double> mass(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    mass[static_cast<std::size_t>(i)] =
        1.0 + static_cast<double>((i * 2654435761U) % 97);
    total += mass[static_cast<std::size_t>(i)];
  }
  for (double& v : mass) v /= total;
  return Distribution(std::move(poset), std::move(mass));
}

void BM_theta_from_p(benchmark::State& state) {
  Distribution p = skewed_distribution(grid_poset(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta_from_p(p));
  }
  state.SetComplexityN(p.poset()->size());
}
BENCHMARK(BM_theta_from_p)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Complexity();

void BM_eta_round_trip(benchmark::State& state) {
  Distribution p = skewed_distribution(grid_poset(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_from_eta(eta_from_p(p)));
  }
  state.SetComplexityN(p.poset()->size());
}
BENCHMARK(BM_eta_round_trip)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Complexity();

void BM_mix_singleton(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Distribution p = skewed_distribution(grid_poset(side));
  Distribution u = uniform_distribution(p.poset());
  const int target = p.poset()->size() / 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mix(p, u, {target}));
  }
}
BENCHMARK(BM_mix_singleton)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_mix_row(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Distribution p = skewed_distribution(grid_poset(side));
  Distribution u = uniform_distribution(p.poset());
  std::vector<int> targets;
  for (int j = 0; j < side; ++j) {
    targets.push_back(p.poset()->index_of("1," + std::to_string(j)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mix(p, u, targets));
  }
}
BENCHMARK(BM_mix_row)->Arg(4)->Arg(8)->Arg(16);

void BM_gain_scan(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Distribution p = skewed_distribution(grid_poset(side));
  const int n = p.poset()->size();
  for (auto _ : state) {
    double acc = 0.0;
    for (int x = 1; x < n; ++x) {
      acc += g_test(p, {x}, 1000).p_value;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_gain_scan)->Arg(4)->Arg(8);

void BM_chi2_survival(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0.0;
    for (int k = 1; k <= 32; ++k) {
      acc += chi2_survival(0.7 * static_cast<double>(k), k);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_chi2_survival);

void BM_learn_transactions(benchmark::State& state) {
  const int groups = static_cast<int>(state.range(0));
  TransactionDataset data;
  data.n_events = 5 * groups;
  for (int g = 0; g < groups; ++g) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<int> items;
      for (int j = 1; j <= k; ++j) items.push_back(5 * g + j);
      data.transactions.push_back(std::move(items));
    }
  }
  for (int i = 0; i < 10; ++i) data.transactions.push_back({});
  const double sigma = 0.5 / static_cast<double>(data.transactions.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(learn_from_transactions(data, sigma));
  }
}
BENCHMARK(BM_learn_transactions)->Arg(25)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
