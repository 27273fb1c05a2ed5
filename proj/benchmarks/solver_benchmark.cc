// Copyright 2026 The ratecon Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "ratecon/cutting_plane.hpp"
#include "ratecon/dataset.hpp"
#include "ratecon/random.hpp"
#include "ratecon/rate_combination.hpp"
#include "ratecon/sdca.hpp"
#include "ratecon/subproblem.hpp"

namespace ratecon {
namespace {

// Dense Gaussian points with a noisy linear label.
DatasetCollection random_labeled(std::size_t n, std::size_t d,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SparseVector> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector x;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = normal(rng);
      x.push_back({static_cast<std::uint32_t>(j), v});
      s += v;
    }
    (s + normal(rng) > 0.0 ? pos : neg).push_back(std::move(x));
  }
  DatasetCollection c(d);
  c.add(std::make_shared<UnlabeledDataset>("s/+", d, pos));
  c.add(std::make_shared<UnlabeledDataset>("s/-", d, neg));
  return c;
}

void BM_SdcaSolve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  DatasetCollection data = random_labeled(n, 20, 1);
  LinearRateCombination obj;
  obj.add("s/+", Polarity::kNegative, 0.5).add("s/-", Polarity::kPositive, 0.5);
  const ConstrainedProblem problem(data, obj, {}, 1.0 / n, 1e3);
  const ConvexSubproblem sub(problem, LinearClassifier::zeros(20));
  const ExampleCoefficients coeffs = build_example_coefficients(sub, {});
  const WeightedSvm svm(sub, coeffs);
  SdcaOptions options;
  options.gap = 1e-4;
  for (auto _ : state) {
    DualState s = sdca_optimize(svm, 0.0, options, zero_state(svm));
    benchmark::DoNotOptimize(s.primal);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_SdcaSolve)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EnvelopeMax(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  CutStore store(m, 10.0, -100.0, 100.0);
  for (int k = 0; k < 50; ++k) {
    Cut cut;
    for (std::size_t j = 0; j < m; ++j) {
      cut.point.push_back(5.0 * (unit(rng) + 1.0));
      cut.gradient.push_back(unit(rng));
    }
    cut.value = unit(rng);
    cut.lower = -100.0;
    store.add(std::move(cut));
  }
  for (auto _ : state) benchmark::DoNotOptimize(envelope_max(store).value);
}
BENCHMARK(BM_EnvelopeMax)->Arg(1)->Arg(3)->Arg(8);

void BM_CentroidChooser(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CutStore store(1, 10.0, 0.0, 100.0);
  for (int k = 0; k < state.range(0); ++k) {
    store.add(Cut{{10.0 * unit(rng)}, 1.0 + unit(rng), {2.0 * unit(rng) - 1.0},
                  0.0});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cut_chooser_centroid_1d(store).point);
  }
}
BENCHMARK(BM_CentroidChooser)->Arg(10)->Arg(100);

void BM_BiasCentroidChooser(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BiasCutStore store(-5.0, 5.0, -10.0, 1.0);
  for (int k = 0; k < state.range(0); ++k) {
    store.add({10.0 * unit(rng) - 5.0, -unit(rng), 2.0 * unit(rng) - 1.0, 1.0});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bias_cut_chooser_centroid(store, 1e-3).bias);
  }
}
BENCHMARK(BM_BiasCentroidChooser)->Arg(10)->Arg(100);

}  // namespace
}  // namespace ratecon

BENCHMARK_MAIN();
