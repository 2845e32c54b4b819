// Copyright 2026 The edgecert Authors.
//
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

#include <algorithm>

#include "edgecert/certify.hpp"
#include "edgecert/encoder.hpp"
#include "edgecert/graph.hpp"
#include "edgecert/noise.hpp"
#include "edgecert/special.hpp"

namespace {

using namespace edgecert;

Graph bench_graph(std::size_t per_block) {
  SbmConfig cfg;
  cfg.nodes_per_block = per_block;
  // Expected degree stays near 10 as the graph grows.
  cfg.p_in = std::min(0.2, 10.0 / static_cast<double>(per_block));
  cfg.p_out = cfg.p_in / 20.0;
  cfg.feature_centers = Eigen::MatrixXd::Zero(2, 16);
  cfg.feature_centers(0, 0) = 3.0;
  cfg.feature_centers(1, 1) = 3.0;
  cfg.seed = 1;
  return sbm_generate(cfg);
}

void BM_Forward(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const EncoderParams p = init_params({16, 64, 32, 32}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(forward(g, p).Z.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.n_nodes()));
}
BENCHMARK(BM_Forward)->Arg(50)->Arg(500)->Arg(2500);

void BM_SmoothedPredict(benchmark::State& state) {
  const Graph g = bench_graph(50);
  const EncoderParams p = init_params({16, 64, 32, 32}, 2);
  LogRegModel clf;
  clf.W = Eigen::MatrixXd::Random(2, 32);
  clf.b = Eigen::VectorXd::Zero(2);
  const auto mu = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(smoothed_predict(g, 3, p, clf, mu, {0.9}, 2, ++seed).counts);
}
BENCHMARK(BM_SmoothedPredict)->Arg(200)->Arg(1000);

void BM_BetaQuantile(benchmark::State& state) {
  double q = 0.0005;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_quantile(q, 190.0, 11.0));
    q = q < 0.9 ? q * 1.01 : 0.0005;
  }
}
BENCHMARK(BM_BetaQuantile);

void BM_SampleEdgedrop(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const StructVector v = to_struct_vector(g);
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_edgedrop(v, {0.9}, 7, ++index).toggled.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.present.size()));
}
BENCHMARK(BM_SampleEdgedrop)->Arg(50)->Arg(2500);

}  // namespace

BENCHMARK_MAIN();
