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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "edgecert/attack.hpp"
#include "edgecert/certify.hpp"
#include "edgecert/margin.hpp"
#include "edgecert/noise.hpp"
#include "edgecert/parallel.hpp"
#include "edgecert/rng.hpp"
#include "edgecert/special.hpp"
#include "edgecert/trainer.hpp"
#include "runner/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace edgecert;
using namespace edgecert::runner;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 2 x 50 SBM, p_in 0.2, p_out 0.01, centers 3 e_b, 200 epochs, mu 200, alpha 0.001.
ExperimentConfig fixture(std::uint64_t seed, double beta) {
  ExperimentConfig cfg = parse_config(R"(
sbm.blocks = 2
sbm.nodes_per_block = 50
sbm.p_in = 0.2
sbm.p_out = 0.01
sbm.center_scale = 3.0
train.epochs = 200
smoothing.mu = 200
smoothing.alpha = 0.001
attack.mode = targeted
attack.budget = 5
)");
  cfg.seed = seed;
  cfg.smoothing.spec.beta_drop = beta;
  return cfg;
}

struct FixtureRun {
  ExperimentConfig cfg;
  Graph graph;
  Split split;
  TrainedPipeline model;
};

FixtureRun train_fixture(std::uint64_t seed, double beta) {
  FixtureRun r{fixture(seed, beta), Graph(), {}, {}};
  r.graph = sbm_generate(sbm_config(r.cfg));
  r.split = make_split(r.graph, r.cfg);
  r.model = train_pipeline(r.graph, r.split, r.cfg);
  return r;
}

std::vector<std::pair<std::size_t, double>> curve_of(const FixtureRun& r) {
  const auto certs = certify_nodes(r.graph, r.split.test, r.model.encoder, r.model.classifier, r.cfg);
  std::vector<int> truth;
  for (NodeId v : r.split.test) truth.push_back(r.graph.labels()[v]);
  return certified_accuracy(certs, truth, r.cfg.k_grid);
}

double curve_at(const std::vector<std::pair<std::size_t, double>>& c, std::size_t k) {
  for (const auto& [kk, a] : c) {
    if (kk == k) return a;
  }
  return 0.0;
}

Outcome collision_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t cells = 0;
  std::size_t within = 0;
  bool dominated = true;
  std::uint64_t seed = 1;
  for (std::size_t d : {5u, 10u, 20u}) {
    // d present edges on a 12-node universe (66 slots); delta uses absent slots.
    const std::size_t n = 12;
    StructVector v{pair_universe(n), {}};
    for (std::size_t i = 0; i < d; ++i) v.present.push_back(static_cast<Slot>(3 * i));
    for (std::size_t k = 1; k <= 5; ++k) {
      std::vector<Slot> delta;
      for (std::size_t i = 0; i < k; ++i) delta.push_back(static_cast<Slot>(3 * i + 1));
      for (double beta : {0.5, 0.9}) {
        const EdgeDropSpec spec{beta};
        const McEstimate m = mc_collision_estimate(v, delta, spec, 100000, seed++);
        const double exact = delta_exact(k, spec);
        ++cells;
        within += std::fabs(m.estimate - exact) <= 3.0 * m.std_error ? 1 : 0;
        for (std::size_t e = 0; e <= d; ++e) dominated = dominated && delta_paper(d, e, k, spec) >= exact;
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = within * 100 >= 95 * cells && dominated && secs < 60.0;
  return {pass, fmt("%zu/%zu cells within 3 SE, bound dominates: %s, %.1fs", within, cells,
                    dominated ? "yes" : "no", secs)};
}

Outcome beta_quantiles() {
  double closed = 0.0;
  for (double n : {1.0, 10.0, 200.0}) {
    for (double q : {1e-4, 0.5, 0.999}) closed = std::max(closed, std::fabs(beta_quantile(q, n, 1.0) - std::pow(q, 1.0 / n)));
  }
  double round_trip = 0.0;
  for (double q : {0.001, 0.3, 0.95}) {
    for (double u : {0.5, 3.0, 150.0}) {
      for (double w : {1.0, 7.0, 60.0}) {
        round_trip = std::max(round_trip, std::fabs(incomplete_beta(beta_quantile(q, u, w), u, w) - q));
      }
    }
  }
  return {closed < 1e-8 && round_trip < 1e-9,
          fmt("closed form max err %.2e, 27-point round trip max err %.2e", closed, round_trip)};
}

Outcome gradient_fidelity() {
  const Graph g = edgecert::testing::random_graph(10, 0.3, 6, 2024);
  TrainConfig cfg;
  cfg.h_dim = 8;
  cfg.d_dim = 8;
  cfg.p_dim = 8;
  cfg.seed = 7;
  const EncoderParams p = init_params({6, 8, 8, 8}, 11);
  const double err = grad_check(p, g, cfg, 1e-5, 200);
  return {err < 1e-4, fmt("max relative error %.3e", err)};
}

Outcome certified_k_algebra() {
  const EdgeDropSpec spec{0.9};
  auto run = [&](double pa, double pb) {
    ConfidenceBounds b;
    b.p_a_lower = pa;
    b.p_b_upper = pb;
    return certified_k(b, 100, DeltaPolicy{}, spec, 50);
  };
  const auto a = run(0.96, 0.04);
  const auto b = run(1.0, 0.0);
  const auto c = run(0.5, 0.5);
  const bool pass = a == std::optional<std::size_t>(5) && b == std::optional<std::size_t>(6) && !c;
  auto show = [](const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : std::string("absent"); };
  return {pass, "k = " + show(a) + ", " + show(b) + ", " + show(c)};
}

Outcome end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  FixtureRun r{fixture(1, 0.5), Graph(), {}, {}};
  r.cfg.threads = 1;
  r.graph = sbm_generate(sbm_config(r.cfg));
  r.split = make_split(r.graph, r.cfg);
  r.model = train_pipeline(r.graph, r.split, r.cfg);
  const auto curve = curve_of(r);
  const double secs = seconds_since(t0);
  bool monotone = true;
  for (std::size_t i = 1; i < curve.size(); ++i) monotone = monotone && curve[i].second <= curve[i - 1].second;
  const double k0 = curve_at(curve, 0);
  const bool pass = r.model.test_accuracy >= 0.9 && k0 >= 0.8 && monotone && secs < 300.0;
  return {pass, fmt("clean test accuracy %.3f, certified accuracy at k=0 %.3f, non-increasing: %s, %.1fs single-threaded",
                    r.model.test_accuracy, k0, monotone ? "yes" : "no", secs)};
}

Outcome beta_tradeoff() {
  std::size_t wins = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto hi = curve_of(train_fixture(seed, 0.9));
    const auto lo = curve_of(train_fixture(seed, 0.5));
    const double h0 = curve_at(hi, 0);
    const double l0 = curve_at(lo, 0);
    const double hn = h0 > 0.0 ? curve_at(hi, 5) / h0 : 0.0;
    const double ln = l0 > 0.0 ? curve_at(lo, 5) / l0 : 0.0;
    wins += hn > ln ? 1 : 0;
    per_seed += fmt(" %.2f/%.2f", hn, ln);
  }
  return {wins >= 4, fmt("beta 0.9 dominates at k=5 in %zu/5 seeds (normalized 0.9/0.5:", wins) + per_seed + ")"};
}

Outcome smoothing_under_attack() {
  double base = 0.0;
  double smooth = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const FixtureRun r = train_fixture(seed, 0.9);
    const AttackOutcome out = attack_nodes(r.graph, r.split.test, r.model.encoder, r.model.classifier, r.cfg);
    base += out.base.robust_accuracy / 5.0;
    smooth += out.smoothed.robust_accuracy / 5.0;
    per_seed += fmt(" %.3f/%.3f", out.smoothed.robust_accuracy, out.base.robust_accuracy);
  }
  return {smooth > base, fmt("mean robust accuracy smoothed %.4f vs unsmoothed %.4f (per seed:", smooth, base) +
                             per_seed + ")"};
}

Outcome certificate_soundness() {
  const FixtureRun r = train_fixture(1, 0.9);
  const auto certs = certify_nodes(r.graph, r.split.test, r.model.encoder, r.model.classifier, r.cfg);
  std::vector<const Certificate*> picked;
  for (const Certificate& c : certs) {
    if (c.certified_k && *c.certified_k >= 3 && picked.size() < 20) picked.push_back(&c);
  }
  if (picked.size() < 20) return {false, fmt("only %zu test nodes certified at k >= 3", picked.size())};

  const std::size_t reruns = 100;
  const std::uint64_t base_seed = derive_seed(r.cfg.seed, "soundness");
  std::vector<std::size_t> agree(picked.size(), 0);
  parallel_for(picked.size(), [&](std::size_t i) {
    const Certificate& c = *picked[i];
    const std::uint64_t node_seed = derive_seed(base_seed, c.node);
    for (std::size_t run = 0; run < reruns; ++run) {
      const std::uint64_t s = derive_seed(node_seed, run);
      const Graph attacked = r.graph.with_added_edges(random_targeted_attack(r.graph, c.node, 3, derive_seed(s, "attack")));
      const VoteTally t = smoothed_predict(attacked, c.node, r.model.encoder, r.model.classifier, r.cfg.smoothing.mu,
                                           r.cfg.smoothing.spec, r.cfg.smoothing.k_hop, derive_seed(s, "vote"));
      agree[i] += majority_class(t) == c.c_a ? 1 : 0;
    }
  });
  const double need = (1.0 - r.cfg.smoothing.alpha) * static_cast<double>(reruns);
  std::size_t good = 0;
  std::size_t worst = reruns;
  for (std::size_t a : agree) {
    good += static_cast<double>(a) >= need ? 1 : 0;
    worst = std::min(worst, a);
  }
  return {good >= 19, fmt("%zu/20 nodes keep c_a in >= %.1f of %zu reruns (worst node %zu)", good, need, reruns, worst)};
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

// train_log.csv minus its wall_time_ms column.
std::string strip_timing(const fs::path& p) {
  std::istringstream in(read_file(p));
  std::string line;
  std::string out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

Outcome determinism() {
  edgecert::testing::TempDir dir("acceptance");
  std::vector<fs::path> outs{dir.path() / "run1", dir.path() / "run2"};
  for (const auto& out : outs) {
    ExperimentConfig cfg = fixture(3, 0.9);
    cfg.out = out;
    cmd_gen(cfg);
    cmd_train(cfg);
    cmd_certify(cfg);
    cmd_attack(cfg);
    cmd_report(cfg);
  }
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::recursive_directory_iterator(outs[0])) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), outs[0]);
    const bool timing = rel.filename() == files::kTrainLog;
    const std::string a = timing ? strip_timing(outs[0] / rel) : read_file(outs[0] / rel);
    const std::string b = timing ? strip_timing(outs[1] / rel) : read_file(outs[1] / rel);
    ++compared;
    if (a != b || !fs::exists(outs[1] / rel)) differing.push_back(rel.string());
  }
  std::string detail = fmt("%zu output files compared", compared);
  for (const auto& d : differing) detail += ", differs: " + d;
  return {differing.empty() && compared >= 14, detail};
}

Outcome weibull_probe() {
  Rng rng(derive_seed(10, "weibull"));
  std::vector<double> s(5000);
  for (auto& x : s) x = 0.3 * std::pow(-std::log1p(-uniform01(rng)), 0.5);
  const WeibullFit f = fit_reverse_weibull(s, s.size());
  const double ea = std::fabs(f.a - 0.3) / 0.3;
  const double es = std::fabs(f.sigma - 2.0) / 2.0;
  bool monotone = true;
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double p = positive_prob(-1.0 + 2.0 * i / 99.0, f);
    monotone = monotone && p > prev;
    prev = p;
  }
  return {ea < 0.05 && es < 0.05 && monotone,
          fmt("a = %.4f (%.2f%%), sigma = %.4f (%.2f%%), monotone: %s", f.a, 100 * ea, f.sigma, 100 * es,
              monotone ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"collision probability oracle", collision_oracle},
      {"beta quantile correctness", beta_quantiles},
      {"gradient fidelity", gradient_fidelity},
      {"certified-k algebra", certified_k_algebra},
      {"end-to-end fixture", end_to_end},
      {"beta tradeoff shape", beta_tradeoff},
      {"smoothing helps under attack", smoothing_under_attack},
      {"empirical certificate soundness", certificate_soundness},
      {"determinism", determinism},
      {"Weibull probe", weibull_probe},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
