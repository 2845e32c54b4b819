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

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "edgecert/errors.hpp"
#include "runner/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace edgecert;
using namespace edgecert::runner;
using edgecert::testing::slurp;
using edgecert::testing::TempDir;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_run(const fs::path& out, std::uint64_t seed = 3) {
  ExperimentConfig cfg = parse_config(R"(
sbm.center_scale = 3.0
train.epochs = 30
smoothing.mu = 60
smoothing.beta_drop = 0.9
attack.budget = 5
)");
  cfg.seed = seed;
  cfg.out = out;
  cfg.threads = 2;
  return cfg;
}

void run_all(const ExperimentConfig& cfg) {
  cmd_gen(cfg);
  cmd_train(cfg);
  cmd_certify(cfg);
  cmd_attack(cfg);
  cmd_report(cfg);
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(f, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// train_log carries wall-clock times; compare everything but that column.
std::string without_wall_time(const fs::path& p) {
  std::string out;
  for (const auto& row : csv_rows(p)) out += row.at(0) + "," + row.at(1) + "\n";
  return out;
}

}  // namespace

TEST_CASE("split is stratified, disjoint and complete") {
  const ExperimentConfig cfg = small_run("unused");
  const Graph g = sbm_generate(sbm_config(cfg));
  const Split s = make_split(g, cfg);
  std::set<NodeId> all;
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    CHECK(std::is_sorted(part->begin(), part->end()));
    all.insert(part->begin(), part->end());
  }
  CHECK(all.size() == s.train.size() + s.val.size() + s.test.size());
  CHECK(all.size() == g.n_nodes());
  CHECK(s.train.size() == 10);
  CHECK(s.val.size() == 10);
  for (int c = 0; c < 2; ++c) {
    std::size_t in_train = 0;
    for (NodeId v : s.train) in_train += g.labels()[v] == c ? 1 : 0;
    CHECK(in_train == 5);
  }
  const Split again = make_split(g, cfg);
  CHECK(again.test == s.test);
}

TEST_CASE("end-to-end run through the subcommands") {
  TempDir dir("pipeline");
  const ExperimentConfig cfg = small_run(dir.path() / "a");
  run_all(cfg);
  const fs::path out = cfg.out;
  const std::string hash = config_hash(cfg);

  for (const char* f : {files::kTrainLog, files::kCertifyReport, files::kCertifiedAccuracy, files::kProbeReport,
                        files::kAttackBase, files::kAttackSmoothed}) {
    std::ifstream in(out / f);
    std::string first;
    std::getline(in, first);
    CHECK_MESSAGE(first == "# config_hash=" + hash, f);
  }

  const auto report = nlohmann::json::parse(slurp(out / files::kReport));
  CHECK(validate_report(report).empty());
  CHECK(report.at("inputs").at("hashes_consistent") == true);
  CHECK(report.at("config_hash") == hash);

  const auto manifest = nlohmann::json::parse(slurp(out / files::kDataDir / files::kManifest));
  CHECK(manifest.at("n_nodes") == 100);
  CHECK(manifest.at("generator_seed") == stage_seed(cfg, "sbm"));

  // Train log: header plus one row per epoch.
  const auto log = csv_rows(out / files::kTrainLog);
  CHECK(log.size() == cfg.train.epochs + 1);
  CHECK(log.front() == std::vector<std::string>{"epoch", "loss", "wall_time_ms"});

  // Certification covers exactly the test split.
  const Graph g = load_dataset(cfg);
  const Split split = make_split(g, cfg);
  const auto cert = csv_rows(out / files::kCertifyReport);
  REQUIRE(cert.size() == split.test.size() + 1);
  for (std::size_t i = 0; i < split.test.size(); ++i) CHECK(std::stoul(cert[i + 1][0]) == split.test[i]);

  const auto curve = csv_rows(out / files::kCertifiedAccuracy);
  REQUIRE(curve.size() == cfg.k_grid.size() + 1);
  double prev = 2.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double a = std::stod(curve[i][1]);
    CHECK(a <= prev);
    prev = a;
  }
  const auto probe = csv_rows(out / files::kProbeReport);
  REQUIRE(probe.size() == split.test.size() + 1);
  CHECK(probe.front() == std::vector<std::string>{"node_id", "s_pos", "max_s_neg", "latent_robust", "positive_prob"});
  for (std::size_t i = 1; i < probe.size(); ++i) {
    const double s_pos = std::stod(probe[i][1]);
    const double s_neg = std::stod(probe[i][2]);
    CHECK((probe[i][3] == "true") == (s_pos > s_neg));
    if (!probe[i][4].empty()) {
      const double p = std::stod(probe[i][4]);
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }

  const auto base = csv_rows(out / files::kAttackBase);
  CHECK(base.size() == split.test.size() + 1);

  // The report is a pure function of its inputs.
  const std::string first_report = slurp(out / files::kReport);
  cmd_report(cfg);
  CHECK(slurp(out / files::kReport) == first_report);

  SUBCASE("a second run reproduces every artifact") {
    ExperimentConfig twin = cfg;
    twin.out = dir.path() / "b";
    twin.threads = 1;
    run_all(twin);
    for (const char* f : {files::kEncoder, files::kClassifier, files::kTrainSummary, files::kCertifyReport,
                          files::kCertifiedAccuracy, files::kProbeReport, files::kAttackBase, files::kAttackSmoothed, files::kAttackSummary,
                          files::kReport}) {
      CHECK_MESSAGE(slurp(out / f) == slurp(twin.out / f), f);
    }
    for (const char* f : {files::kEdges, files::kFeatures, files::kLabels, files::kManifest}) {
      CHECK_MESSAGE(slurp(out / files::kDataDir / f) == slurp(twin.out / files::kDataDir / f), f);
    }
    CHECK(without_wall_time(out / files::kTrainLog) == without_wall_time(twin.out / files::kTrainLog));
  }
}

TEST_CASE("subcommands report missing inputs") {
  TempDir dir("missing");
  const ExperimentConfig cfg = small_run(dir.path());
  CHECK_THROWS_AS(cmd_train(cfg), IoError);
  cmd_gen(cfg);
  CHECK_THROWS_AS(cmd_certify(cfg), IoError);
  CHECK_THROWS_AS(cmd_attack(cfg), IoError);
  try {
    cmd_report(cfg);
    FAIL("expected missing inputs");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(files::kEncoder) != std::string::npos);
  }
}

TEST_CASE("zero budget and zero noise degenerate cases") {
  TempDir dir("degenerate");
  ExperimentConfig cfg = small_run(dir.path());
  cfg.smoothing.spec.beta_drop = 0.0;
  cfg.attack.budget = 0;
  cfg.smoothing.mu = 5;
  cmd_gen(cfg);
  const Graph g = load_dataset(cfg);
  const Split split = make_split(g, cfg);
  const TrainedPipeline tp = train_pipeline(g, split, cfg);

  const AttackOutcome out = attack_nodes(g, split.test, tp.encoder, tp.classifier, cfg);
  CHECK(out.base.robust_accuracy ==
        doctest::Approx(base_accuracy(g, split.test, tp.encoder, tp.classifier, cfg.smoothing.k_hop)));
  CHECK(out.smoothed.robust_accuracy == out.base.robust_accuracy);

  for (const Certificate& c : certify_nodes(g, split.test, tp.encoder, tp.classifier, cfg)) {
    CHECK((!c.certified_k || *c.certified_k == 0));
  }
}

TEST_CASE("smoothed majority is stable across reruns") {
  ExperimentConfig cfg = small_run("unused", 1);
  cfg.smoothing.spec.beta_drop = 0.5;
  cfg.smoothing.mu = 200;
  const Graph g = sbm_generate(sbm_config(cfg));
  const Split split = make_split(g, cfg);
  const TrainedPipeline tp = train_pipeline(g, split, cfg);
  std::size_t stable = 0;
  for (NodeId v : split.test) {
    const int a = majority_class(smoothed_predict(g, v, tp.encoder, tp.classifier, 200, cfg.smoothing.spec, 2, 1000 + v));
    const int b = majority_class(smoothed_predict(g, v, tp.encoder, tp.classifier, 200, cfg.smoothing.spec, 2, 5000 + v));
    stable += a == b ? 1 : 0;
  }
  CHECK(static_cast<double>(stable) >= 0.99 * static_cast<double>(split.test.size()));
}

TEST_CASE("validate_report flags malformed documents") {
  CHECK_FALSE(validate_report(nlohmann::json::object()).empty());
  nlohmann::json r = {{"schema", "other"}, {"schema_version", 2}, {"config_hash", "abc"}};
  const auto errs = validate_report(r);
  auto mentions = [&](const std::string& s) {
    for (const auto& e : errs) {
      if (e.find(s) != std::string::npos) return true;
    }
    return false;
  };
  CHECK(mentions("schema"));
  CHECK(mentions("schema_version"));
  CHECK(mentions("config_hash"));
  CHECK(mentions("missing clean"));
}
