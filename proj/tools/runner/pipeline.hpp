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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgecert/attack.hpp"
#include "edgecert/certify.hpp"
#include "edgecert/encoder.hpp"
#include "edgecert/graph.hpp"
#include "edgecert/logreg.hpp"
#include "edgecert/trainer.hpp"
#include "runner/config.hpp"

namespace edgecert::runner {

// In-memory building blocks shared by the subcommands and the acceptance suite.

struct Split {
  std::vector<NodeId> train, val, test;
};

// Per-class shuffle, then the train / val / test fractions of each class.
Split make_split(const Graph& g, const ExperimentConfig& cfg);

struct TrainedPipeline {
  EncoderParams encoder;
  LogRegModel classifier;
  std::vector<EpochLog> log;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
};

// Contrastive training on the whole graph (labels unused), then logistic
// regression on full-graph embeddings of the train split.
TrainedPipeline train_pipeline(const Graph& g, const Split& split, const ExperimentConfig& cfg);

// Effective training config for a run: seeds and noise level taken from cfg.
TrainConfig effective_train_config(const ExperimentConfig& cfg);

std::vector<Certificate> certify_nodes(const Graph& g, std::span<const NodeId> nodes,
                                       const EncoderParams& enc, const LogRegModel& clf,
                                       const ExperimentConfig& cfg);

struct AttackOutcome {
  EvasionResult base;
  EvasionResult smoothed;
};

AttackOutcome attack_nodes(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                           const LogRegModel& clf, const ExperimentConfig& cfg);

// Latent-space probe per node: the clean projection of v is the positive, one
// whole-graph edgedrop draw gives the perturbed representation, and every
// other node's clean projection is a negative.
struct ProbeRow {
  NodeId node = 0;
  double s_pos = 0.0;
  double max_s_neg = 0.0;
  bool latent_robust = false;
  std::optional<double> positive_prob;  // unset when the Weibull fit degenerates
};

std::vector<ProbeRow> probe_nodes(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                                  const ExperimentConfig& cfg);

// Accuracy of the base (k-hop) pipeline with no attack.
double base_accuracy(const Graph& g, std::span<const NodeId> nodes, const EncoderParams& enc,
                     const LogRegModel& clf, std::size_t k_hop);

// ----- subcommands -----

// File names inside the output directory.
namespace files {
inline constexpr const char* kDataDir = "data";
inline constexpr const char* kEdges = "edges.txt";
inline constexpr const char* kFeatures = "features.txt";
inline constexpr const char* kLabels = "labels.txt";
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kEncoder = "encoder.ckpt";
inline constexpr const char* kClassifier = "classifier.ckpt";
inline constexpr const char* kTrainLog = "train_log.csv";
inline constexpr const char* kTrainSummary = "train_summary.json";
inline constexpr const char* kCertifyReport = "certify_report.csv";
inline constexpr const char* kCertifiedAccuracy = "certified_accuracy.csv";
inline constexpr const char* kProbeReport = "probe_report.csv";
inline constexpr const char* kAttackBase = "attack_report_base.csv";
inline constexpr const char* kAttackSmoothed = "attack_report_smoothed.csv";
inline constexpr const char* kAttackSummary = "attack_summary.json";
inline constexpr const char* kReport = "report.json";
}  // namespace files

void cmd_gen(const ExperimentConfig& cfg);
void cmd_train(const ExperimentConfig& cfg);
void cmd_certify(const ExperimentConfig& cfg);
void cmd_attack(const ExperimentConfig& cfg);
void cmd_report(const ExperimentConfig& cfg);

// Dataset for a run: the generated fixture under out/data for sbm configs,
// the configured paths otherwise.
Graph load_dataset(const ExperimentConfig& cfg);

// Problems with a report document; empty when it matches the schema.
std::vector<std::string> validate_report(const nlohmann::json& report);

}  // namespace edgecert::runner
