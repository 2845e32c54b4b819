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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgecert/attack.hpp"
#include "edgecert/certify.hpp"
#include "edgecert/graph.hpp"
#include "edgecert/logreg.hpp"
#include "edgecert/trainer.hpp"

namespace edgecert::runner {

inline constexpr int kConfigVersion = 1;

enum class DatasetKind { kSbm, kFiles };

struct SbmParams {
  std::size_t blocks = 2;
  std::size_t nodes_per_block = 50;
  double p_in = 0.2;
  double p_out = 0.01;
  std::size_t feature_dim = 8;
  // Block b's center is center_scale * e_(b mod feature_dim).
  double center_scale = 1.0;
  double feature_noise_sd = 1.0;
};

struct SplitParams {
  double train = 0.1;
  double val = 0.1;
  double test = 0.8;
};

struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::kSbm;
  std::filesystem::path edges_path;
  std::filesystem::path features_path;
  std::filesystem::path labels_path;
  SbmParams sbm;
  SplitParams split;
  TrainConfig train;
  LogRegOptions linear;
  SmoothingConfig smoothing;
  std::vector<std::size_t> k_grid{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  AttackSpec attack;
  std::uint64_t seed = 0;
  std::filesystem::path out = "edgecert-out";
  std::size_t threads = 0;

  void validate() const;
};

// Flat "key = value" document; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical "key = value" lines for every setting, sorted by key.
std::map<std::string, std::string> canonical_settings(const ExperimentConfig& cfg);
std::string to_config_text(const ExperimentConfig& cfg);

// 16 hex digits over the canonical settings, excluding `out` and `threads`,
// which never change results.
std::string config_hash(const ExperimentConfig& cfg);

SbmConfig sbm_config(const ExperimentConfig& cfg);

// Named sub-streams of the root seed.
std::uint64_t stage_seed(const ExperimentConfig& cfg, const char* stage);

}  // namespace edgecert::runner
