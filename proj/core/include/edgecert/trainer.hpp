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

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgecert/encoder.hpp"
#include "edgecert/graph.hpp"

namespace edgecert {

// Two-view augmentation settings; index 0 is the view that receives the
// edgedrop noise, index 1 the clean contrast view.
struct AugConfig {
  std::array<double, 2> p_edge_drop{0.2, 0.4};
  std::array<double, 2> p_feat_mask{0.3, 0.4};
  double temperature = 0.5;
  double res_beta_drop = 0.9;
  // Off reproduces plain two-view training.
  bool inject_noise = true;

  void validate() const;
};

struct TrainConfig {
  std::size_t epochs = 200;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  std::size_t h_dim = 64;
  std::size_t d_dim = 32;
  std::size_t p_dim = 32;
  AugConfig aug;

  void validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double loss = 0.0;
  double wall_ms = 0.0;
};

struct TrainResult {
  EncoderParams params;
  std::vector<EpochLog> log;
};

class TrainingError : public Error {
 public:
  TrainingError(std::size_t epoch, double loss);
  std::size_t epoch() const noexcept { return epoch_; }
  double loss() const noexcept { return loss_; }

 private:
  std::size_t epoch_;
  double loss_;
};

// Drops each edge with p_edge_drop and zeroes each feature column with
// p_feat_mask. Deterministic in (seed, tag).
Graph augment(const Graph& g, double p_edge_drop, double p_feat_mask, std::uint64_t seed,
              std::uint64_t tag);

// Symmetric InfoNCE over cosine similarities. Anchor i in one view has the
// same row of the other view as positive and every other row of both views
// as negatives.
double info_nce_loss(const Eigen::MatrixXd& h1, const Eigen::MatrixXd& h2, double temperature);

// Same loss plus gradients with respect to h1 and h2.
double info_nce_loss_grad(const Eigen::MatrixXd& h1, const Eigen::MatrixXd& h2, double temperature,
                          Eigen::MatrixXd& d_h1, Eigen::MatrixXd& d_h2);

struct ViewPair {
  Graph noisy;  // augmented, then edgedrop noise
  Graph clean;  // augmented only
};

// Views used at a given epoch (1-based) of a run with this config.
ViewPair make_views(const Graph& g, const TrainConfig& cfg, std::size_t epoch);

// Loss of both views under p, optionally with its parameter gradient.
double contrastive_objective(const ViewPair& views, const EncoderParams& p, double temperature,
                             EncoderParams* grad = nullptr);

TrainResult train_res(const Graph& g, const TrainConfig& cfg);

// Max relative error between the analytic gradient and central differences
// over (up to) n_params randomly chosen parameters, on the epoch-1 views.
double grad_check(const EncoderParams& p, const Graph& g, const TrainConfig& cfg, double h,
                  std::size_t n_params = 50);

}  // namespace edgecert
