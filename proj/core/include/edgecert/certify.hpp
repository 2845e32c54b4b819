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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "edgecert/encoder.hpp"
#include "edgecert/graph.hpp"
#include "edgecert/logreg.hpp"
#include "edgecert/noise.hpp"

namespace edgecert {

struct VoteTally {
  std::vector<std::size_t> counts;  // indexed by class id
  std::size_t mu = 0;
  NodeId target_node = 0;
};

struct ConfidenceBounds {
  int c_a = 0;
  double p_a_lower = 0.0;
  double p_b_upper = 1.0;
  double alpha = 0.001;
  std::size_t n_classes = 2;
};

struct SmoothingConfig {
  std::size_t mu = 200;
  EdgeDropSpec spec;
  std::size_t k_hop = 2;
  double alpha = 0.001;
  DeltaPolicy policy;
  // Unset: min(50, d) with d the node's subgraph edge count.
  std::optional<std::size_t> k_max;
};

struct Certificate {
  NodeId node = 0;
  int c_a = 0;
  std::optional<std::size_t> certified_k;
  ConfidenceBounds bounds;
  DeltaPolicy delta_mode;
  std::size_t d = 0;
  std::size_t mu = 0;
  std::size_t votes_c_a = 0;
};

// Undefended prediction: encoder on the node's k-hop subgraph, then classifier.
int base_predict(const Graph& g, NodeId node, const EncoderParams& enc, const LogRegModel& clf,
                 std::size_t k_hop);

// Monte-Carlo votes of the classifier over mu edgedrop draws of the node's
// k-hop structure vector. Draw i uses (seed, i), i = 1..mu.
VoteTally smoothed_predict(const Graph& g, NodeId node, const EncoderParams& enc,
                           const LogRegModel& clf, std::size_t mu, const EdgeDropSpec& spec,
                           std::size_t k_hop, std::uint64_t seed);

// Largest count, smallest class id on ties.
int majority_class(const VoteTally& t);

// Lower bound for the top class and upper bound for the runner-up, each at
// confidence alpha / n_classes via Beta quantiles.
ConfidenceBounds confidence_bounds(const VoteTally& t, double alpha, std::size_t n_classes);

// Largest k <= k_max with p_a_lower - p_b_upper > 2 * Delta(k); nullopt when
// even k = 0 fails.
std::optional<std::size_t> certified_k(const ConfidenceBounds& b, std::size_t d,
                                       const DeltaPolicy& policy, const EdgeDropSpec& spec,
                                       std::size_t k_max);

Certificate certify_node(const Graph& g, NodeId node, const EncoderParams& enc,
                         const LogRegModel& clf, const SmoothingConfig& cfg, std::uint64_t seed);

// Fraction of nodes with c_a == truth and certified_k >= k, for each k.
std::vector<std::pair<std::size_t, double>> certified_accuracy(std::span<const Certificate> certs,
                                                               std::span<const int> truth,
                                                               std::span<const std::size_t> k_grid);

}  // namespace edgecert
