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
#include <vector>

#include "edgecert/encoder.hpp"
#include "edgecert/graph.hpp"
#include "edgecert/logreg.hpp"
#include "edgecert/noise.hpp"

namespace edgecert {

enum class AttackMode { kTargeted, kGlobal };

struct AttackSpec {
  AttackMode mode = AttackMode::kTargeted;
  std::size_t budget = 5;  // targeted: new edges per target
  double rate = 0.1;       // global: fraction of |E| added
  std::uint64_t seed = 0;

  void validate() const;
};

class BudgetInfeasible : public Error {
 public:
  using Error::Error;
};

// `budget` absent pairs incident to target or one of its neighbors, drawn
// uniformly without replacement.
std::vector<Edge> random_targeted_attack(const Graph& g, NodeId target, std::size_t budget,
                                         std::uint64_t seed);

// g plus ceil(rate * |E|) uniformly drawn absent pairs.
Graph random_global_attack(const Graph& g, double rate, std::uint64_t seed);

struct SmoothingSetup {
  std::size_t mu = 200;
  EdgeDropSpec spec;
};

struct AttackRow {
  NodeId node = 0;
  std::size_t budget = 0;
  bool attacked = false;  // the node's k-hop subgraph changed
  int clean_pred = 0;
  int attacked_pred = 0;
  bool correct = false;
};

struct EvasionResult {
  double robust_accuracy = 0.0;
  std::vector<AttackRow> rows;
};

// Attacks each target on the clean-trained pipeline and scores the prediction
// against its label: base pipeline when `smoothing` is unset, majority vote of
// smoothed_predict otherwise. Targets are evaluated in parallel.
EvasionResult evasion_eval(const Graph& g, std::span<const NodeId> targets,
                           const EncoderParams& enc, const LogRegModel& clf,
                           const AttackSpec& atk, const std::optional<SmoothingSetup>& smoothing,
                           std::size_t k_hop, std::uint64_t seed, std::size_t threads = 0);

}  // namespace edgecert
