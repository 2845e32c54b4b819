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

#include "edgecert/graph.hpp"

namespace edgecert {

// beta_drop is the probability that each present edge is removed.
struct EdgeDropSpec {
  double beta_drop = 0.9;

  void validate() const;
};

struct NoiseDraw {
  std::vector<Slot> toggled;  // strictly increasing
};

enum class DeltaMode { kExact, kPaper };

// kExact: 1 - beta^k. kPaper: 1 - C(d,e)/C(d+k,e) * beta^k with e either a
// fixed retained-edge count or round(d * (1 - beta)) when unset.
struct DeltaPolicy {
  DeltaMode mode = DeltaMode::kExact;
  std::optional<std::size_t> fixed_e;
};

NoiseDraw sample_edgedrop(const StructVector& v, const EdgeDropSpec& spec, std::uint64_t seed,
                          std::uint64_t draw_index);

// Toggles every slot of the universe, present or absent, with probability p_flip.
NoiseDraw sample_flip(const StructVector& v, double p_flip, std::uint64_t seed,
                      std::uint64_t draw_index);

// Symmetric difference of v.present and eps.toggled.
StructVector apply_xor(const StructVector& v, const NoiseDraw& eps);

double delta_exact(std::size_t k, const EdgeDropSpec& spec);
double delta_paper(std::size_t d, std::size_t e, std::size_t k, const EdgeDropSpec& spec);
double delta_for(const DeltaPolicy& policy, std::size_t d, std::size_t k, const EdgeDropSpec& spec);

// log C(n, r) via lgamma.
double log_choose(double n, double r);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Fraction of edgedrop draws on v' = v xor delta in which at least one slot of
// delta survives.
McEstimate mc_collision_estimate(const StructVector& v, std::span<const Slot> delta_slots,
                                 const EdgeDropSpec& spec, std::size_t trials, std::uint64_t seed);

}  // namespace edgecert
