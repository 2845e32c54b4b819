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

#include "edgecert/noise.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "edgecert/errors.hpp"
#include "edgecert/rng.hpp"

namespace edgecert {

void EdgeDropSpec::validate() const {
  if (!(beta_drop >= 0.0 && beta_drop < 1.0)) {
    throw DomainError("beta_drop must lie in [0, 1), got " + std::to_string(beta_drop));
  }
}

NoiseDraw sample_edgedrop(const StructVector& v, const EdgeDropSpec& spec, std::uint64_t seed,
                          std::uint64_t draw_index) {
  spec.validate();
  NoiseDraw eps;
  if (spec.beta_drop == 0.0) return eps;
  Rng rng = make_rng(seed, draw_index);
  eps.toggled.reserve(static_cast<std::size_t>(
      static_cast<double>(v.present.size()) * spec.beta_drop + 8.0));
  for (Slot s : v.present) {
    if (bernoulli(rng, spec.beta_drop)) eps.toggled.push_back(s);
  }
  return eps;
}

NoiseDraw sample_flip(const StructVector& v, double p_flip, std::uint64_t seed,
                      std::uint64_t draw_index) {
  if (!(p_flip >= 0.0 && p_flip <= 1.0)) throw DomainError("p_flip must lie in [0, 1]");
  NoiseDraw eps;
  if (p_flip == 0.0) return eps;
  Rng rng = make_rng(seed, draw_index);
  for (Slot s = 0; s < v.universe; ++s) {
    if (bernoulli(rng, p_flip)) eps.toggled.push_back(s);
  }
  return eps;
}

StructVector apply_xor(const StructVector& v, const NoiseDraw& eps) {
  if (!eps.toggled.empty() && eps.toggled.back() >= v.universe) {
    throw RangeError("noise slot " + std::to_string(eps.toggled.back()) + " >= universe " +
                     std::to_string(v.universe));
  }
  StructVector out;
  out.universe = v.universe;
  out.present.reserve(v.present.size() + eps.toggled.size());
  std::set_symmetric_difference(v.present.begin(), v.present.end(), eps.toggled.begin(),
                                eps.toggled.end(), std::back_inserter(out.present));
  return out;
}

double delta_exact(std::size_t k, const EdgeDropSpec& spec) {
  spec.validate();
  if (k == 0) return 0.0;
  return std::clamp(1.0 - std::pow(spec.beta_drop, static_cast<double>(k)), 0.0, 1.0);
}

double log_choose(double n, double r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double delta_paper(std::size_t d, std::size_t e, std::size_t k, const EdgeDropSpec& spec) {
  spec.validate();
  if (e > d) {
    throw DomainError("retained edges e=" + std::to_string(e) + " exceed d=" + std::to_string(d));
  }
  if (k == 0) return 0.0;
  if (spec.beta_drop == 0.0) return 1.0;
  const double dd = static_cast<double>(d);
  const double ee = static_cast<double>(e);
  const double kk = static_cast<double>(k);
  const double log_keep =
      log_choose(dd, ee) - log_choose(dd + kk, ee) + kk * std::log(spec.beta_drop);
  return std::clamp(1.0 - std::exp(log_keep), 0.0, 1.0);
}

double delta_for(const DeltaPolicy& policy, std::size_t d, std::size_t k, const EdgeDropSpec& spec) {
  if (policy.mode == DeltaMode::kExact) return delta_exact(k, spec);
  std::size_t e = 0;
  if (policy.fixed_e) {
    e = *policy.fixed_e;
  } else {
    e = static_cast<std::size_t>(std::llround(static_cast<double>(d) * (1.0 - spec.beta_drop)));
    e = std::min(e, d);
  }
  return delta_paper(d, e, k, spec);
}

McEstimate mc_collision_estimate(const StructVector& v, std::span<const Slot> delta_slots,
                                 const EdgeDropSpec& spec, std::size_t trials, std::uint64_t seed) {
  spec.validate();
  if (trials == 0) throw PreconditionError("mc_collision_estimate needs at least one trial");
  std::vector<Slot> delta(delta_slots.begin(), delta_slots.end());
  std::sort(delta.begin(), delta.end());
  if (std::adjacent_find(delta.begin(), delta.end()) != delta.end()) {
    throw PreconditionError("perturbation slots must be distinct");
  }
  for (Slot s : delta) {
    if (s >= v.universe) throw RangeError("perturbation slot out of universe");
    if (std::binary_search(v.present.begin(), v.present.end(), s)) {
      throw PreconditionError("perturbation slot " + std::to_string(s) +
                              " overlaps an existing edge");
    }
  }
  McEstimate out;
  if (delta.empty()) return out;

  const StructVector perturbed = apply_xor(v, NoiseDraw{delta});
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const NoiseDraw eps = sample_edgedrop(perturbed, spec, seed, t);
    // A perturbation slot survives unless the draw toggles (drops) it.
    std::size_t dropped = 0;
    for (Slot s : delta) {
      if (std::binary_search(eps.toggled.begin(), eps.toggled.end(), s)) ++dropped;
    }
    if (dropped < delta.size()) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  out.estimate = p;
  out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return out;
}

}  // namespace edgecert
