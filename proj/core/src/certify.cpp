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

#include "edgecert/certify.hpp"

#include <algorithm>
#include <string>

#include "edgecert/errors.hpp"
#include "edgecert/special.hpp"

namespace edgecert {

int base_predict(const Graph& g, NodeId node, const EncoderParams& enc, const LogRegModel& clf,
                 std::size_t k_hop) {
  const Subgraph sub = khop_subgraph(g, node, k_hop);
  return predict(clf, node_embedding(sub.graph, sub.center, enc).transpose());
}

VoteTally smoothed_predict(const Graph& g, NodeId node, const EncoderParams& enc,
                           const LogRegModel& clf, std::size_t mu, const EdgeDropSpec& spec,
                           std::size_t k_hop, std::uint64_t seed) {
  if (mu == 0) throw PreconditionError("smoothed_predict needs mu >= 1");
  if (node >= g.n_nodes()) throw RangeError("node " + std::to_string(node) + " out of range");
  spec.validate();

  const Subgraph sub = khop_subgraph(g, node, k_hop);
  const std::size_t n = sub.graph.n_nodes();
  const StructVector sv = to_struct_vector(sub.graph);
  const Eigen::MatrixXd xw1 = sub.graph.features() * enc.W1;

  VoteTally tally;
  tally.counts.assign(clf.n_classes(), 0);
  tally.mu = mu;
  tally.target_node = node;
  for (std::size_t draw = 1; draw <= mu; ++draw) {
    const NoiseDraw eps = sample_edgedrop(sv, spec, seed, draw);
    int c = 0;
    if (eps.toggled.empty()) {
      c = predict(clf, node_embedding(sub.graph, sub.center, enc, &xw1).transpose());
    } else {
      const Graph noisy = from_struct_vector(apply_xor(sv, eps), n, sub.graph.features());
      c = predict(clf, node_embedding(noisy, sub.center, enc, &xw1).transpose());
    }
    ++tally.counts[static_cast<std::size_t>(c)];
  }
  return tally;
}

int majority_class(const VoteTally& t) {
  if (t.mu == 0 || t.counts.empty()) throw PreconditionError("empty vote tally");
  return static_cast<int>(std::max_element(t.counts.begin(), t.counts.end()) - t.counts.begin());
}

ConfidenceBounds confidence_bounds(const VoteTally& t, double alpha, std::size_t n_classes) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (t.mu == 0) throw PreconditionError("empty vote tally");
  if (n_classes < 2) throw PreconditionError("certification needs at least two classes");
  if (t.counts.size() > n_classes) throw ShapeError("tally has more classes than n_classes");
  std::size_t total = 0;
  for (std::size_t c : t.counts) total += c;
  if (total != t.mu) throw PreconditionError("vote counts do not sum to mu");

  const double mu = static_cast<double>(t.mu);
  const double q = alpha / static_cast<double>(n_classes);
  ConfidenceBounds b;
  b.alpha = alpha;
  b.n_classes = n_classes;
  b.c_a = majority_class(t);
  const double mu_a = static_cast<double>(t.counts[static_cast<std::size_t>(b.c_a)]);
  b.p_a_lower = beta_quantile(q, mu_a, mu - mu_a + 1.0);

  double runner_up = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (static_cast<int>(c) == b.c_a) continue;
    const double mu_c = c < t.counts.size() ? static_cast<double>(t.counts[c]) : 0.0;
    const double upper = mu - mu_c == 0.0 ? 1.0 : beta_quantile(1.0 - q, mu_c + 1.0, mu - mu_c);
    runner_up = std::max(runner_up, upper);
  }
  b.p_b_upper = std::min(runner_up, 1.0 - b.p_a_lower);
  return b;
}

std::optional<std::size_t> certified_k(const ConfidenceBounds& b, std::size_t d,
                                       const DeltaPolicy& policy, const EdgeDropSpec& spec,
                                       std::size_t k_max) {
  const double margin = b.p_a_lower - b.p_b_upper;
  std::optional<std::size_t> best;
  // Delta is nondecreasing in k, so the first failure ends the scan.
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (!(margin > 2.0 * delta_for(policy, d, k, spec))) break;
    best = k;
  }
  return best;
}

Certificate certify_node(const Graph& g, NodeId node, const EncoderParams& enc,
                         const LogRegModel& clf, const SmoothingConfig& cfg, std::uint64_t seed) {
  const VoteTally tally = smoothed_predict(g, node, enc, clf, cfg.mu, cfg.spec, cfg.k_hop, seed);
  Certificate cert;
  cert.node = node;
  cert.bounds = confidence_bounds(tally, cfg.alpha, clf.n_classes());
  cert.c_a = cert.bounds.c_a;
  cert.delta_mode = cfg.policy;
  cert.d = khop_subgraph(g, node, cfg.k_hop).graph.n_edges();
  cert.mu = tally.mu;
  cert.votes_c_a = tally.counts[static_cast<std::size_t>(cert.c_a)];
  const std::size_t k_max = cfg.k_max.value_or(std::min<std::size_t>(50, cert.d));
  cert.certified_k = certified_k(cert.bounds, cert.d, cfg.policy, cfg.spec, k_max);
  return cert;
}

std::vector<std::pair<std::size_t, double>> certified_accuracy(std::span<const Certificate> certs,
                                                               std::span<const int> truth,
                                                               std::span<const std::size_t> k_grid) {
  if (certs.size() != truth.size()) throw ShapeError("certificates and labels are not aligned");
  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(k_grid.size());
  for (std::size_t k : k_grid) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto& c = certs[i];
      if (c.c_a == truth[i] && c.certified_k && *c.certified_k >= k) ++hits;
    }
    curve.emplace_back(k, certs.empty() ? 0.0
                                        : static_cast<double>(hits) / static_cast<double>(certs.size()));
  }
  return curve;
}

}  // namespace edgecert
