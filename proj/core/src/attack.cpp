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

#include "edgecert/attack.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "edgecert/certify.hpp"
#include "edgecert/errors.hpp"
#include "edgecert/parallel.hpp"
#include "edgecert/rng.hpp"

namespace edgecert {
namespace {

std::size_t global_attack_size(const Graph& g, double rate) {
  // Tolerance keeps products like 0.1 * 100 from rounding up to 11.
  return static_cast<std::size_t>(std::ceil(rate * static_cast<double>(g.n_edges()) - 1e-9));
}

int pipeline_predict(const Graph& g, NodeId node, const EncoderParams& enc, const LogRegModel& clf,
                     const std::optional<SmoothingSetup>& smoothing, std::size_t k_hop,
                     std::uint64_t seed) {
  if (!smoothing) return base_predict(g, node, enc, clf, k_hop);
  return majority_class(smoothed_predict(g, node, enc, clf, smoothing->mu, smoothing->spec, k_hop, seed));
}

// Edge set of the k-hop neighborhood in original node ids.
std::vector<Edge> khop_edges(const Graph& g, NodeId node, std::size_t k_hop) {
  const Subgraph sub = khop_subgraph(g, node, k_hop);
  std::vector<Edge> out;
  out.reserve(sub.graph.n_edges());
  for (const Edge& e : sub.graph.edges()) out.push_back({sub.nodes[e.u], sub.nodes[e.v]});
  return out;
}

}  // namespace

void AttackSpec::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("attack rate must lie in [0, 1]");
}

std::vector<Edge> random_targeted_attack(const Graph& g, NodeId target, std::size_t budget,
                                         std::uint64_t seed) {
  if (target >= g.n_nodes()) throw RangeError("attack target out of range");
  if (budget == 0) return {};
  std::vector<NodeId> hood{target};
  for (NodeId w : g.neighbors(target)) hood.push_back(w);

  std::set<Edge> candidates;
  for (NodeId a : hood) {
    for (NodeId y = 0; y < g.n_nodes(); ++y) {
      if (y == a || g.has_edge(a, y)) continue;
      candidates.insert({std::min(a, y), std::max(a, y)});
    }
  }
  if (candidates.size() < budget) {
    throw BudgetInfeasible("budget " + std::to_string(budget) + " exceeds the " +
                           std::to_string(candidates.size()) + " absent pairs around node " +
                           std::to_string(target));
  }
  std::vector<Edge> pool(candidates.begin(), candidates.end());
  Rng rng(derive_seed(seed, "targeted-attack"));
  // Partial Fisher-Yates: the first `budget` entries are a uniform sample.
  for (std::size_t i = 0; i < budget; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pool.size() - i));
    std::swap(pool[i], pool[std::min(j, pool.size() - 1)]);
  }
  pool.resize(budget);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Graph random_global_attack(const Graph& g, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("attack rate must lie in [0, 1]");
  const std::size_t m = global_attack_size(g, rate);
  const Slot universe = pair_universe(g.n_nodes());
  const Slot absent = universe - g.n_edges();
  if (m > absent) {
    throw BudgetInfeasible("global attack needs " + std::to_string(m) + " absent pairs, only " +
                           std::to_string(absent) + " exist");
  }
  if (m == 0) return g;

  Rng rng(derive_seed(seed, "global-attack"));
  std::vector<Edge> added;
  if (absent >= 4 * m) {
    std::set<Slot> chosen;
    while (chosen.size() < m) {
      const auto s = static_cast<Slot>(uniform01(rng) * static_cast<double>(universe));
      if (s >= universe) continue;
      const Edge e = slot_pair(s, g.n_nodes());
      if (!g.has_edge(e.u, e.v)) chosen.insert(s);
    }
    for (Slot s : chosen) added.push_back(slot_pair(s, g.n_nodes()));
  } else {
    std::vector<Edge> pool;
    for (NodeId u = 0; u < g.n_nodes(); ++u) {
      for (NodeId v = u + 1; v < g.n_nodes(); ++v) {
        if (!g.has_edge(u, v)) pool.push_back({u, v});
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(pool.size() - i));
      std::swap(pool[i], pool[std::min(j, pool.size() - 1)]);
    }
    added.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
  }
  return g.with_added_edges(added);
}

EvasionResult evasion_eval(const Graph& g, std::span<const NodeId> targets,
                           const EncoderParams& enc, const LogRegModel& clf,
                           const AttackSpec& atk, const std::optional<SmoothingSetup>& smoothing,
                           std::size_t k_hop, std::uint64_t seed, std::size_t threads) {
  atk.validate();
  if (!g.has_labels()) throw PreconditionError("evasion_eval needs labeled targets");
  for (NodeId t : targets) {
    if (t >= g.n_nodes()) throw RangeError("target node out of range");
  }

  std::optional<Graph> global_graph;
  if (atk.mode == AttackMode::kGlobal) global_graph = random_global_attack(g, atk.rate, atk.seed);

  EvasionResult result;
  result.rows.resize(targets.size());
  parallel_for(
      targets.size(),
      [&](std::size_t i) {
        const NodeId t = targets[i];
        const std::uint64_t vote_seed = derive_seed(seed, t);
        AttackRow row;
        row.node = t;
        row.clean_pred = pipeline_predict(g, t, enc, clf, smoothing, k_hop, vote_seed);
        if (atk.mode == AttackMode::kTargeted) {
          row.budget = atk.budget;
          const auto delta = random_targeted_attack(g, t, atk.budget, derive_seed(atk.seed, t));
          const Graph attacked = delta.empty() ? g : g.with_added_edges(delta);
          row.attacked = khop_edges(attacked, t, k_hop) != khop_edges(g, t, k_hop);
          row.attacked_pred = delta.empty()
                                  ? row.clean_pred
                                  : pipeline_predict(attacked, t, enc, clf, smoothing, k_hop, vote_seed);
        } else {
          row.budget = global_graph->n_edges() - g.n_edges();
          row.attacked = khop_edges(*global_graph, t, k_hop) != khop_edges(g, t, k_hop);
          row.attacked_pred = row.attacked
                                  ? pipeline_predict(*global_graph, t, enc, clf, smoothing, k_hop, vote_seed)
                                  : row.clean_pred;
        }
        row.correct = row.attacked_pred == g.labels()[t];
        result.rows[i] = row;
      },
      threads);

  std::size_t hits = 0;
  for (const auto& r : result.rows) hits += r.correct ? 1 : 0;
  result.robust_accuracy =
      targets.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(targets.size());
  return result;
}

}  // namespace edgecert
