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

#include "edgecert/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <string>

#include "edgecert/errors.hpp"
#include "edgecert/rng.hpp"

namespace edgecert {

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges, Eigen::MatrixXd features,
             std::vector<int> labels, int n_classes)
    : n_nodes_(n_nodes),
      edges_(std::move(edges)),
      features_(std::move(features)),
      labels_(std::move(labels)) {
  if (static_cast<std::size_t>(features_.rows()) != n_nodes_) {
    throw ShapeError("feature matrix has " + std::to_string(features_.rows()) +
                     " rows, expected " + std::to_string(n_nodes_));
  }
  for (Edge& e : edges_) {
    if (e.u == e.v) throw DomainError("self-loop on node " + std::to_string(e.u));
    if (e.u >= n_nodes_ || e.v >= n_nodes_) {
      throw RangeError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for " + std::to_string(n_nodes_) + " nodes");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  if (!labels_.empty()) {
    if (labels_.size() != n_nodes_) {
      throw ShapeError("label count " + std::to_string(labels_.size()) +
                       " does not match node count " + std::to_string(n_nodes_));
    }
    const int max_label = *std::max_element(labels_.begin(), labels_.end());
    const int min_label = *std::min_element(labels_.begin(), labels_.end());
    if (min_label < 0) throw RangeError("negative class label");
    if (n_classes == 0) n_classes = max_label + 1;
    if (max_label >= n_classes) {
      throw RangeError("label " + std::to_string(max_label) + " >= n_classes " +
                       std::to_string(n_classes));
    }
    n_classes_ = n_classes;
  } else {
    n_classes_ = n_classes;
  }

  std::vector<std::size_t> deg(n_nodes_ + 1, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_nodes_ + 1, 0);
  for (std::size_t i = 0; i < n_nodes_; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adj_.resize(offsets_[n_nodes_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so each node's neighbor run comes out sorted
  // for the u side; the v side needs a final sort.
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]++] = e.v;
    adj_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n_nodes_; ++i) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adj_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= n_nodes_ || v >= n_nodes_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::with_added_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(n_nodes_, std::move(all), features_, labels_, n_classes_);
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_nodes_ == b.n_nodes_ && a.edges_ == b.edges_ && a.labels_ == b.labels_ &&
         a.n_classes_ == b.n_classes_ && a.features_.rows() == b.features_.rows() &&
         a.features_.cols() == b.features_.cols() && a.features_ == b.features_;
}

void SbmConfig::validate() const {
  if (blocks == 0 || nodes_per_block == 0) throw DomainError("SBM needs at least one node");
  if (!(0.0 <= p_out && p_out <= p_in && p_in <= 1.0)) {
    throw DomainError("SBM probabilities must satisfy 0 <= p_out <= p_in <= 1");
  }
  if (static_cast<std::size_t>(feature_centers.rows()) != blocks) {
    throw ShapeError("feature_centers must have one row per block");
  }
  if (!(feature_noise_sd >= 0.0)) throw DomainError("feature_noise_sd must be nonnegative");
}

Graph sbm_generate(const SbmConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.blocks * cfg.nodes_per_block;
  const auto f = cfg.feature_centers.cols();

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i / cfg.nodes_per_block);

  Rng edge_rng(derive_seed(cfg.seed, "sbm-edges"));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = labels[u] == labels[v] ? cfg.p_in : cfg.p_out;
      if (bernoulli(edge_rng, p)) edges.push_back({u, v});
    }
  }

  Rng feat_rng(derive_seed(cfg.seed, "sbm-features"));
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), f);
  for (std::size_t i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < f; ++j) {
      x(static_cast<Eigen::Index>(i), j) =
          cfg.feature_centers(labels[i], j) + cfg.feature_noise_sd * noise(feat_rng);
    }
  }
  return Graph(n, std::move(edges), std::move(x), std::move(labels),
               static_cast<int>(cfg.blocks));
}

Eigen::SparseMatrix<double> normalized_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(static_cast<NodeId>(i)) + 1));
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) + 2 * g.n_edges());
  for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
  for (const Edge& e : g.edges()) {
    const double w = inv_sqrt[e.u] * inv_sqrt[e.v];
    trips.emplace_back(e.u, e.v, w);
    trips.emplace_back(e.v, e.u, w);
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

Subgraph khop_subgraph(const Graph& g, NodeId center, std::size_t k) {
  if (center >= g.n_nodes()) throw RangeError("center node out of range");
  std::vector<std::size_t> dist(g.n_nodes(), SIZE_MAX);
  std::deque<NodeId> queue{center};
  dist[center] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (dist[u] == k) continue;
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }

  Subgraph sub;
  std::vector<NodeId> remap(g.n_nodes(), UINT32_MAX);
  for (NodeId u = 0; u < g.n_nodes(); ++u) {
    if (dist[u] != SIZE_MAX) {
      remap[u] = static_cast<NodeId>(sub.nodes.size());
      sub.nodes.push_back(u);
    }
  }
  sub.center = remap[center];

  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (remap[e.u] != UINT32_MAX && remap[e.v] != UINT32_MAX) {
      edges.push_back({remap[e.u], remap[e.v]});
    }
  }
  const auto m = static_cast<Eigen::Index>(sub.nodes.size());
  Eigen::MatrixXd x(m, g.features().cols());
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < m; ++i) {
    x.row(i) = g.features().row(sub.nodes[static_cast<std::size_t>(i)]);
    if (g.has_labels()) labels.push_back(g.labels()[sub.nodes[static_cast<std::size_t>(i)]]);
  }
  sub.graph = Graph(sub.nodes.size(), std::move(edges), std::move(x), std::move(labels),
                    g.n_classes());
  return sub;
}

Edge slot_pair(Slot slot, std::size_t n) {
  if (slot >= pair_universe(n)) throw RangeError("slot index out of range");
  // Row u holds n - 1 - u slots starting at slot_index(u, u + 1, n). Invert the
  // quadratic for a first guess, then fix any floating error.
  const double nn = static_cast<double>(n);
  const double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(slot);
  auto u = static_cast<Slot>(std::floor(((2.0 * nn - 1.0) - std::sqrt(std::max(disc, 0.0))) / 2.0));
  auto row_start = [n](Slot r) { return r * n - r * (r + 1) / 2; };
  while (u > 0 && row_start(u) > slot) --u;
  while (u + 1 < n && row_start(u + 1) <= slot) ++u;
  const Slot v = slot - row_start(u) + u + 1;
  return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

StructVector to_struct_vector(const Graph& g) {
  StructVector sv;
  sv.universe = pair_universe(g.n_nodes());
  sv.present.reserve(g.n_edges());
  // Canonical edges sorted by (u, v) map to increasing slots.
  for (const Edge& e : g.edges()) sv.present.push_back(slot_index(e.u, e.v, g.n_nodes()));
  return sv;
}

Graph from_struct_vector(const StructVector& v, std::size_t n, Eigen::MatrixXd features,
                         std::vector<int> labels, int n_classes) {
  if (v.universe != pair_universe(n)) {
    throw ShapeError("structure vector universe " + std::to_string(v.universe) +
                     " does not match n(n-1)/2 for n=" + std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(v.present.size());
  for (Slot s : v.present) edges.push_back(slot_pair(s, n));
  return Graph(n, std::move(edges), std::move(features), std::move(labels), n_classes);
}

}  // namespace edgecert
