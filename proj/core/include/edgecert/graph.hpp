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
#include <Eigen/SparseCore>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace edgecert {

using NodeId = std::uint32_t;
using Slot = std::uint64_t;

// Undirected edge, stored canonically with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected attributed graph. Immutable once constructed.
///
/// The constructor canonicalizes edge orientation (u < v), sorts and removes
/// duplicates. Self-loops and out-of-range endpoints are rejected with
/// DomainError / RangeError. Labels are optional; when present there is one
/// per node and `n_classes()` is one past the largest label unless given.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n_nodes, std::vector<Edge> edges, Eigen::MatrixXd features,
        std::vector<int> labels = {}, int n_classes = 0);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  std::size_t feature_dim() const noexcept { return static_cast<std::size_t>(features_.cols()); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Eigen::MatrixXd& features() const noexcept { return features_; }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int n_classes() const noexcept { return n_classes_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Copy with extra edges; duplicates of existing edges are merged.
  Graph with_added_edges(std::span<const Edge> extra) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Edge> edges_;
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  int n_classes_ = 0;
  // CSR adjacency, neighbors sorted ascending.
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
};

struct SbmConfig {
  std::size_t blocks = 2;
  std::size_t nodes_per_block = 50;
  double p_in = 0.2;
  double p_out = 0.01;
  Eigen::MatrixXd feature_centers;  // blocks x f_dim
  double feature_noise_sd = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

Graph sbm_generate(const SbmConfig& cfg);

// D^{-1/2} (A + I) D^{-1/2} with D the degree matrix of A + I.
Eigen::SparseMatrix<double> normalized_adjacency(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> nodes;  // new id -> old id, ascending in old id
  NodeId center = 0;          // new id of the center
};

// Induced subgraph on every node within `k` hops of `center`.
Subgraph khop_subgraph(const Graph& g, NodeId center, std::size_t k);

// Present edge slots over the n(n-1)/2 unordered pairs of a graph.
struct StructVector {
  Slot universe = 0;
  std::vector<Slot> present;  // strictly increasing, all < universe

  std::size_t l0() const noexcept { return present.size(); }
  friend bool operator==(const StructVector&, const StructVector&) = default;
};

constexpr Slot pair_universe(std::size_t n) noexcept {
  return n < 2 ? 0 : static_cast<Slot>(n) * (n - 1) / 2;
}

// Row-major upper-triangle index of pair (u, v), u < v < n.
constexpr Slot slot_index(NodeId u, NodeId v, std::size_t n) noexcept {
  const Slot uu = u;
  return uu * n - uu * (uu + 1) / 2 + (v - uu - 1);
}

Edge slot_pair(Slot slot, std::size_t n);

StructVector to_struct_vector(const Graph& g);
Graph from_struct_vector(const StructVector& v, std::size_t n, Eigen::MatrixXd features,
                         std::vector<int> labels = {}, int n_classes = 0);

}  // namespace edgecert
