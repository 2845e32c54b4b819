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
#include <filesystem>
#include <optional>

#include "edgecert/graph.hpp"

namespace edgecert {

struct LoadReport {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
};

// Text formats (whitespace separated, '#' starts a comment line):
//   edges:    "u v" per line
//   features: "id x_1 ... x_f" per node, one row for every id in [0, n)
//   labels:   "id c" per node
// n_nodes is the number of feature rows.
LoadedGraph load_graph(const std::filesystem::path& edge_path,
                       const std::filesystem::path& feature_path,
                       const std::optional<std::filesystem::path>& label_path = std::nullopt);

// Writers emit the same formats; reals use %.17g so a reload is bit-exact.
void write_edges(const Graph& g, const std::filesystem::path& path);
void write_features(const Graph& g, const std::filesystem::path& path);
void write_labels(const Graph& g, const std::filesystem::path& path);

}  // namespace edgecert
