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

#include <unistd.h>

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "edgecert/graph.hpp"
#include "edgecert/rng.hpp"

namespace edgecert::testing {

inline Eigen::MatrixXd random_features(std::size_t n, std::size_t f, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = 2.0 * uniform01(rng) - 1.0;
  }
  return x;
}

// Erdos-Renyi graph with uniform features in [-1, 1).
inline Graph random_graph(std::size_t n, double p, std::size_t f, std::uint64_t seed,
                          int n_classes = 0) {
  Rng rng(derive_seed(seed, "edges"));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.push_back({u, v});
    }
  }
  std::vector<int> labels;
  if (n_classes > 0) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(static_cast<int>(i % static_cast<std::size_t>(n_classes)));
  }
  return Graph(n, std::move(edges), random_features(n, f, derive_seed(seed, "features")), labels, n_classes);
}

inline Graph path_graph(std::size_t n, std::size_t f = 1) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, edges, Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f)));
}

inline Graph clique(std::size_t n, std::size_t f = 1) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, edges, Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f)));
}

}  // namespace edgecert::testing

#include <filesystem>
#include <fstream>
#include <string>

namespace edgecert::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("edgecert-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace edgecert::testing
