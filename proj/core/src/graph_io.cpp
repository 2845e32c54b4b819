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

#include "edgecert/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "edgecert/errors.hpp"

namespace edgecert {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool skippable(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

std::uint64_t parse_id(std::string_view tok, const std::string& src, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(src, line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, const std::string& src, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(src, line, "expected a real number, got '" + std::string(tok) + "'");
  }
  return value;
}

template <class Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = split_ws(line);
    if (skippable(tokens)) continue;
    fn(tokens, lineno);
  }
}

std::FILE* open_for_write(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (f == nullptr) throw IoError("cannot write " + path.string());
  return f;
}

}  // namespace

LoadedGraph load_graph(const std::filesystem::path& edge_path,
                       const std::filesystem::path& feature_path,
                       const std::optional<std::filesystem::path>& label_path) {
  const std::string fsrc = feature_path.string();
  std::map<std::uint64_t, std::vector<double>> rows;
  std::size_t f_dim = 0;
  for_each_line(feature_path, [&](const auto& tok, std::size_t lineno) {
    if (tok.size() < 2) throw ParseError(fsrc, lineno, "feature row needs an id and values");
    const auto id = parse_id(tok[0], fsrc, lineno);
    if (rows.empty()) f_dim = tok.size() - 1;
    if (tok.size() - 1 != f_dim) {
      throw ParseError(fsrc, lineno, "expected " + std::to_string(f_dim) + " feature values");
    }
    std::vector<double> row;
    row.reserve(f_dim);
    for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(parse_real(tok[i], fsrc, lineno));
    if (!rows.emplace(id, std::move(row)).second) {
      throw ParseError(fsrc, lineno, "duplicate feature row for node " + std::to_string(id));
    }
  });
  const std::size_t n = rows.size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f_dim));
  {
    std::size_t expect = 0;
    for (const auto& [id, row] : rows) {
      if (id != expect) {
        throw RangeError(fsrc + ": missing feature row for node " + std::to_string(expect));
      }
      for (std::size_t j = 0; j < f_dim; ++j) {
        x(static_cast<Eigen::Index>(id), static_cast<Eigen::Index>(j)) = row[j];
      }
      ++expect;
    }
  }

  LoadReport report;
  std::vector<Edge> edges;
  const std::string esrc = edge_path.string();
  for_each_line(edge_path, [&](const auto& tok, std::size_t lineno) {
    if (tok.size() != 2) throw ParseError(esrc, lineno, "expected 'u v'");
    const auto u = parse_id(tok[0], esrc, lineno);
    const auto v = parse_id(tok[1], esrc, lineno);
    if (u >= n || v >= n) {
      throw RangeError(esrc + ":" + std::to_string(lineno) + ": node id " +
                       std::to_string(std::max(u, v)) + " >= n_nodes " + std::to_string(n));
    }
    if (u == v) {
      ++report.self_loops;
      return;
    }
    edges.push_back({static_cast<NodeId>(std::min(u, v)), static_cast<NodeId>(std::max(u, v))});
  });
  const std::size_t raw = edges.size();

  std::vector<int> labels;
  if (label_path) {
    const std::string lsrc = label_path->string();
    std::vector<int> seen(n, -1);
    for_each_line(*label_path, [&](const auto& tok, std::size_t lineno) {
      if (tok.size() != 2) throw ParseError(lsrc, lineno, "expected 'id class'");
      const auto id = parse_id(tok[0], lsrc, lineno);
      const auto c = parse_id(tok[1], lsrc, lineno);
      if (id >= n) throw RangeError(lsrc + ":" + std::to_string(lineno) + ": node id out of range");
      if (c > static_cast<std::uint64_t>(INT32_MAX)) {
        throw RangeError(lsrc + ":" + std::to_string(lineno) + ": class id too large");
      }
      seen[id] = static_cast<int>(c);
    });
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i] < 0) throw RangeError(lsrc + ": missing label for node " + std::to_string(i));
    }
    labels = std::move(seen);
  }

  Graph g(n, std::move(edges), std::move(x), std::move(labels));
  report.duplicate_edges = raw - g.n_edges();
  return {std::move(g), report};
}

void write_edges(const Graph& g, const std::filesystem::path& path) {
  std::FILE* f = open_for_write(path);
  for (const Edge& e : g.edges()) std::fprintf(f, "%u %u\n", e.u, e.v);
  std::fclose(f);
}

void write_features(const Graph& g, const std::filesystem::path& path) {
  std::FILE* f = open_for_write(path);
  const auto& x = g.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::fprintf(f, "%lld", static_cast<long long>(i));
    for (Eigen::Index j = 0; j < x.cols(); ++j) std::fprintf(f, " %.17g", x(i, j));
    std::fputc('\n', f);
  }
  std::fclose(f);
}

void write_labels(const Graph& g, const std::filesystem::path& path) {
  if (!g.has_labels()) throw PreconditionError("graph has no labels to write");
  std::FILE* f = open_for_write(path);
  for (std::size_t i = 0; i < g.labels().size(); ++i) std::fprintf(f, "%zu %d\n", i, g.labels()[i]);
  std::fclose(f);
}

}  // namespace edgecert
