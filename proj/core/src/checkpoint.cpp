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

#include "edgecert/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "edgecert/errors.hpp"

namespace edgecert {
namespace {

constexpr const char* kMagic = "EDGECERT-CHECKPOINT";

Eigen::MatrixXd as_row(const Eigen::RowVectorXd& v) { return v; }

Eigen::RowVectorXd expect_row(const Eigen::MatrixXd& m, const std::string& name) {
  if (m.rows() != 1) throw ShapeError("tensor " + name + " must be a single row");
  return m.row(0);
}

}  // namespace

const Eigen::MatrixXd& Checkpoint::tensor(const std::string& name) const {
  for (const auto& [n, m] : tensors) {
    if (n == name) return m;
  }
  throw ShapeError("checkpoint of kind '" + kind + "' has no tensor '" + name + "'");
}

void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (f == nullptr) throw IoError("cannot write " + path.string());
  std::fprintf(f, "%s %d\nkind %s\n", kMagic, kCheckpointVersion, ckpt.kind.c_str());
  for (const auto& [k, v] : ckpt.meta) std::fprintf(f, "meta %s %s\n", k.c_str(), v.c_str());
  for (const auto& [name, m] : ckpt.tensors) {
    std::fprintf(f, "tensor %s %lld %lld\n", name.c_str(), static_cast<long long>(m.rows()),
                 static_cast<long long>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        std::fprintf(f, j == 0 ? "%.17g" : " %.17g", m(i, j));
      }
      std::fputc('\n', f);
    }
  }
  std::fputs("end\n", f);
  if (std::fclose(f) != 0) throw IoError("error closing " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  const std::string src = path.string();
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError(src, lineno, "unexpected end of checkpoint");
    ++lineno;
    return std::istringstream(line);
  };

  Checkpoint ckpt;
  {
    auto ls = next_line();
    std::string magic;
    int version = 0;
    ls >> magic >> version;
    if (magic != kMagic) throw ParseError(src, lineno, "not an edgecert checkpoint");
    if (version != kCheckpointVersion) {
      throw ParseError(src, lineno, "unsupported checkpoint version " + std::to_string(version));
    }
  }
  {
    auto ls = next_line();
    std::string tag;
    ls >> tag >> ckpt.kind;
    if (tag != "kind" || ckpt.kind.empty()) throw ParseError(src, lineno, "expected 'kind <name>'");
  }
  while (true) {
    auto ls = next_line();
    std::string tag;
    ls >> tag;
    if (tag == "end") break;
    if (tag == "meta") {
      std::string key, value;
      ls >> key;
      std::getline(ls >> std::ws, value);
      ckpt.meta[key] = value;
    } else if (tag == "tensor") {
      std::string name;
      long long rows = -1, cols = -1;
      ls >> name >> rows >> cols;
      if (!ls || rows < 0 || cols < 0) throw ParseError(src, lineno, "bad tensor header");
      Eigen::MatrixXd m(rows, cols);
      for (long long i = 0; i < rows; ++i) {
        auto rs = next_line();
        for (long long j = 0; j < cols; ++j) {
          std::string tok;
          if (!(rs >> tok)) throw ParseError(src, lineno, "short tensor row for " + name);
          char* end = nullptr;
          m(i, j) = std::strtod(tok.c_str(), &end);
          if (end != tok.c_str() + tok.size()) throw ParseError(src, lineno, "bad value '" + tok + "'");
        }
      }
      ckpt.tensors.emplace_back(name, std::move(m));
    } else {
      throw ParseError(src, lineno, "unknown record '" + tag + "'");
    }
  }
  return ckpt;
}

Checkpoint encoder_checkpoint(const EncoderParams& p) {
  p.validate();
  const auto d = p.dims();
  Checkpoint c;
  c.kind = "encoder";
  c.meta["f_dim"] = std::to_string(d.f_dim);
  c.meta["h_dim"] = std::to_string(d.h_dim);
  c.meta["d_dim"] = std::to_string(d.d_dim);
  c.meta["p_dim"] = std::to_string(d.p_dim);
  c.tensors = {{"W1", p.W1}, {"W2", p.W2}, {"P1", p.P1},
               {"b1", as_row(p.b1)}, {"P2", p.P2}, {"b2", as_row(p.b2)}};
  return c;
}

EncoderParams encoder_from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.kind != "encoder") throw ShapeError("expected an encoder checkpoint, got " + ckpt.kind);
  EncoderParams p;
  p.W1 = ckpt.tensor("W1");
  p.W2 = ckpt.tensor("W2");
  p.P1 = ckpt.tensor("P1");
  p.b1 = expect_row(ckpt.tensor("b1"), "b1");
  p.P2 = ckpt.tensor("P2");
  p.b2 = expect_row(ckpt.tensor("b2"), "b2");
  p.validate();
  const auto d = p.dims();
  auto check = [&](const char* key, std::size_t got) {
    auto it = ckpt.meta.find(key);
    if (it != ckpt.meta.end() && it->second != std::to_string(got)) {
      throw ShapeError(std::string("checkpoint ") + key + "=" + it->second +
                       " disagrees with tensor shapes");
    }
  };
  check("f_dim", d.f_dim);
  check("h_dim", d.h_dim);
  check("d_dim", d.d_dim);
  check("p_dim", d.p_dim);
  return p;
}

Checkpoint logreg_checkpoint(const LogRegModel& m) {
  Checkpoint c;
  c.kind = "logreg";
  c.meta["n_classes"] = std::to_string(m.W.rows());
  c.meta["d_dim"] = std::to_string(m.W.cols());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", m.l2);
  c.meta["l2"] = buf;
  c.meta["converged"] = m.converged ? "1" : "0";
  c.meta["iterations"] = std::to_string(m.iterations);
  c.tensors = {{"W", m.W}, {"b", Eigen::MatrixXd(m.b.transpose())}};
  return c;
}

LogRegModel logreg_from_checkpoint(const Checkpoint& ckpt) {
  if (ckpt.kind != "logreg") throw ShapeError("expected a logreg checkpoint, got " + ckpt.kind);
  LogRegModel m;
  m.W = ckpt.tensor("W");
  m.b = expect_row(ckpt.tensor("b"), "b").transpose();
  if (m.b.size() != m.W.rows()) throw ShapeError("logreg bias length does not match class count");
  if (m.W.rows() < 2) throw ShapeError("logreg needs at least two classes");
  if (auto it = ckpt.meta.find("l2"); it != ckpt.meta.end()) m.l2 = std::strtod(it->second.c_str(), nullptr);
  if (auto it = ckpt.meta.find("converged"); it != ckpt.meta.end()) m.converged = it->second == "1";
  if (auto it = ckpt.meta.find("iterations"); it != ckpt.meta.end()) {
    m.iterations = static_cast<std::size_t>(std::stoull(it->second));
  }
  if (!m.W.allFinite() || !m.b.allFinite()) throw DomainError("non-finite logreg parameters");
  return m;
}

}  // namespace edgecert
