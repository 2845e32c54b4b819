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

#include "edgecert/encoder.hpp"

#include <string>

#include "edgecert/rng.hpp"

namespace edgecert {
namespace {

Eigen::MatrixXd glorot(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Eigen::MatrixXd w(static_cast<Eigen::Index>(fan_in), static_cast<Eigen::Index>(fan_out));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = bound * (2.0 * uniform01(rng) - 1.0);
  }
  return w;
}

Eigen::MatrixXd relu(const Eigen::MatrixXd& m) { return m.cwiseMax(0.0); }

Eigen::MatrixXd relu_mask(const Eigen::MatrixXd& pre, const Eigen::MatrixXd& grad) {
  return (pre.array() > 0.0).select(grad, 0.0);
}

void check_features(const Graph& g, const EncoderParams& p) {
  if (static_cast<Eigen::Index>(g.feature_dim()) != p.W1.rows()) {
    throw ShapeError("graph has " + std::to_string(g.feature_dim()) +
                     " feature columns, encoder expects " + std::to_string(p.W1.rows()));
  }
}

}  // namespace

EncoderDims EncoderParams::dims() const {
  return {static_cast<std::size_t>(W1.rows()), static_cast<std::size_t>(W1.cols()),
          static_cast<std::size_t>(W2.cols()), static_cast<std::size_t>(P1.cols())};
}

bool EncoderParams::all_finite() const {
  return W1.allFinite() && W2.allFinite() && P1.allFinite() && b1.allFinite() && P2.allFinite() &&
         b2.allFinite();
}

void EncoderParams::validate() const {
  const auto d = dims();
  if (d.f_dim == 0 || d.h_dim == 0 || d.d_dim == 0 || d.p_dim == 0) {
    throw ShapeError("encoder dimensions must be >= 1");
  }
  const bool ok = W2.rows() == W1.cols() && P1.rows() == W2.cols() && b1.size() == P1.cols() &&
                  P2.rows() == P1.cols() && P2.cols() == P1.cols() && b2.size() == P2.cols();
  if (!ok) throw ShapeError("inconsistent encoder parameter shapes");
  if (!all_finite()) throw DomainError("encoder parameters contain non-finite values");
}

bool operator==(const EncoderParams& a, const EncoderParams& b) {
  auto same = [](const auto& x, const auto& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  return same(a.W1, b.W1) && same(a.W2, b.W2) && same(a.P1, b.P1) && same(a.b1, b.b1) &&
         same(a.P2, b.P2) && same(a.b2, b.b2);
}

EncoderParams init_params(const EncoderDims& dims, std::uint64_t seed) {
  if (dims.f_dim == 0 || dims.h_dim == 0 || dims.d_dim == 0 || dims.p_dim == 0) {
    throw ShapeError("encoder dimensions must be >= 1");
  }
  Rng rng(derive_seed(seed, "encoder-init"));
  EncoderParams p;
  p.W1 = glorot(dims.f_dim, dims.h_dim, rng);
  p.W2 = glorot(dims.h_dim, dims.d_dim, rng);
  p.P1 = glorot(dims.d_dim, dims.p_dim, rng);
  p.b1 = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dims.p_dim));
  p.P2 = glorot(dims.p_dim, dims.p_dim, rng);
  p.b2 = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(dims.p_dim));
  return p;
}

ForwardCache forward_cached(const Graph& g, const EncoderParams& p) {
  check_features(g, p);
  ForwardCache c;
  c.A = normalized_adjacency(g);
  c.AX = c.A * g.features();
  c.pre1 = c.AX * p.W1;
  c.AR = c.A * relu(c.pre1);
  c.Z = c.AR * p.W2;
  c.pre_head = (c.Z * p.P1).rowwise() + p.b1;
  c.S = relu(c.pre_head);
  c.H = (c.S * p.P2).rowwise() + p.b2;
  if (!c.Z.allFinite() || !c.H.allFinite()) throw DomainError("non-finite encoder output");
  return c;
}

Embeddings forward(const Graph& g, const EncoderParams& p) {
  ForwardCache c = forward_cached(g, p);
  return {std::move(c.Z), std::move(c.H)};
}

EncoderParams backward(const ForwardCache& c, const EncoderParams& p, const Eigen::MatrixXd& dH) {
  EncoderParams grad;
  grad.P2 = c.S.transpose() * dH;
  grad.b2 = dH.colwise().sum();
  const Eigen::MatrixXd dQ = relu_mask(c.pre_head, dH * p.P2.transpose());
  grad.P1 = c.Z.transpose() * dQ;
  grad.b1 = dQ.colwise().sum();
  const Eigen::MatrixXd dZ = dQ * p.P1.transpose();
  grad.W2 = c.AR.transpose() * dZ;
  // A is symmetric, so A^T dAR = A dAR.
  const Eigen::MatrixXd dR = c.A * (dZ * p.W2.transpose());
  const Eigen::MatrixXd dP = relu_mask(c.pre1, dR);
  grad.W1 = c.AX.transpose() * dP;
  return grad;
}

Eigen::RowVectorXd node_embedding(const Graph& g, NodeId node, const EncoderParams& p,
                                  const Eigen::MatrixXd* xw1) {
  if (node >= g.n_nodes()) throw RangeError("node out of range");
  check_features(g, p);
  Eigen::MatrixXd local;
  if (xw1 == nullptr) {
    local = g.features() * p.W1;
    xw1 = &local;
  } else if (xw1->rows() != static_cast<Eigen::Index>(g.n_nodes()) || xw1->cols() != p.W1.cols()) {
    throw ShapeError("precomputed X*W1 has the wrong shape");
  }
  auto inv_sqrt = [&g](NodeId j) { return 1.0 / std::sqrt(static_cast<double>(g.degree(j) + 1)); };
  auto hidden_row = [&](NodeId j) {
    const double sj = inv_sqrt(j);
    Eigen::RowVectorXd acc = (sj * sj) * xw1->row(j);
    for (NodeId k : g.neighbors(j)) acc += (sj * inv_sqrt(k)) * xw1->row(k);
    return Eigen::RowVectorXd(acc.cwiseMax(0.0));
  };
  const double sc = inv_sqrt(node);
  Eigen::RowVectorXd agg = (sc * sc) * hidden_row(node);
  for (NodeId j : g.neighbors(node)) agg += (sc * inv_sqrt(j)) * hidden_row(j);
  Eigen::RowVectorXd z = agg * p.W2;
  if (!z.allFinite()) throw DomainError("non-finite encoder output");
  return z;
}

}  // namespace edgecert
