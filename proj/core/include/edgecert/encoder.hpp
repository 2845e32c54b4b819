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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "edgecert/errors.hpp"
#include "edgecert/graph.hpp"

namespace edgecert {

struct EncoderDims {
  std::size_t f_dim = 0;
  std::size_t h_dim = 64;
  std::size_t d_dim = 32;
  std::size_t p_dim = 32;

  friend bool operator==(const EncoderDims&, const EncoderDims&) = default;
};

// Two-layer GCN (W1, W2) followed by a two-layer projection head (P1, b1, P2, b2).
struct EncoderParams {
  Eigen::MatrixXd W1;  // f x h
  Eigen::MatrixXd W2;  // h x d
  Eigen::MatrixXd P1;  // d x p
  Eigen::RowVectorXd b1;
  Eigen::MatrixXd P2;  // p x p
  Eigen::RowVectorXd b2;

  EncoderDims dims() const;
  bool all_finite() const;
  void validate() const;

  friend bool operator==(const EncoderParams& a, const EncoderParams& b);
};

struct Embeddings {
  Eigen::MatrixXd Z;  // encoder output, n x d
  Eigen::MatrixXd H;  // projected, n x p
};

// Intermediates kept for the backward pass.
struct ForwardCache {
  Eigen::SparseMatrix<double> A;
  Eigen::MatrixXd AX;   // A X
  Eigen::MatrixXd pre1;  // A X W1
  Eigen::MatrixXd AR;   // A relu(pre1)
  Eigen::MatrixXd Z;
  Eigen::MatrixXd pre_head;  // Z P1 + b1
  Eigen::MatrixXd S;         // relu(pre_head)
  Eigen::MatrixXd H;
};

// Glorot-uniform weights, zero biases.
EncoderParams init_params(const EncoderDims& dims, std::uint64_t seed);

Embeddings forward(const Graph& g, const EncoderParams& p);
ForwardCache forward_cached(const Graph& g, const EncoderParams& p);

// Gradient of a scalar loss w.r.t. parameters given dL/dH for one forward pass.
EncoderParams backward(const ForwardCache& cache, const EncoderParams& p, const Eigen::MatrixXd& dH);

// Z row of a single node, touching only its 2-hop neighborhood. `xw1` may
// carry a precomputed features * W1 for g (it does not depend on edges).
Eigen::RowVectorXd node_embedding(const Graph& g, NodeId node, const EncoderParams& p,
                                  const Eigen::MatrixXd* xw1 = nullptr);

template <class A, class B>
double cosine_sim(const Eigen::MatrixBase<A>& z1, const Eigen::MatrixBase<B>& z2) {
  const double n1 = z1.norm();
  const double n2 = z2.norm();
  if (n1 == 0.0 || n2 == 0.0) throw DomainError("cosine similarity of a zero vector");
  const double s = z1.cwiseProduct(z2).sum() / (n1 * n2);
  return std::fmax(-1.0, std::fmin(1.0, s));
}

}  // namespace edgecert
