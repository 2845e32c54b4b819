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

#include "edgecert/logreg.hpp"

#include <cmath>
#include <string>

#include "edgecert/errors.hpp"

namespace edgecert {
namespace {

// Row-wise log-softmax of an n x C logit matrix.
Eigen::MatrixXd log_softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    const double lse = mx + std::log((logits.row(i).array() - mx).exp().sum());
    out.row(i) = logits.row(i).array() - lse;
  }
  return out;
}

struct Evaluation {
  double loss = 0.0;
  Eigen::MatrixXd dW;
  Eigen::VectorXd db;
};

Evaluation evaluate(const Eigen::MatrixXd& W, const Eigen::VectorXd& b, double l2,
                    const Eigen::MatrixXd& z, std::span<const int> labels, bool want_grad) {
  const auto n = z.rows();
  const Eigen::MatrixXd logits = (z * W.transpose()).rowwise() + b.transpose();
  const Eigen::MatrixXd logp = log_softmax_rows(logits);
  Evaluation ev;
  double nll = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) nll -= logp(i, labels[static_cast<std::size_t>(i)]);
  ev.loss = nll / static_cast<double>(n) + 0.5 * l2 * W.squaredNorm();
  if (want_grad) {
    Eigen::MatrixXd resid = logp.array().exp();
    for (Eigen::Index i = 0; i < n; ++i) resid(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
    resid /= static_cast<double>(n);
    ev.dW = resid.transpose() * z + l2 * W;
    ev.db = resid.colwise().sum().transpose();
  }
  return ev;
}

}  // namespace

int argmax_first(const Eigen::Ref<const Eigen::VectorXd>& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

LogRegModel fit_logreg(const Eigen::MatrixXd& z_train, std::span<const int> labels,
                       const LogRegOptions& opts, int n_classes) {
  if (static_cast<std::size_t>(z_train.rows()) != labels.size()) {
    throw ShapeError("embedding rows and label count differ");
  }
  if (labels.empty()) throw PreconditionError("fit_logreg needs training data");
  if (!(opts.l2 >= 0.0)) throw DomainError("l2 must be nonnegative");
  if (!z_train.allFinite()) throw DomainError("non-finite training embeddings");
  int max_label = -1;
  for (int c : labels) {
    if (c < 0) throw RangeError("negative class label");
    max_label = std::max(max_label, c);
  }
  if (n_classes == 0) n_classes = max_label + 1;
  if (max_label >= n_classes) throw RangeError("label exceeds n_classes");
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
  for (int c : labels) ++counts[static_cast<std::size_t>(c)];
  std::size_t present = 0;
  for (std::size_t c : counts) present += c > 0 ? 1 : 0;
  if (present < 2) throw PreconditionError("fit_logreg needs at least two distinct classes");
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw PreconditionError("class " + std::to_string(c) + " has no training examples");
    }
  }

  LogRegModel m;
  m.l2 = opts.l2;
  m.W = Eigen::MatrixXd::Zero(n_classes, z_train.cols());
  m.b = Eigen::VectorXd::Zero(n_classes);

  Evaluation cur = evaluate(m.W, m.b, m.l2, z_train, labels, true);
  if (opts.loss_trace) opts.loss_trace->push_back(cur.loss);
  double step = 1.0;
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    const double gnorm2 = cur.dW.squaredNorm() + cur.db.squaredNorm();
    if (std::sqrt(gnorm2) < opts.tol) {
      m.converged = true;
      break;
    }
    // Armijo backtracking; the step is allowed to grow again after success.
    step *= 2.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::MatrixXd W_new = m.W - step * cur.dW;
      Eigen::VectorXd b_new = m.b - step * cur.db;
      const double trial = evaluate(W_new, b_new, m.l2, z_train, labels, false).loss;
      if (trial <= cur.loss - 1e-4 * step * gnorm2) {
        m.W = std::move(W_new);
        m.b = std::move(b_new);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    m.iterations = it + 1;
    // No representable decrease left at double precision.
    if (!accepted) break;
    cur = evaluate(m.W, m.b, m.l2, z_train, labels, true);
    if (opts.loss_trace) opts.loss_trace->push_back(cur.loss);
  }
  if (!m.converged) {
    const double gnorm = std::sqrt(cur.dW.squaredNorm() + cur.db.squaredNorm());
    m.converged = gnorm < opts.tol;
  }
  return m;
}

double logreg_objective(const LogRegModel& m, const Eigen::MatrixXd& z, std::span<const int> labels) {
  return evaluate(m.W, m.b, m.l2, z, labels, false).loss;
}

Eigen::VectorXd predict_proba(const LogRegModel& m, const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != m.W.cols()) {
    throw ShapeError("embedding has dimension " + std::to_string(z.size()) + ", classifier expects " +
                     std::to_string(m.W.cols()));
  }
  Eigen::VectorXd logits = m.W * z + m.b;
  const double mx = logits.maxCoeff();
  Eigen::VectorXd p = (logits.array() - mx).exp();
  return p / p.sum();
}

int predict(const LogRegModel& m, const Eigen::Ref<const Eigen::VectorXd>& z) {
  return argmax_first(predict_proba(m, z));
}

}  // namespace edgecert
