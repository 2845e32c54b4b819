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

#include <cstddef>
#include <span>
#include <vector>

namespace edgecert {

// Multinomial logistic regression: logits = W z + b.
struct LogRegModel {
  Eigen::MatrixXd W;  // n_classes x d
  Eigen::VectorXd b;
  double l2 = 1e-4;
  bool converged = false;
  std::size_t iterations = 0;

  std::size_t n_classes() const { return static_cast<std::size_t>(W.rows()); }
};

struct LogRegOptions {
  double l2 = 1e-4;
  std::size_t max_iters = 500;
  double tol = 1e-6;
  // Filled with the objective after each accepted step when non-null.
  std::vector<double>* loss_trace = nullptr;
};

// Full-batch gradient descent with Armijo backtracking on
// mean cross-entropy + (l2 / 2) ||W||^2. The bias is not penalized.
// n_classes = 0 means one past the largest label.
LogRegModel fit_logreg(const Eigen::MatrixXd& z_train, std::span<const int> labels,
                       const LogRegOptions& opts = {}, int n_classes = 0);

double logreg_objective(const LogRegModel& m, const Eigen::MatrixXd& z, std::span<const int> labels);

Eigen::VectorXd predict_proba(const LogRegModel& m, const Eigen::Ref<const Eigen::VectorXd>& z);
int predict(const LogRegModel& m, const Eigen::Ref<const Eigen::VectorXd>& z);

// Index of the largest entry, smallest index on ties.
int argmax_first(const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace edgecert
