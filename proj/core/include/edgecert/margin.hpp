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

// Latent-space margin tools: half cosine distances to negatives, a reverse
// Weibull fit on the closest of them, and the resulting probability that a
// representation falls in the positive region of an anchor.

struct WeibullFit {
  double a = 1.0;      // scale
  double sigma = 1.0;  // shape
  std::size_t lambda_used = 0;
};

// D_i = (1 - cos(z_pos, negatives[i])) / 2, each in [0, 1].
std::vector<double> margin_distances(const Eigen::VectorXd& z_pos,
                                     std::span<const Eigen::VectorXd> negatives);

// Maximum-likelihood two-parameter Weibull fit to the `lambda` smallest
// samples. Zeros carry no likelihood and are skipped; lambda_used counts the
// values actually fitted.
WeibullFit fit_reverse_weibull(std::span<const double> samples, std::size_t lambda);

// exp(-((1 - s) / a)^sigma)
double positive_prob(double s, const WeibullFit& fit);

// cos(z, z_pos) > max_j cos(z, negatives[j])
bool latent_robust_check(const Eigen::VectorXd& z, const Eigen::VectorXd& z_pos,
                         std::span<const Eigen::VectorXd> negatives);

}  // namespace edgecert
