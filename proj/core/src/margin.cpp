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

#include "edgecert/margin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgecert/encoder.hpp"
#include "edgecert/errors.hpp"

namespace edgecert {
namespace {

// Profile-likelihood equation for the Weibull shape k on y = x / max(x):
//   sum y^k ln y / sum y^k + ln(max x) - 1/k - mean(ln x) = 0
// Increasing in k.
struct ShapeEquation {
  std::vector<double> log_y;
  double mean_log_x = 0.0;
  double log_x_max = 0.0;

  double operator()(double k) const {
    double num = 0.0;
    double den = 0.0;
    for (double ly : log_y) {
      const double w = std::exp(k * ly);
      num += w * ly;
      den += w;
    }
    return num / den + log_x_max - 1.0 / k - mean_log_x;
  }
};

}  // namespace

std::vector<double> margin_distances(const Eigen::VectorXd& z_pos,
                                     std::span<const Eigen::VectorXd> negatives) {
  std::vector<double> out;
  out.reserve(negatives.size());
  for (const auto& neg : negatives) {
    if (neg.size() != z_pos.size()) throw ShapeError("negative has the wrong dimension");
    out.push_back(std::clamp((1.0 - cosine_sim(z_pos, neg)) / 2.0, 0.0, 1.0));
  }
  return out;
}

WeibullFit fit_reverse_weibull(std::span<const double> samples, std::size_t lambda) {
  if (lambda == 0) throw PreconditionError("lambda must be >= 1");
  if (lambda > samples.size()) {
    throw PreconditionError("lambda=" + std::to_string(lambda) + " exceeds sample count " +
                            std::to_string(samples.size()));
  }
  std::vector<double> xs(samples.begin(), samples.end());
  std::partial_sort(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(lambda), xs.end());
  xs.resize(lambda);
  std::vector<double> pos;
  for (double x : xs) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError("margin samples must be finite and >= 0");
    if (x > 0.0) pos.push_back(x);
  }
  if (pos.size() < 2 || *std::min_element(pos.begin(), pos.end()) ==
                            *std::max_element(pos.begin(), pos.end())) {
    throw DomainError("degenerate Weibull fit: need two distinct positive margins");
  }

  ShapeEquation eq;
  eq.log_x_max = std::log(*std::max_element(pos.begin(), pos.end()));
  double sum_log = 0.0;
  for (double x : pos) {
    eq.log_y.push_back(std::log(x) - eq.log_x_max);
    sum_log += std::log(x);
  }
  eq.mean_log_x = sum_log / static_cast<double>(pos.size());

  double lo = 1e-3;
  double hi = 1.0;
  while (eq(lo) > 0.0 && lo > 1e-12) lo *= 0.1;
  while (eq(hi) < 0.0 && hi < 1e6) hi *= 2.0;
  if (!(eq(lo) <= 0.0 && eq(hi) >= 0.0)) throw DomainError("Weibull shape equation has no root");
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (eq(mid) < 0.0 ? lo : hi) = mid;
  }
  const double k = 0.5 * (lo + hi);

  double mean_pow = 0.0;
  for (double ly : eq.log_y) mean_pow += std::exp(k * ly);
  mean_pow /= static_cast<double>(pos.size());
  WeibullFit fit;
  fit.sigma = k;
  fit.a = std::exp(eq.log_x_max) * std::pow(mean_pow, 1.0 / k);
  fit.lambda_used = pos.size();
  return fit;
}

double positive_prob(double s, const WeibullFit& fit) {
  if (!(s >= -1.0 && s <= 1.0)) throw DomainError("cosine similarity must lie in [-1, 1]");
  if (!(fit.a > 0.0 && fit.sigma > 0.0)) throw DomainError("Weibull parameters must be positive");
  return std::exp(-std::pow((1.0 - s) / fit.a, fit.sigma));
}

bool latent_robust_check(const Eigen::VectorXd& z, const Eigen::VectorXd& z_pos,
                         std::span<const Eigen::VectorXd> negatives) {
  if (negatives.empty()) throw PreconditionError("latent_robust_check needs negatives");
  const double s_pos = cosine_sim(z, z_pos);
  double s_neg = -1.0;
  for (const auto& neg : negatives) s_neg = std::max(s_neg, cosine_sim(z, neg));
  return s_pos > s_neg;
}

}  // namespace edgecert
