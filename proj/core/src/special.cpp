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

#include "edgecert/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "edgecert/errors.hpp"

namespace edgecert {
namespace {

constexpr int kMaxCfIterations = 10000;
constexpr double kCfEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a, b); converges fast for x < (a + 1) / (a + b + 2).
double beta_cf(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxCfIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfEpsilon) return h;
  }
  return h;
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete_beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_cf(x, a, b) / a;
  return 1.0 - std::exp(log_front) * beta_cf(1.0 - x, b, a) / b;
}

double beta_pdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) {
    if (x == 0.0 && a == 1.0) return std::exp(-log_beta(a, b));
    if (x == 1.0 && b == 1.0) return std::exp(-log_beta(a, b));
    return (x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0) ? std::numeric_limits<double>::infinity()
                                                          : 0.0;
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

double beta_quantile(double q, double a, double b) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("beta_quantile needs q in (0, 1), got " + std::to_string(q));
  }
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_quantile needs positive shapes");
  if (b == 1.0) return std::pow(q, 1.0 / a);
  if (a == 1.0) return -std::expm1(std::log1p(-q) / b);

  double lo = 0.0;
  double hi = 1.0;
  double x = a / (a + b);
  for (int it = 0; it < 300; ++it) {
    const double f = incomplete_beta(x, a, b) - q;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo < 1e-15) break;
    const double pdf = beta_pdf(x, a, b);
    double next = pdf > 0.0 && std::isfinite(pdf) ? x - f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-16 * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace edgecert
