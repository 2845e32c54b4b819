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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "edgecert/errors.hpp"
#include "edgecert/noise.hpp"

using namespace edgecert;

namespace {

StructVector dense_vector(std::size_t d) {
  StructVector v;
  v.universe = 2 * d;
  for (Slot s = 0; s < d; ++s) v.present.push_back(2 * s);
  return v;
}

bool subset(const std::vector<Slot>& a, const std::vector<Slot>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

double binom(double n, double r) { return std::exp(log_choose(n, r)); }

}  // namespace

TEST_CASE("edgedrop degenerate and support") {
  const StructVector v = dense_vector(50);
  for (std::uint64_t i = 0; i < 20; ++i) {
    CHECK(sample_edgedrop(v, {0.0}, 1, i).toggled.empty());
    const NoiseDraw eps = sample_edgedrop(v, {0.7}, 1, i);
    CHECK(std::is_sorted(eps.toggled.begin(), eps.toggled.end()));
    CHECK(subset(eps.toggled, v.present));
    CHECK(subset(apply_xor(v, eps).present, v.present));
  }
  CHECK_THROWS_AS(sample_edgedrop(v, {1.0}, 1, 0), DomainError);
  CHECK_THROWS_AS(sample_edgedrop(v, {-0.1}, 1, 0), DomainError);
}

TEST_CASE("edgedrop is deterministic in seed and draw index") {
  const StructVector v = dense_vector(200);
  CHECK(sample_edgedrop(v, {0.5}, 3, 4).toggled == sample_edgedrop(v, {0.5}, 3, 4).toggled);
  CHECK(sample_edgedrop(v, {0.5}, 3, 4).toggled != sample_edgedrop(v, {0.5}, 3, 5).toggled);
  CHECK(sample_edgedrop(v, {0.5}, 3, 4).toggled != sample_edgedrop(v, {0.5}, 4, 4).toggled);
}

TEST_CASE("edgedrop count follows Binomial(1000, 0.9)") {
  const StructVector v = dense_vector(1000);
  const std::size_t draws = 10000;
  const double mean = 900.0;
  const double sd = std::sqrt(1000 * 0.9 * 0.1);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t outside = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double c = static_cast<double>(sample_edgedrop(v, {0.9}, 11, i).toggled.size());
    sum += c;
    sum_sq += c * c;
    outside += std::fabs(c - mean) > 3.0 * sd ? 1 : 0;
  }
  const double m = sum / static_cast<double>(draws);
  const double var = sum_sq / static_cast<double>(draws) - m * m;
  CHECK(std::fabs(m - mean) <= 3.0 * sd / std::sqrt(static_cast<double>(draws)));
  CHECK(var == doctest::Approx(sd * sd).epsilon(0.05));
  // Two-sided 3 sigma tail of a near-normal count is about 0.27%.
  CHECK(static_cast<double>(outside) / static_cast<double>(draws) < 0.006);
}

TEST_CASE("distinct draw indices are independent (chi-square smoke test)") {
  // One slot, beta 0.5: successive draws should fill the 2x2 table evenly.
  const StructVector v{1, {0}};
  double table[2][2] = {{0, 0}, {0, 0}};
  const std::size_t pairs = 20000;
  for (std::size_t i = 0; i < pairs; ++i) {
    const int a = sample_edgedrop(v, {0.5}, 99, 2 * i).toggled.empty() ? 0 : 1;
    const int b = sample_edgedrop(v, {0.5}, 99, 2 * i + 1).toggled.empty() ? 0 : 1;
    table[a][b] += 1.0;
  }
  double chi2 = 0.0;
  const double n = static_cast<double>(pairs);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double row = table[a][0] + table[a][1];
      const double col = table[0][b] + table[1][b];
      const double expect = row * col / n;
      chi2 += (table[a][b] - expect) * (table[a][b] - expect) / expect;
    }
  }
  // df = 1, p = 0.001 critical value.
  CHECK(chi2 < 10.828);
}

TEST_CASE("apply_xor") {
  const StructVector v{4, {0, 1}};
  CHECK(apply_xor(v, {{0}}).present == std::vector<Slot>{1});
  CHECK(apply_xor(v, {{}}) == v);
  CHECK(apply_xor(v, {{2}}).present == std::vector<Slot>{0, 1, 2});
  CHECK(apply_xor(apply_xor(v, {{1, 3}}), {{1, 3}}) == v);
  CHECK_THROWS_AS(apply_xor(v, {{4}}), RangeError);
}

TEST_CASE("delta_exact") {
  CHECK(delta_exact(0, {0.9}) == 0.0);
  CHECK(delta_exact(2, {0.9}) == doctest::Approx(0.19));
  CHECK(delta_exact(1, {0.9}) == doctest::Approx(0.1));
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(delta_exact(k + 1, {0.8}) >= delta_exact(k, {0.8}));
    CHECK(delta_exact(k, {0.9}) <= delta_exact(k, {0.8}));
  }
}

TEST_CASE("delta_paper") {
  CHECK(delta_paper(10, 3, 0, {0.9}) == 0.0);
  CHECK(delta_paper(4, 4, 1, {0.9}) == doctest::Approx(0.82));
  CHECK_THROWS_AS(delta_paper(3, 4, 1, {0.9}), DomainError);
  CHECK(delta_paper(1000000, 100000, 5, {0.9}) <= 1.0);

  for (std::size_t d = 0; d <= 20; ++d) {
    for (std::size_t e = 0; e <= d; ++e) {
      for (double beta : {0.0, 0.3, 0.5, 0.9, 0.99}) {
        double prev = 0.0;
        for (std::size_t k = 0; k <= 5; ++k) {
          const double p = delta_paper(d, e, k, {beta});
          // Independent evaluation with plain binomials.
          const double ref = 1.0 - binom(static_cast<double>(d), static_cast<double>(e)) /
                                       binom(static_cast<double>(d + k), static_cast<double>(e)) *
                                       std::pow(beta, static_cast<double>(k));
          CHECK(p == doctest::Approx(std::clamp(ref, 0.0, 1.0)).epsilon(1e-9));
          CHECK(p >= 0.0);
          CHECK(p <= 1.0);
          CHECK(p >= delta_exact(k, {beta}) - 1e-12);
          CHECK(p >= prev - 1e-12);
          prev = p;
        }
      }
    }
  }
}

TEST_CASE("delta policy dispatch") {
  const EdgeDropSpec spec{0.9};
  CHECK(delta_for({DeltaMode::kExact, std::nullopt}, 10, 3, spec) == delta_exact(3, spec));
  // Default e is round(d * (1 - beta)) = 1.
  CHECK(delta_for({DeltaMode::kPaper, std::nullopt}, 10, 3, spec) == delta_paper(10, 1, 3, spec));
  CHECK(delta_for({DeltaMode::kPaper, std::size_t{4}}, 10, 3, spec) == delta_paper(10, 4, 3, spec));
  CHECK_THROWS_AS(delta_for({DeltaMode::kPaper, std::size_t{11}}, 10, 3, spec), DomainError);
}

TEST_CASE("mc collision estimate") {
  const StructVector v{pair_universe(8), {0, 3, 5, 9, 14}};
  const std::vector<Slot> delta{1, 2, 4};
  const McEstimate m = mc_collision_estimate(v, delta, {0.9}, 100000, 5);
  CHECK(std::fabs(m.estimate - 0.271) <= 3.0 * m.std_error);
  CHECK(m.std_error == doctest::Approx(std::sqrt(m.estimate * (1 - m.estimate) / 1e5)));

  CHECK(mc_collision_estimate(v, delta, {0.0}, 1000, 5).estimate == 1.0);
  const McEstimate none = mc_collision_estimate(v, {}, {0.9}, 1000, 5);
  CHECK(none.estimate == 0.0);
  const std::vector<Slot> clash{3};
  CHECK_THROWS_AS(mc_collision_estimate(v, clash, {0.9}, 10, 5), PreconditionError);
}

TEST_CASE("flip noise") {
  const StructVector v{10000, {1, 5, 7}};
  CHECK(sample_flip(v, 0.0, 1, 1).toggled.empty());
  CHECK(sample_flip(v, 1.0, 1, 1).toggled.size() == 10000);
  const double sd = std::sqrt(10000 * 0.1 * 0.9);
  double sum = 0.0;
  const int draws = 200;
  for (int i = 0; i < draws; ++i) {
    const auto t = sample_flip(v, 0.1, 2, static_cast<std::uint64_t>(i)).toggled;
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK(std::fabs(static_cast<double>(t.size()) - 1000.0) <= 4.5 * sd);
    sum += static_cast<double>(t.size());
  }
  CHECK(std::fabs(sum / draws - 1000.0) <= 3.0 * sd / std::sqrt(static_cast<double>(draws)));
  CHECK_THROWS_AS(sample_flip(v, 1.5, 1, 1), DomainError);
}
