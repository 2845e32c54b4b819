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

namespace edgecert {

// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
// Continued fraction (modified Lentz) with the usual symmetry switch.
double incomplete_beta(double x, double a, double b);

// Beta(a, b) density at x.
double beta_pdf(double x, double a, double b);

// q-th quantile of Beta(a, b): x with I_x(a, b) = q, for 0 < q < 1.
// Safeguarded Newton inside a shrinking bisection bracket.
double beta_quantile(double q, double a, double b);

}  // namespace edgecert
