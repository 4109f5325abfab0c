// Copyright 2026 The fragqite Authors
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

#include "fragqite/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fragqite/common.hpp"
#include "fragqite/funcapprox.hpp"

namespace fragqite {

namespace {

double log_lhs(double beta, double q) {
  // log((1 − e^{−x})/2) with x = β/(4q); expm1 keeps precision for small x.
  return 2.0 * q * (std::log(-std::expm1(-beta / (4.0 * q))) - std::log(2.0));
}

}  // namespace

double lower_bound_lhs(double beta, double q) {
  require(beta >= 0.0 && q > 0.0, "lower_bound_lhs requires beta >= 0, q > 0");
  if (beta == 0.0) return 0.0;
  return std::exp(log_lhs(beta, q));
}

LowerBoundQuery solve_lower_bound(double beta, double eps_prime, double alpha) {
  require(beta > 0.0, "solve_lower_bound requires beta > 0");
  require(alpha > 0.0 && eps_prime > 0.0 && eps_prime < alpha / 2.0,
          "solve_lower_bound requires 0 < eps' < alpha/2");
  const double rhs = 2.0 * eps_prime / alpha;
  const double log_rhs = std::log(rhs);
  auto g = [&](double q) { return log_lhs(beta, q) - log_rhs; };
  double lo = 1e-6;
  double hi = std::max(1.0, beta);
  while (g(lo) < 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw NumericalError("solve_lower_bound: lower bracket not found");
  }
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericalError("solve_lower_bound: upper bracket not found");
  }
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  LowerBoundQuery out;
  out.beta = beta;
  out.eps_prime = eps_prime;
  out.alpha = alpha;
  out.q_tilde = 0.5 * (lo + hi);
  out.residual = lower_bound_lhs(beta, out.q_tilde) - rhs;
  return out;
}

double optimality_gap(double beta, double eps_prime) {
  const double qt = solve_lower_bound(beta, eps_prime, 1.0).q_tilde;
  return even_ceil(q1_bound(beta, eps_prime)) / qt;
}

}  // namespace fragqite
