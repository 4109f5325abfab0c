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

#pragma once

namespace fragqite {

struct LowerBoundQuery {
  double beta = 0.0;
  double eps_prime = 0.0;
  double alpha = 1.0;
  double q_tilde = 0.0;
  double residual = 0.0;  // f(q̃)
};

/// ((1 − e^{−β/(4q)})/2)^{2q}, evaluated in the log domain.
double lower_bound_lhs(double beta, double q);

/// Unique root of lower_bound_lhs(β, q̃) = 2ε'/α. Requires β > 0, 0 < ε' < α/2.
LowerBoundQuery solve_lower_bound(double beta, double eps_prime, double alpha = 1.0);

/// 2⌈q̃1/2⌉ / q̃ at α = 1.
double optimality_gap(double beta, double eps_prime);

}  // namespace fragqite
