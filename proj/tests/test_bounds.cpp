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


#include <gtest/gtest.h>

#include <cmath>

#include "fragqite/bounds.hpp"
#include "fragqite/funcapprox.hpp"
#include "fragqite/simulator.hpp"

namespace fragqite {
namespace {

TEST(LowerBoundLhs, ClosedForm) {
  EXPECT_NEAR(lower_bound_lhs(4.0, 1.0), std::pow((1.0 - std::exp(-1.0)) / 2.0, 2.0), 1e-16);
  EXPECT_NEAR(lower_bound_lhs(3.0, 2.5), std::pow((1.0 - std::exp(-0.3)) / 2.0, 5.0), 1e-16);
  EXPECT_EQ(lower_bound_lhs(0.0, 1.0), 0.0);
  // Far in the saturated regime the log-domain evaluation stays finite and positive.
  EXPECT_GT(lower_bound_lhs(1e6, 400.0), 0.0);
}

TEST(SolveLowerBound, ForwardEvaluationRoot) {
  // ε' chosen so that q̃ = 1 solves the equation at β = 4.
  const double eps = std::pow((1.0 - std::exp(-1.0)) / 2.0, 2.0) / 2.0;
  EXPECT_NEAR(eps, 0.049947050111716006, 1e-17);
  const LowerBoundQuery q = solve_lower_bound(4.0, eps, 1.0);
  EXPECT_NEAR(q.q_tilde, 1.0, 1e-9);
  // The rounded value 0.0499447 sits just below and gives a slightly larger q̃.
  const double rounded = solve_lower_bound(4.0, 0.0499447, 1.0).q_tilde;
  EXPECT_GT(rounded, 1.0);
  EXPECT_LT(rounded, 1.0 + 1e-4);
}

TEST(SolveLowerBound, HighPrecisionOracle) {
  // Reference roots from 40-digit arithmetic.
  EXPECT_NEAR(solve_lower_bound(100.0, 1e-3, 1.0).q_tilde, 4.4592103586497947, 1e-9);
  EXPECT_NEAR(solve_lower_bound(10.0, 1e-6, 1.0).q_tilde, 4.3262150603794702, 1e-9);
  EXPECT_NEAR(solve_lower_bound(1000.0, 1e-2, 0.5).q_tilde, 2.3219280948873623, 1e-9);
}

TEST(SolveLowerBound, ResidualAndBracket) {
  for (double beta : {1e-3, 0.3, 4.0, 50.0, 1e4}) {
    for (double eps : {0.4, 1e-2, 1e-6, 1e-14}) {
      for (double alpha : {1.0, 0.3}) {
        if (eps >= alpha / 2.0) continue;
        const LowerBoundQuery q = solve_lower_bound(beta, eps, alpha);
        EXPECT_LE(std::abs(q.residual), 1e-9) << beta << " " << eps;
        const double rhs = 2.0 * eps / alpha;
        EXPECT_GT(lower_bound_lhs(beta, 0.99 * q.q_tilde), rhs);
        EXPECT_LT(lower_bound_lhs(beta, 1.01 * q.q_tilde), rhs);
      }
    }
  }
}

TEST(SolveLowerBound, AlphaEntersThroughRatio) {
  const double a = solve_lower_bound(20.0, 1e-3, 0.25).q_tilde;
  const double b = solve_lower_bound(20.0, 4e-3, 1.0).q_tilde;
  EXPECT_NEAR(a, b, 1e-9);
}

TEST(SolveLowerBound, MonotoneInBeta) {
  for (double eps : {1e-2, 1e-6}) {
    double prev = 0.0;
    for (double beta = 1e-2; beta <= 1e3; beta *= 1.7) {
      const double q = solve_lower_bound(beta, eps, 1.0).q_tilde;
      EXPECT_GE(q, prev - 1e-9);
      prev = q;
    }
  }
}

TEST(SolveLowerBound, VanishesAsEpsApproachesHalfAlpha) {
  double prev = 1e300;
  for (double gap : {1e-1, 1e-2, 1e-4, 1e-6}) {
    const double q = solve_lower_bound(5.0, 0.5 - gap, 1.0).q_tilde;
    EXPECT_LT(q, prev);
    prev = q;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(SolveLowerBound, Preconditions) {
  EXPECT_THROW(solve_lower_bound(0.0, 1e-2, 1.0), ConfigError);
  EXPECT_THROW(solve_lower_bound(1.0, 0.5, 1.0), ConfigError);
  EXPECT_THROW(solve_lower_bound(1.0, 0.2, 0.3), ConfigError);
  EXPECT_THROW(solve_lower_bound(1.0, 0.0, 1.0), ConfigError);
}

TEST(OptimalityGap, AtLeastOne) {
  for (double beta : {1e-2, 0.1, 1.0, 10.0, 100.0, 1e3}) {
    for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
      EXPECT_GE(optimality_gap(beta, eps), 1.0);
    }
  }
}

TEST(OptimalityGap, ShrinksWithBetaOverLog) {
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
    double prev = 0.0;
    for (double beta : {1.0, 10.0, 100.0, 1e3}) {
      const double g = optimality_gap(beta, eps);
      EXPECT_GT(g, prev) << eps << " " << beta;
      prev = g;
    }
  }
  for (double beta : {10.0, 100.0}) {
    double prev = 1e300;
    for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
      const double g = optimality_gap(beta, eps);
      EXPECT_LT(g, prev) << beta << " " << eps;
      prev = g;
    }
  }
}

TEST(OptimalityGap, SimulatedP1UsesAtLeastTheBound) {
  for (double beta : {0.5, 2.0, 8.0}) {
    for (double eps : {1e-2, 1e-4}) {
      const int q = even_ceil(q1_bound(beta, eps));
      const P1Design d = design_p1(beta, eps, q);
      EXPECT_GE(d.q, solve_lower_bound(beta, eps, 1.0).q_tilde);
    }
  }
}

}  // namespace
}  // namespace fragqite
