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
#include <random>

#include "fragqite/funcapprox.hpp"

namespace fragqite {
namespace {

// Oracle: Σ_m (β/2)^{2m+k} / (m! (m+k)!) in long double. Every term is
// positive, so the sum carries no cancellation at any β.
double bessel_power_series(int k, double beta) {
  const long double h = 0.5L * beta;
  long double term = 1.0L;
  for (int j = 1; j <= k; ++j) term *= h / j;
  long double sum = term;
  for (int m = 1; m < 5000; ++m) {
    term *= h * h / (static_cast<long double>(m) * (m + k));
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return static_cast<double>(sum);
}

double naive_chebyshev(const VectorXd& b, double x) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < b.size(); ++k) s += b[k] * std::cos(k * std::acos(x));
  return s;
}

double max_truncation_error(const ChebyshevSeries& s, int grid) {
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double x = -1.0 + 2.0 * i / grid;
    worst = std::max(worst, std::abs(s(x) - std::exp(-s.beta * (x - s.lambda_min))));
  }
  return worst;
}

TEST(BesselI, Examples) {
  EXPECT_DOUBLE_EQ(bessel_i(0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(bessel_i(3, 0.0), 0.0);
  // Frozen mpmath values.
  EXPECT_NEAR(bessel_i(1, 1.0), 0.56515910399248503, 1e-15);
  EXPECT_NEAR(bessel_i(0, 1.0), 1.2660658777520083, 1e-15);
  EXPECT_NEAR(bessel_i(5, 30.0) / 512151465476.93497, 1.0, 1e-12);
  EXPECT_NEAR(bessel_i(0, 500.0) / 2.5048094765700781e215, 1.0, 1e-12);
}

TEST(BesselI, MatchesQuadratureAcrossRegimes) {
  for (double beta : {0.3, 5.0, 19.9, 20.1, 75.0, 300.0, 700.0}) {
    for (int k : {0, 1, 2, 7, 15, 30}) {
      const double ref = bessel_power_series(k, beta);
      EXPECT_NEAR(bessel_i(k, beta) / ref, 1.0, 1e-12) << "k=" << k << " beta=" << beta;
    }
  }
}

TEST(BesselI, AllAgreesWithSingle) {
  const VectorXd all = bessel_i_all(25, 42.0);
  for (int k = 0; k <= 25; ++k) EXPECT_NEAR(all[k] / bessel_i(k, 42.0), 1.0, 1e-13);
}

TEST(BesselI, RejectsOverflowAndNegativeArguments) {
  EXPECT_THROW(bessel_i(0, 701.0), ConfigError);
  EXPECT_THROW(bessel_i(-1, 1.0), ConfigError);
  EXPECT_THROW(bessel_i(0, -1.0), ConfigError);
}

TEST(JacobiAnger, BetaZeroIsIdentity) {
  const ChebyshevSeries s = jacobi_anger_coeffs(0.0, -1.0, 6);
  ASSERT_EQ(s.coeffs.size(), 4);
  EXPECT_DOUBLE_EQ(s.coeffs[0], 1.0);
  for (int k = 1; k < 4; ++k) EXPECT_DOUBLE_EQ(s.coeffs[k], 0.0);
}

TEST(JacobiAnger, BesselCoefficients) {
  const ChebyshevSeries s = jacobi_anger_coeffs(1.0, 0.0, 4);
  EXPECT_NEAR(s.coeffs[0], 1.2660658777520083, 1e-14);
  EXPECT_NEAR(s.coeffs[1], -1.1303182079849701, 1e-14);
  EXPECT_NEAR(s.coeffs[2], 0.27149533953407656, 1e-14);
}

TEST(JacobiAnger, LambdaMinShiftIsScalarFactor) {
  const ChebyshevSeries a = jacobi_anger_coeffs(2.5, 0.0, 10);
  const ChebyshevSeries b = jacobi_anger_coeffs(2.5, -1.0, 10);
  EXPECT_LT((b.coeffs - std::exp(-2.5) * a.coeffs).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(jacobi_anger_coeffs(1.0, -1.0, 3), ConfigError);
}

TEST(JacobiAnger, ClenshawMatchesNaiveSum) {
  const ChebyshevSeries s = jacobi_anger_coeffs(12.0, -1.0, 40);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen);
    EXPECT_NEAR(s(x), naive_chebyshev(s.coeffs, x), 1e-12);
  }
}

TEST(JacobiAnger, TruncationWithinFirstBound) {
  for (double beta : {0.1, 1.0, 4.0, 10.0, 30.0}) {
    for (double eps : {1e-2, 1e-4, 1e-8}) {
      const int q = cheb_truncation_order(beta, eps);
      const ChebyshevSeries s = jacobi_anger_coeffs(beta, -1.0, q);
      const double err = max_truncation_error(s, 10000);
      EXPECT_LE(err, cheb_truncation_bound(beta, q)) << beta << " " << eps;
      EXPECT_LE(err, eps);
    }
  }
}

TEST(ChebTruncationOrder, Examples) {
  EXPECT_EQ(cheb_truncation_order(1.0, 1e-3), 8);
  EXPECT_NEAR(cheb_truncation_bound(1.0, 8), 1.0 / 1920.0, 1e-18);
  EXPECT_NEAR(cheb_truncation_bound(1.0, 6), 1.0 / 192.0, 1e-17);
  EXPECT_EQ(cheb_truncation_order(0.0, 1e-3), 0);
  int prev = 0;
  for (int i = 0; i <= 200; ++i) {
    const int q = cheb_truncation_order(0.25 * i, 1e-6);
    EXPECT_GE(q, prev);
    EXPECT_EQ(q % 2, 0);
    prev = q;
  }
}

TEST(ChebTruncationOrder, IsSmallestPassingOrder) {
  for (double beta : {0.5, 3.0, 17.0}) {
    const int q = cheb_truncation_order(beta, 1e-5);
    EXPECT_LT(cheb_truncation_bound(beta, q), 1e-5);
    if (q >= 2) {
      EXPECT_GE(cheb_truncation_bound(beta, q - 2), 1e-5);
    }
  }
}

TEST(Q1Bound, Examples) {
  const double e = std::exp(1.0), l = std::log(1e3);
  const double oracle = 2.0 * (e * 10.0 / 2.0 + l / std::log(e + 2.0 * l / (e * 10.0)));
  EXPECT_NEAR(q1_bound(10.0, 1e-3), oracle, 1e-12);
  EXPECT_NEAR(q1_bound(10.0, 1e-3), 38.98, 0.005);
  EXPECT_EQ(even_ceil(q1_bound(10.0, 1e-3)), 40);
  // The β → 0⁺ limit is reached logarithmically.
  double prev = q1_bound(1e-3, 1e-3);
  for (double beta : {1e-9, 1e-50, 1e-300}) {
    EXPECT_LT(q1_bound(beta, 1e-3), prev);
    prev = q1_bound(beta, 1e-3);
  }
  EXPECT_LT(prev, 0.025);
  for (double beta : {0.1, 1.0, 10.0}) EXPECT_GT(q1_bound(beta, 1e-4), q1_bound(beta, 1e-3));
}

TEST(Q1Bound, OverestimatesTheTruncationOrder) {
  for (int i = 1; i <= 400; ++i) {
    const double beta = 0.05 * i;
    for (double eps : {1e-2, 1e-3, 1e-6}) {
      const int q = even_ceil(q1_bound(beta, eps));
      EXPECT_LT(cheb_truncation_bound(beta, q), eps) << beta << " " << eps;
    }
  }
}

TEST(GenericCheb, Examples) {
  const ChebyshevSeries t3 = generic_cheb_coeffs([](double x) { return 4 * x * x * x - 3 * x; }, 6);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(t3.coeffs[k], k == 3 ? 1.0 : 0.0, 1e-14);

  const ChebyshevSeries c = generic_cheb_coeffs([](double) { return 0.37; }, 4);
  EXPECT_NEAR(c.coeffs[0], 0.37, 1e-15);
  EXPECT_NEAR(c.coeffs.tail(2).cwiseAbs().maxCoeff(), 0.0, 1e-15);

  const ChebyshevSeries g = generic_cheb_coeffs([](double x) { return std::exp(-x); }, 8);
  const ChebyshevSeries ja = jacobi_anger_coeffs(1.0, 0.0, 8);
  EXPECT_LT((g.coeffs - ja.coeffs).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GenericCheb, InterpolatesAtNodes) {
  auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
  const int q = 10, h = q / 2;
  const ChebyshevSeries s = generic_cheb_coeffs(f, q, h + 1);
  for (int j = 0; j <= h; ++j) {
    const double x = std::cos(M_PI * (j + 0.5) / (h + 1));
    EXPECT_NEAR(s(x), f(x), 1e-13);
  }
  EXPECT_THROW(generic_cheb_coeffs([](double) { return NAN; }, 4), ConfigError);
}

TEST(ChebErrorBound, Examples) {
  EXPECT_DOUBLE_EQ(cheb_error_bound(0.0, 10), 0.0);
  EXPECT_DOUBLE_EQ(cheb_error_bound(3.5, 0), 3.5);
  for (double beta : {0.5, 2.0, 9.0}) {
    EXPECT_NEAR(cheb_error_bound(std::pow(beta, 5), 8), cheb_truncation_bound(beta, 8),
                1e-15 * cheb_truncation_bound(beta, 8));
  }
}

TEST(Taylor, Examples) {
  const TaylorResult zero = taylor_order_and_alpha(0.0, -1.0, 0.3, 1e-3);
  EXPECT_EQ(zero.order, 0);
  EXPECT_DOUBLE_EQ(zero.alpha, std::exp(-0.3));
  ASSERT_EQ(zero.series.coeffs.size(), 1);
  EXPECT_DOUBLE_EQ(zero.series.coeffs[0], 1.0);

  EXPECT_DOUBLE_EQ(taylor_order_and_alpha(2.0, -1.0, 0.7, 1e-3).alpha, std::exp(-0.7));
  EXPECT_DOUBLE_EQ(taylor_order_and_alpha(2.0, -0.5, 0.7, 1e-3).alpha, std::exp(-1.0 - 0.7));
}

TEST(Taylor, OrderIsSmallestFactorialSearch) {
  const double beta = 1.0, gamma = 1.0, eps = 1e-3;
  const TaylorResult t = taylor_order_and_alpha(beta, -1.0, gamma, eps);
  const double alpha = std::exp(-gamma);
  int oracle = 0;
  double term = alpha * beta;  // α β^{L+1}/(L+1)! at L = 0
  while (term > eps / 4.0) {
    ++oracle;
    term *= beta / (oracle + 1);
  }
  EXPECT_EQ(t.order, oracle);
  for (int l = 0; l <= t.order; ++l) {
    EXPECT_NEAR(t.series.coeffs[l], std::exp(-beta) * std::pow(-beta, l) / std::tgamma(l + 1.0), 1e-15);
  }
}

TEST(Fourier, BetaZeroIsConstant) {
  const double gamma = 0.4;
  const FourierSeries f = fourier_from_taylor(taylor_order_and_alpha(0.0, -1.0, gamma, 1e-3), 0.0,
                                              gamma, 1e-3);
  const int mid = f.q / 2;
  EXPECT_NEAR(f.coeffs[mid].real(), std::exp(-gamma), 1e-14);
  for (int m = 0; m <= f.q; ++m) {
    if (m != mid) {
      EXPECT_NEAR(std::abs(f.coeffs[m]), 0.0, 1e-14);
    }
  }
}

TEST(Fourier, DegreeFromWindowWidth) {
  const double beta = 3.0, eps = 1e-4;
  const FourierSeries f = fourier_from_taylor(taylor_order_and_alpha(beta, -1.0, beta, eps), beta,
                                              beta, eps);
  EXPECT_NEAR(f.delta, M_PI / 4.0, 1e-15);
  EXPECT_EQ(f.q, even_ceil(8.0 * std::log(4.0 / eps)));
  EXPECT_NEAR(f.t, M_PI / 4.0, 1e-15);
}

TEST(Fourier, CertifiedOnEverySpectrum) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double beta : {0.5, 2.0, 6.0}) {
    const double gamma = gamma_opt(beta, Kind::prob), eps = 1e-3;
    const FourierSeries f = fourier_from_taylor(taylor_order_and_alpha(beta, -1.0, gamma, eps),
                                                beta, gamma, eps);
    ASSERT_TRUE(f.certified);
    EXPECT_LE(f.certified_error, eps);
    EXPECT_LE(f.max_modulus, 1.0 + 1e-12);
    for (int i = 0; i < 500; ++i) {
      const double lam = u(gen);
      const double ideal = f.alpha * std::exp(-beta * (lam + 1.0));
      EXPECT_LE(std::abs(f(lam * f.t) - ideal), f.certified_error * (1.0 + 1e-9) + 1e-14);
    }
    for (int i = 0; i <= 2000; ++i) {
      const double x = -M_PI + 2.0 * M_PI * i / 2000;
      EXPECT_LE(std::abs(f(x)), 1.0 + 1e-12);
    }
  }
}

TEST(GammaOpt, Examples) {
  EXPECT_NEAR(gamma_opt(2.0, Kind::prob), std::sqrt(2.0) - 1.0, 1e-15);
  // (β/2)(√(1 + 2/(μβ)) − 1) at μ = 1/2, β = 2.
  EXPECT_NEAR(gamma_opt(2.0, Kind::coh), std::sqrt(3.0) - 1.0, 1e-15);
  EXPECT_NEAR(gamma_opt(1e12, Kind::prob), 0.5, 1e-11);
  EXPECT_NEAR(gamma_opt(1e12, Kind::coh), 1.0, 1e-11);
  EXPECT_THROW(gamma_opt(0.0, Kind::prob), ConfigError);
}

TEST(GammaOpt, NearOptimalAgainstSweep) {
  // Expected P2 cost at λ_min = −1 as a function of γ, with ε' = ε α √p / 2.
  const double p = 0.1, eps = 1e-3;
  for (Kind kind : {Kind::prob, Kind::coh}) {
    const double m = mu(kind);
    auto cost = [&](double beta, double g) {
      const double a = std::exp(-g);
      return q2_bound(beta, g, eps * a * std::sqrt(p) / 2.0) / std::pow(a * a * p, m);
    };
    for (double beta : {0.5, 2.0, 10.0, 100.0}) {
      const double g0 = gamma_opt(beta, kind);
      double best = cost(beta, g0);
      for (int i = 1; i <= 200; ++i) best = std::min(best, cost(beta, 0.02 * i * 4.0 * g0));
      const double gap = (cost(beta, g0) - best) / best;
      EXPECT_LE(gap, 1.0 / std::log(8.0 * std::exp(2.0 * g0) / (std::sqrt(p) * eps)));
    }
  }
}

TEST(Q2Bound, Examples) {
  EXPECT_NEAR(q2_bound(2.0, 0.414214, 1e-3), 193.365, 1e-3);
  EXPECT_EQ(even_ceil(q2_bound(2.0, 0.414214, 1e-3)), 194);
  EXPECT_DOUBLE_EQ(q2_bound(0.0, 0.3, 1e-3), 4.0 * std::log(4e3));
  EXPECT_LT(q2_bound(5.0, 1.0, 1e-3), q2_bound(5.0, 0.5, 1e-3));
}

}  // namespace
}  // namespace fragqite
