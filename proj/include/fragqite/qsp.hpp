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

#include <cstdint>

#include "fragqite/funcapprox.hpp"

namespace fragqite {

using Matrix2cd = Eigen::Matrix2cd;

/// Σ_k b_k T_k(x) for real or complex coefficients.
template <typename Derived, typename Scalar>
auto clenshaw_t(const Eigen::MatrixBase<Derived>& b, Scalar x) {
  using R = decltype(typename Derived::Scalar{} * Scalar{});
  R b1(0), b2(0);
  for (Eigen::Index k = b.size() - 1; k >= 1; --k) {
    const R t = R(2) * R(x) * b1 - b2 + R(b[k]);
    b2 = b1;
    b1 = t;
  }
  return R(x) * b1 - b2 + (b.size() ? R(b[0]) : R(0));
}

/// Σ_k d_k U_k(x) for real or complex coefficients.
template <typename Derived, typename Scalar>
auto clenshaw_u(const Eigen::MatrixBase<Derived>& d, Scalar x) {
  using R = decltype(typename Derived::Scalar{} * Scalar{});
  R b1(0), b2(0);
  for (Eigen::Index k = d.size() - 1; k >= 0; --k) {
    const R t = R(2) * R(x) * b1 - b2 + R(d[k]);
    b2 = b1;
    b1 = t;
  }
  return b1;
}

/// Completed QSP polynomials: B(x) = Σ B_n T_n(x), D(x) = Σ D_n U_n(x),
/// with B even of degree ≤ q, D odd of degree ≤ q − 1 and
/// |B|² + (1 − x²)|D|² = 1 on [−1, 1].
struct PolyPair {
  VectorXcd B;  // length q + 1
  VectorXcd D;  // length max(q, 1)
  int q = 0;
  double unitarity_residual = 0.0;

  cplx b(double x) const { return clenshaw_t(B, x); }
  cplx d(double x) const { return clenshaw_u(D, x); }
};

/// Finds complex B, D with Re B(cos ϑ) = Σ_k b_k cos(2kϑ).
/// `b` holds the Chebyshev coefficients of 𝓑(λ) = Σ_k b_k T_k(λ), λ = cos 2ϑ.
PolyPair complete_polynomials(const VectorXd& b);

struct PulseSeq1 {
  VectorXd phis;  // φ_1..φ_{q+1}
  int q = 0;
  ChebyshevSeries target;
  VectorXd step_residuals;  // leading-coefficient mass discarded per reduction step
  double residual = 0.0;
};

/// Phases from the degree-reduction recurrence.
PulseSeq1 angles_method1(const PolyPair& pair);

/// e^{iφ_{q+1}Z} Π_{k=q/2}^{1} R1(−θ, φ_{2k}) R1(θ, φ_{2k−1}), R1(θ, φ) = e^{iθX} e^{iφZ}.
Matrix2cd eval_sequence1(const VectorXd& phis, double theta);

/// Columns (ζ, η, φ, κ) per gate, row k = 0..q.
using XiMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4>;

struct PulseSeq2 {
  VectorXd omegas;  // ω_0 = 0, ω_k = (−1)^k / 2
  XiMatrix xis;
  int q = 0;
  FourierSeries target;
  double residual = 0.0;  // max |⟨0|𝓡2(x)|0⟩ − g̃(x)| on the fitting grid
  bool converged = false;
};

struct Method2Options {
  bool constructive_seed = true;
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_lm_params = 400;
};

/// ω_k of the real-time sequence.
VectorXd method2_omegas(int q);

/// R2(x, ω, ξ) = e^{i(ζ+η)Z/2} e^{−iφY} e^{i(ζ−η)Z/2} e^{iωxZ} e^{−iκY}.
Matrix2cd r2_gate(double x, double omega, double zeta, double eta, double phi, double kappa);

/// R2(x, ω_q, ξ_q) ⋯ R2(x, ω_0, ξ_0): gate k = 0 acts first.
Matrix2cd eval_sequence2(const VectorXd& omegas, const XiMatrix& xis, double x);

PulseSeq2 angles_method2(const FourierSeries& target, double tol,
                         const Method2Options& opt = {});

struct AchievabilityReport {
  double max_value = 0.0;
  double argmax_theta = 0.0;
  bool degree_ok = true;
  bool pass = false;
};

/// Grid check of 𝓑(θ)² + (sin θ 𝓓(cos θ))² ≤ 1 with 𝓑 = Σ b_k cos 2kθ and
/// sin θ 𝓓 = Σ_{k≥1} d_k sin 2kθ (d_0 unused).
AchievabilityReport verify_achievability(const VectorXd& b, const VectorXd& d,
                                         double tol = 1e-12);

}  // namespace fragqite
