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

#include <functional>

#include "fragqite/common.hpp"

namespace fragqite {

/// Modified Bessel function of the first kind I_k(β), 0 ≤ β ≤ 700.
double bessel_i(int k, double beta);

/// I_0(β), ..., I_kmax(β).
VectorXd bessel_i_all(int kmax, double beta);

/// Σ_k b_k T_k(λ) with k = 0..q/2.
struct ChebyshevSeries {
  VectorXd coeffs;
  double beta = 0.0;
  double lambda_min = 0.0;
  double certified_error = 0.0;

  int q() const { return 2 * static_cast<int>(coeffs.size() - 1); }
  double operator()(double lambda) const;
};

/// Clenshaw evaluation of Σ_k b_k T_k(x).
template <typename Scalar>
Scalar clenshaw(const VectorXd& b, Scalar x) {
  Scalar b1(0), b2(0);
  for (Eigen::Index k = b.size() - 1; k >= 1; --k) {
    const Scalar t = Scalar(2) * x * b1 - b2 + Scalar(b[k]);
    b2 = b1;
    b1 = t;
  }
  return x * b1 - b2 + Scalar(b.size() ? b[0] : 0.0);
}

/// Degree-q/2 Chebyshev truncation of e^{−β(λ−λ_min)}.
ChebyshevSeries jacobi_anger_coeffs(double beta, double lambda_min, int q);

/// β^{q/2+1} / (2^{q/2} (q/2+1)!).
double cheb_truncation_bound(double beta, int q);

/// Smallest even q with cheb_truncation_bound(β, q) < ε'.
int cheb_truncation_order(double beta, double eps);

/// Continuous query bound q̃1(β, ε') for the Chebyshev primitive.
double q1_bound(double beta, double eps);

/// Chebyshev coefficients of f by Gauss quadrature. `nodes` = 0 picks an
/// oversampled rule that reproduces the truncated series; nodes = q/2 + 1
/// gives the interpolant.
ChebyshevSeries generic_cheb_coeffs(const std::function<double(double)>& f, int q,
                                    int nodes = 0);

/// max_derivative / (2^{q/2} (q/2+1)!).
double cheb_error_bound(double max_derivative, int q);

struct TaylorSeries {
  VectorXd coeffs;  // a_l, l = 0..L
  int order = 0;
  double lambda_min = 0.0;
};

struct TaylorResult {
  int order = 0;
  double alpha = 1.0;
  TaylorSeries series;
};

TaylorResult taylor_order_and_alpha(double beta, double lambda_min, double gamma,
                                    double eps_tr);

/// g̃(x) = Σ_{m=−q/2}^{q/2} c_m e^{imx}, fitted to αF_β(x/t) on |x| ≤ t.
struct FourierSeries {
  VectorXcd coeffs;  // index m + q/2
  int q = 0;
  double beta = 0.0;
  double lambda_min = -1.0;
  double gamma = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double alpha = 1.0;
  double certified_error = 0.0;
  double max_modulus = 0.0;
  bool certified = false;

  cplx operator()(double x) const;
  double target(double x) const;
};

FourierSeries fourier_from_taylor(const TaylorResult& taylor, double beta, double gamma,
                                  double eps_tr);

/// Fourier fit at an explicit even degree q (for degree sweeps).
FourierSeries fourier_fit(const TaylorResult& taylor, double beta, double gamma,
                          double eps_tr, int q);

enum class Kind { prob, coh };

inline double mu(Kind k) { return k == Kind::prob ? 1.0 : 0.5; }
std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

/// γ_κ = (β/2)(√(1 + 2/(μ_κ β)) − 1).
double gamma_opt(double beta, Kind kind);

/// q̃2 = 4(β/γ + 1) ln(4/ε').
double q2_bound(double beta, double gamma, double eps);

}  // namespace fragqite
