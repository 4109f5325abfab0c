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

#include "fragqite/funcapprox.hpp"

#include <algorithm>
#include <cmath>

namespace fragqite {

namespace {

constexpr double kSeriesLimit = 20.0;

double bessel_series(int k, double beta) {
  if (beta == 0.0) return k == 0 ? 1.0 : 0.0;
  const double h = 0.5 * beta;
  double term = std::exp(k * std::log(h) - std::lgamma(k + 1.0));
  double sum = term;
  for (int m = 1; m < 1000; ++m) {
    term *= h * h / (static_cast<double>(m) * (m + k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Miller backward recurrence normalized by I_0 + 2 Σ_{n≥1} I_n = e^β.
VectorXd bessel_miller(int kmax, double beta) {
  const int start =
      2 * (std::max(kmax, 1) + 20 + static_cast<int>(std::sqrt(200.0 * beta + 100.0)));
  VectorXd out = VectorXd::Zero(kmax + 1);
  double next = 0.0;
  double cur = 1e-300;
  double sum = 0.0;
  for (int n = start; n >= 1; --n) {
    const double prev = next + (2.0 * n / beta) * cur;  // I_{n-1}
    next = cur;
    cur = prev;
    if (n - 1 <= kmax) out[n - 1] = cur;
    sum += (n - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      sum *= 1e-250;
      out *= 1e-250;
    }
  }
  return (out / sum) * std::exp(beta);
}

}  // namespace

double bessel_i(int k, double beta) {
  require(k >= 0 && beta >= 0.0, "bessel_i requires k >= 0 and beta >= 0");
  require(beta <= 700.0, "bessel_i overflows for beta > 700");
  if (beta <= kSeriesLimit) return bessel_series(k, beta);
  return bessel_miller(k, beta)[k];
}

VectorXd bessel_i_all(int kmax, double beta) {
  require(kmax >= 0 && beta >= 0.0, "bessel_i_all requires kmax >= 0 and beta >= 0");
  require(beta <= 700.0, "bessel_i overflows for beta > 700");
  if (beta > kSeriesLimit) return bessel_miller(kmax, beta);
  VectorXd out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) out[k] = bessel_series(k, beta);
  return out;
}

double ChebyshevSeries::operator()(double lambda) const { return clenshaw(coeffs, lambda); }

double cheb_truncation_bound(double beta, int q) {
  const int h = q / 2;
  if (beta == 0.0) return 0.0;
  return std::exp((h + 1) * std::log(beta) - h * std::log(2.0) - std::lgamma(h + 2.0));
}

ChebyshevSeries jacobi_anger_coeffs(double beta, double lambda_min, int q) {
  require(q >= 0 && q % 2 == 0, "jacobi_anger_coeffs requires even q >= 0");
  require(beta >= 0.0, "jacobi_anger_coeffs requires beta >= 0");
  const int h = q / 2;
  const VectorXd bi = bessel_i_all(h, beta);
  const double scale = std::exp(beta * lambda_min);
  ChebyshevSeries s;
  s.beta = beta;
  s.lambda_min = lambda_min;
  s.coeffs.resize(h + 1);
  s.coeffs[0] = scale * bi[0];
  for (int k = 1; k <= h; ++k) s.coeffs[k] = (k % 2 ? -2.0 : 2.0) * scale * bi[k];
  // The derivative bound is taken over [−1, 1], where |F_β| peaks at λ = −1.
  s.certified_error = std::exp(beta * (1.0 + lambda_min)) * cheb_truncation_bound(beta, q);
  return s;
}

int cheb_truncation_order(double beta, double eps) {
  require(beta >= 0.0 && eps > 0.0 && eps < 1.0, "cheb_truncation_order: bad arguments");
  for (int q = 0;; q += 2) {
    if (cheb_truncation_bound(beta, q) < eps) return q;
    if (q > 4000000) throw NumericalError("cheb_truncation_order did not terminate");
  }
}

double q1_bound(double beta, double eps) {
  require(beta > 0.0 && eps > 0.0 && eps < 1.0, "q1_bound: bad arguments");
  const double e = std::exp(1.0);
  const double l = std::log(1.0 / eps);
  return 2.0 * (e * beta / 2.0 + l / std::log(e + 2.0 * l / (e * beta)));
}

ChebyshevSeries generic_cheb_coeffs(const std::function<double(double)>& f, int q,
                                    int nodes) {
  require(q >= 0 && q % 2 == 0, "generic_cheb_coeffs requires even q >= 0");
  const int h = q / 2;
  const int n = nodes > 0 ? nodes : 4 * (h + 1) + 64;
  require(n >= h + 1, "generic_cheb_coeffs needs at least q/2 + 1 nodes");
  VectorXd fv(n);
  for (int j = 0; j < n; ++j) {
    fv[j] = f(std::cos(M_PI * (j + 0.5) / n));
    if (!std::isfinite(fv[j])) throw ConfigError("non-finite function value at a node");
  }
  ChebyshevSeries s;
  s.coeffs.resize(h + 1);
  for (int k = 0; k <= h; ++k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += fv[j] * std::cos(k * M_PI * (j + 0.5) / n);
    s.coeffs[k] = (k == 0 ? 1.0 : 2.0) * acc / n;
  }
  double err = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = -1.0 + 2.0 * i / 10000.0;
    err = std::max(err, std::abs(s(x) - f(x)));
  }
  s.certified_error = err;
  return s;
}

double cheb_error_bound(double max_derivative, int q) {
  require(max_derivative >= 0.0 && q >= 0, "cheb_error_bound: bad arguments");
  const int h = q / 2;
  return max_derivative * std::exp(-h * std::log(2.0) - std::lgamma(h + 2.0));
}

TaylorResult taylor_order_and_alpha(double beta, double lambda_min, double gamma,
                                    double eps_tr) {
  require(beta >= 0.0 && gamma > 0.0 && eps_tr > 0.0,
          "taylor_order_and_alpha: bad arguments");
  TaylorResult r;
  r.alpha = std::exp(-beta * (1.0 + lambda_min) - gamma);
  int l = 0;
  if (beta > 0.0) {
    const double target = std::log(eps_tr / 4.0) - std::log(r.alpha);
    while ((l + 1) * std::log(beta) - std::lgamma(l + 2.0) > target) ++l;
  }
  r.order = l;
  r.series.order = l;
  r.series.lambda_min = lambda_min;
  r.series.coeffs.resize(l + 1);
  double term = std::exp(beta * lambda_min);
  for (int i = 0; i <= l; ++i) {
    r.series.coeffs[i] = term;
    term *= -beta / (i + 1);
  }
  return r;
}

std::string to_string(Kind k) { return k == Kind::prob ? "prob" : "coh"; }

Kind kind_from_string(const std::string& s) {
  if (s == "prob") return Kind::prob;
  if (s == "coh") return Kind::coh;
  throw ConfigError("unknown amplification kind: " + s);
}

double gamma_opt(double beta, Kind kind) {
  require(beta > 0.0, "gamma_opt requires beta > 0");
  const double m = mu(kind);
  // (β/2)(√(1+u) − 1) = (β/2)·u/(√(1+u) + 1) with u = 2/(μβ).
  return (1.0 / m) / (std::sqrt(1.0 + 2.0 / (m * beta)) + 1.0);
}

double q2_bound(double beta, double gamma, double eps) {
  require(beta >= 0.0 && gamma > 0.0 && eps > 0.0 && eps < 1.0, "q2_bound: bad arguments");
  return 4.0 * (beta / gamma + 1.0) * std::log(4.0 / eps);
}

}  // namespace fragqite
