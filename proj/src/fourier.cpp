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

#include <algorithm>
#include <array>
#include <cmath>

#include "fragqite/funcapprox.hpp"

namespace fragqite {

namespace {

// Bridge settings tried in order: (fraction of the gap left unconstrained next
// to each window edge, weight of the bridge relative to the window fit).
constexpr std::array<std::pair<double, double>, 6> kBridges = {
    {{0.25, 1e-3}, {0.25, 1e-1}, {0.1, 1e-1}, {0.1, 1.0}, {0.05, 1.0}, {0.0, 1e2}}};

// Real trigonometric basis row [1, cos x, sin x, ..., cos Mx, sin Mx].
void basis_row(double x, int m_max, double* row) {
  row[0] = 1.0;
  const cplx step = std::polar(1.0, x);
  cplx z = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    z *= step;
    row[2 * m - 1] = z.real();
    row[2 * m] = z.imag();
  }
}

double window_error(const FourierSeries& fs, int n) {
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -fs.t + 2.0 * fs.t * i / n;
    err = std::max(err, std::abs(fs(x) - fs.target(x)));
  }
  return err;
}

double max_modulus(const FourierSeries& fs, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(fs(-M_PI + 2.0 * M_PI * i / n)));
  return m;
}

// Max window error on a grid doubled until two successive values agree to 1%.
double certify_window(const FourierSeries& fs) {
  int n = 8192;
  double prev = window_error(fs, n);
  for (int it = 0; it < 4; ++it) {
    n *= 2;
    const double cur = window_error(fs, n);
    if (std::abs(cur - prev) <= 0.01 * std::max(cur, 1e-300)) return std::max(cur, prev);
    prev = cur;
  }
  return prev;
}

VectorXcd fit_coefficients(const FourierSeries& fs, double buffer, double bridge_weight) {
  const int m_max = fs.q / 2;
  const int cols = 2 * m_max + 1;
  const int nw = std::max(1024, 4 * cols);
  const int ng = std::max(256, cols);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a(nw + ng, cols);
  VectorXd rhs(nw + ng);
  for (int i = 0; i < nw; ++i) {
    const double x = -fs.t + 2.0 * fs.t * i / (nw - 1);
    basis_row(x, m_max, a.row(i).data());
    rhs[i] = fs.target(x);
  }
  // Cosine ramp across the interior of the gap [t, 2π − t].
  const double g_hi = fs.target(fs.t);
  const double g_lo = fs.target(-fs.t);
  const double w = std::sqrt(bridge_weight);
  for (int i = 0; i < ng; ++i) {
    const double s = buffer + (1.0 - 2.0 * buffer) * (i + 0.5) / ng;
    const double x = fs.t + s * (2.0 * M_PI - 2.0 * fs.t);
    basis_row(x, m_max, a.row(nw + i).data());
    a.row(nw + i) *= w;
    rhs[nw + i] = w * (g_hi + (g_lo - g_hi) * 0.5 * (1.0 - std::cos(M_PI * s)));
  }
  const VectorXd sol = MatrixXd(a).colPivHouseholderQr().solve(rhs);
  VectorXcd c = VectorXcd::Zero(2 * m_max + 1);
  c[m_max] = sol[0];
  for (int m = 1; m <= m_max; ++m) {
    c[m_max + m] = cplx(sol[2 * m - 1], -sol[2 * m]) * 0.5;
    c[m_max - m] = cplx(sol[2 * m - 1], sol[2 * m]) * 0.5;
  }
  return c;
}

}  // namespace

cplx FourierSeries::operator()(double x) const {
  const int m_max = q / 2;
  const cplx step = std::polar(1.0, x);
  cplx zp = 1.0;
  cplx acc = coeffs[m_max];
  for (int m = 1; m <= m_max; ++m) {
    zp *= step;
    acc += coeffs[m_max + m] * zp + coeffs[m_max - m] * std::conj(zp);
  }
  return acc;
}

double FourierSeries::target(double x) const {
  if (t == 0.0) return alpha;
  return alpha * std::exp(-beta * (x / t - lambda_min));
}

FourierSeries fourier_fit(const TaylorResult& taylor, double beta, double gamma,
                          double eps_tr, int q) {
  require(gamma > 0.0 && beta >= 0.0 && eps_tr > 0.0, "fourier_fit: bad arguments");
  require(q >= 0 && q % 2 == 0, "fourier_fit requires even q >= 0");
  FourierSeries fs;
  fs.q = q;
  fs.beta = beta;
  fs.gamma = gamma;
  fs.lambda_min = taylor.series.lambda_min;
  fs.alpha = taylor.alpha;
  fs.delta = (M_PI / 2.0) / (1.0 + beta / gamma);
  fs.t = M_PI / 2.0 - fs.delta;
  if (beta == 0.0) {
    fs.coeffs = VectorXcd::Zero(q + 1);
    fs.coeffs[q / 2] = fs.alpha;
    fs.certified_error = 0.0;
    fs.max_modulus = fs.alpha;
    fs.certified = true;
    return fs;
  }
  // Headroom below 1 keeps the complementary polynomial away from zero.
  const double cap = 1.0 - 0.25 * (1.0 - std::exp(-gamma));
  FourierSeries best;
  for (const auto& [buffer, weight] : kBridges) {
    FourierSeries cand = fs;
    cand.coeffs = fit_coefficients(cand, buffer, weight);
    cand.max_modulus = max_modulus(cand, 8192);
    const bool scaled = cand.max_modulus > cap;
    if (scaled) {
      cand.coeffs *= cap / cand.max_modulus;
      cand.max_modulus = max_modulus(cand, 8192);
    }
    cand.certified_error = certify_window(cand);
    if (best.coeffs.size() == 0 || cand.certified_error < best.certified_error) best = cand;
    if (!scaled && cand.certified_error <= eps_tr) {
      best = cand;
      break;
    }
  }
  best.certified = best.certified_error <= eps_tr && best.max_modulus <= 1.0;
  return best;
}

FourierSeries fourier_from_taylor(const TaylorResult& taylor, double beta, double gamma,
                                  double eps_tr) {
  require(gamma > 0.0 && eps_tr > 0.0 && eps_tr < 1.0, "fourier_from_taylor: bad arguments");
  const double delta = (M_PI / 2.0) / (1.0 + beta / gamma);
  const int q = even_ceil((2.0 * M_PI / delta) * std::log(4.0 / eps_tr));
  return fourier_fit(taylor, beta, gamma, eps_tr, q);
}

}  // namespace fragqite
