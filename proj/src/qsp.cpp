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

#include "fragqite/qsp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/LevenbergMarquardt>

namespace fragqite {

namespace {

using Vector2cd = Eigen::Vector2cd;
using RowVector2cd = Eigen::RowVector2cd;
using cld = std::complex<long double>;

const cplx kI(0.0, 1.0);

Matrix2cd pauli_x() { return (Matrix2cd() << 0, 1, 1, 0).finished(); }
Matrix2cd pauli_y() { return (Matrix2cd() << 0, -kI, kI, 0).finished(); }
Matrix2cd pauli_z() { return (Matrix2cd() << 1, 0, 0, -1).finished(); }

Matrix2cd exp_z(double a) {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, a);
  m(1, 1) = std::polar(1.0, -a);
  return m;
}

// e^{iaX}
Matrix2cd exp_x(double a) {
  Matrix2cd m;
  m << std::cos(a), kI * std::sin(a), kI * std::sin(a), std::cos(a);
  return m;
}

// e^{−iaY}
Matrix2cd exp_my(double a) {
  Matrix2cd m;
  m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return m;
}

int next_pow2(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

// Coefficients h_0..h_degree of the outer polynomial with |h(e^{iψ})|² = F(ψ),
// from the cepstrum of F on an M-point grid.
VectorXcd outer_factor(const std::function<double(double)>& f, int degree) {
  const int m = next_pow2(std::max(4096, 16 * (degree + 1)));
  std::vector<cplx> logf(m), ceps, one_sided(m, 0.0), h_samples(m), h_coeffs;
  for (int j = 0; j < m; ++j) {
    const double v = f(2.0 * M_PI * j / m);
    logf[j] = std::log(std::max(v, 1e-300));
  }
  Eigen::FFT<double> fft;
  fft.fwd(ceps, logf);
  one_sided[0] = ceps[0] / (2.0 * m);
  for (int n = 1; n < m / 2; ++n) one_sided[n] = ceps[n] / static_cast<double>(m);
  // inv() divides by M; the exponent needs the plain sum Σ a_n e^{inψ}.
  std::vector<cplx> exponent;
  fft.inv(exponent, one_sided);
  for (int j = 0; j < m; ++j) h_samples[j] = std::exp(exponent[j] * static_cast<double>(m));
  fft.fwd(h_coeffs, h_samples);
  VectorXcd out(degree + 1);
  for (int n = 0; n <= degree; ++n) out[n] = h_coeffs[n] / static_cast<double>(m);
  return out;
}

// Roots of Σ_k a_k T_k(x) from the colleague matrix.
std::vector<cld> chebyshev_roots(const std::vector<long double>& a) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const int d = static_cast<int>(a.size()) - 1;
  if (d == 1) return {cld(-a[0] / a[1])};
  MatL c = MatL::Zero(d, d);
  c(0, 1) = 1.0L;
  for (int k = 1; k < d; ++k) {
    c(k, k - 1) = 0.5L;
    if (k + 1 < d) c(k, k + 1) = 0.5L;
  }
  for (int j = 0; j < d; ++j) c(d - 1, j) -= a[j] / (2.0L * a[d]);
  // Parlett-Reinsch balancing; the last row is large when a_d is small.
  for (bool done = false; !done;) {
    done = true;
    for (int i = 0; i < d; ++i) {
      long double col = c.col(i).cwiseAbs().sum() - std::abs(c(i, i));
      const long double row = c.row(i).cwiseAbs().sum() - std::abs(c(i, i));
      if (col == 0.0L || row == 0.0L) continue;
      const long double total = col + row;
      long double f = 1.0L;
      while (col < row / 2.0L) {
        f *= 2.0L;
        col *= 4.0L;
      }
      while (col > row * 2.0L) {
        f /= 2.0L;
        col /= 4.0L;
      }
      if ((col + row) / f < 0.95L * total) {
        done = false;
        c.row(i) /= f;
        c.col(i) *= f;
      }
    }
  }
  Eigen::EigenSolver<MatL> es(c, false);
  std::vector<cld> roots(d);
  for (int j = 0; j < d; ++j) roots[j] = es.eigenvalues()[j];
  return roots;
}

// Real Laurent coefficients κ_{−n..n} (index k + n) with |K(e^{iψ})|² = 1 − 𝓑(cos ψ)².
// Each root x_j of 1 − 𝓑(x)² fixes one root w_j of K with w + 1/w = 2x_j and
// |w_j| ≤ 1; double roots on [−1, 1] contribute e^{iψ} and e^{−iψ} once each.
bool complement_by_roots(const VectorXd& b, VectorXd& kappa) {
  const int n = static_cast<int>(b.size()) - 1;
  std::vector<long double> r(2 * n + 1, 0.0L);  // Chebyshev coefficients of 1 − 𝓑²
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const long double p = 0.5L * b[i] * b[j];
      r[i + j] -= p;
      r[std::abs(i - j)] -= p;
    }
  r[0] += 1.0L;
  long double rmax = 0.0L;
  for (auto v : r) rmax = std::max(rmax, std::abs(v));
  kappa = VectorXd::Zero(2 * n + 1);
  if (rmax < 1e-15L) return true;
  int d = 2 * n;
  while (d > 0 && std::abs(r[d]) <= 1e-15L * rmax) --d;
  r.resize(d + 1);
  if (d == 0) {
    if (r[0] < 0.0L) return false;
    kappa[n] = static_cast<double>(std::sqrt(r[0]));
    return true;
  }

  std::vector<cld> ws;
  std::vector<long double> interval;  // real roots inside [−1, 1]
  for (const cld& x : chebyshev_roots(r)) {
    if (std::abs(x.imag()) < 1e-12L && std::abs(x.real()) <= 1.0L) {
      interval.push_back(x.real());
      continue;
    }
    const cld s = std::sqrt(x * x - 1.0L);
    // The root inside the disk is the reciprocal of the outer one; this avoids
    // cancellation for large |x|.
    const cld w1 = x + s, w2 = x - s;
    ws.push_back(1.0L / (std::abs(w1) >= std::abs(w2) ? w1 : w2));
  }
  std::sort(interval.begin(), interval.end());
  for (size_t i = 0; i < interval.size(); ++i)
    ws.push_back(std::polar(1.0L, (i % 2 ? -1.0L : 1.0L) * std::acos(interval[i])));

  std::vector<cld> h(1, 1.0L);
  for (const auto& w : ws) {
    std::vector<cld> next(h.size() + 1, 0.0L);
    for (size_t i = 0; i < h.size(); ++i) {
      next[i + 1] += h[i];
      next[i] -= w * h[i];
    }
    h.swap(next);
  }

  // Fit the leading constant on the circle.
  const int grid = 2048;
  long double num = 0.0L, den = 0.0L;
  for (int j = 0; j < grid; ++j) {
    const long double psi = M_PIl * (j + 0.5L) / grid;
    const cld w = std::polar(1.0L, psi);
    cld hv = 0.0L;
    for (int i = static_cast<int>(h.size()) - 1; i >= 0; --i) hv = hv * w + h[i];
    long double qv = 0.0L;
    for (int k = 0; k <= d; ++k) qv += r[k] * std::cos(k * psi);
    const long double p = std::norm(hv);
    num += qv * p;
    den += p * p;
  }
  if (den <= 0.0L || num < 0.0L) return false;
  const long double c = std::sqrt(num / den);
  const int shift = d / 2;
  for (int i = 0; i <= d; ++i) kappa[n + i - shift] = static_cast<double>(c * h[i].real());
  return true;
}

VectorXd complement_by_cepstrum(const VectorXd& b) {
  const int n = static_cast<int>(b.size()) - 1;
  const VectorXcd h = outer_factor(
      [&](double psi) {
        const double v = clenshaw(b, std::cos(psi));
        return 1.0 - v * v;
      },
      2 * n);
  VectorXd kappa(2 * n + 1);
  for (int i = 0; i <= 2 * n; ++i) kappa[i] = h[i].real();
  return kappa;
}

PolyPair pair_from_kappa(const VectorXd& b, const VectorXd& kappa) {
  const int n = static_cast<int>(b.size()) - 1;
  PolyPair p;
  p.q = 2 * n;
  p.B = VectorXcd::Zero(p.q + 1);
  p.D = VectorXcd::Zero(std::max(p.q, 1));
  p.B[0] = cplx(b[0], kappa[n]);
  for (int k = 1; k <= n; ++k) {
    p.B[2 * k] = cplx(b[k], kappa[n + k] + kappa[n - k]);
    p.D[2 * k - 1] = kappa[n + k] - kappa[n - k];
  }
  double res = 0.0;
  for (int i = 0; i <= 2048; ++i) {
    const double x = -1.0 + 2.0 * i / 2048.0;
    res = std::max(res, std::abs(std::norm(p.b(x)) + (1.0 - x * x) * std::norm(p.d(x)) - 1.0));
  }
  p.unitarity_residual = res;
  return p;
}

// A chain of single-qubit gates e^{iθP} (or fixed gates), with θ linear in the
// parameters. Yields ⟨0|U|0⟩ and its gradient.
struct Chain {
  struct Gate {
    Matrix2cd u;
    Matrix2cd gen;  // P, zero for fixed gates
    std::array<std::pair<int, double>, 2> deps{{{-1, 0.0}, {-1, 0.0}}};
  };
  std::vector<Gate> gates;  // application order

  cplx value_and_grad(Eigen::Ref<VectorXcd> grad) const {
    const size_t m = gates.size();
    std::vector<Vector2cd> psi(m + 1);
    psi[0] = Vector2cd(1.0, 0.0);
    for (size_t g = 0; g < m; ++g) psi[g + 1] = gates[g].u * psi[g];
    grad.setZero();
    RowVector2cd left(1.0, 0.0);  // ⟨0| times gates after g
    for (size_t g = m; g-- > 0;) {
      const Gate& gt = gates[g];
      if (gt.deps[0].first >= 0) {
        const cplx d = kI * (left * gt.gen * psi[g + 1])(0, 0);
        for (const auto& [idx, coef] : gt.deps)
          if (idx >= 0) grad[idx] += coef * d;
      }
      left = left * gt.u;
    }
    return psi[m][0];
  }
};

Chain chain1(const VectorXd& phis, double theta) {
  Chain c;
  const int q = static_cast<int>(phis.size()) - 1;
  const Matrix2cd z = pauli_z();
  for (int j = 1; j <= q; ++j) {
    c.gates.push_back({exp_z(phis[j - 1]), z, {{{j - 1, 1.0}, {-1, 0.0}}}});
    c.gates.push_back({exp_x(j % 2 ? theta : -theta), Matrix2cd::Zero(), {}});
  }
  c.gates.push_back({exp_z(phis[q]), z, {{{q, 1.0}, {-1, 0.0}}}});
  return c;
}

Chain chain2(const VectorXd& omegas, const VectorXd& flat, double x) {
  Chain c;
  const Matrix2cd z = pauli_z();
  const Matrix2cd my = -pauli_y();
  for (Eigen::Index k = 0; k < omegas.size(); ++k) {
    const int o = static_cast<int>(4 * k);
    const double zeta = flat[o], eta = flat[o + 1], phi = flat[o + 2], kappa = flat[o + 3];
    c.gates.push_back({exp_my(kappa), my, {{{o + 3, 1.0}, {-1, 0.0}}}});
    c.gates.push_back({exp_z(omegas[k] * x), Matrix2cd::Zero(), {}});
    c.gates.push_back({exp_z(0.5 * (zeta - eta)), z, {{{o, 0.5}, {o + 1, -0.5}}}});
    c.gates.push_back({exp_my(phi), my, {{{o + 2, 1.0}, {-1, 0.0}}}});
    c.gates.push_back({exp_z(0.5 * (zeta + eta)), z, {{{o, 0.5}, {o + 1, 0.5}}}});
  }
  return c;
}

// Least-squares residual ⟨0|U(x_i)|0⟩ − target_i over a grid. With real_only
// only the real part is matched.
struct ChainFit : Eigen::DenseFunctor<double> {
  std::function<Chain(const VectorXd&, double)> build;
  std::vector<double> xs;
  std::vector<cplx> target;
  bool real_only = false;

  ChainFit(std::function<Chain(const VectorXd&, double)> b, std::vector<double> x,
           std::vector<cplx> t, int params, bool ro)
      : DenseFunctor(params, static_cast<int>(x.size()) * (ro ? 1 : 2)),
        build(std::move(b)), xs(std::move(x)), target(std::move(t)), real_only(ro) {}

  int operator()(const VectorXd& p, VectorXd& r) const {
    VectorXcd g(p.size());
    for (size_t i = 0; i < xs.size(); ++i) fill(p, i, r, nullptr, g);
    return 0;
  }
  int df(const VectorXd& p, MatrixXd& jac) const {
    VectorXd r(values());
    VectorXcd g(p.size());
    for (size_t i = 0; i < xs.size(); ++i) fill(p, i, r, &jac, g);
    return 0;
  }

 private:
  void fill(const VectorXd& p, size_t i, VectorXd& r, MatrixXd* jac, VectorXcd& g) const {
    const cplx v = build(p, xs[i]).value_and_grad(g) - target[i];
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index ii = static_cast<Eigen::Index>(i);
    r[ii] = v.real();
    if (!real_only) r[n + ii] = v.imag();
    if (jac) {
      jac->row(ii) = g.real().transpose();
      if (!real_only) jac->row(n + ii) = g.imag().transpose();
    }
  }
};

VectorXd lm_polish(ChainFit& fit, VectorXd start) {
  Eigen::LevenbergMarquardt<ChainFit> lm(fit);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(400);
  lm.minimize(start);
  return start;
}

// SU(2) angles (ζ, η, φ) whose first column is c.
std::array<double, 3> su2_from_column(const Vector2cd& c) {
  return {std::arg(c[0]), -std::arg(c[1]), std::atan2(std::abs(c[1]), std::abs(c[0]))};
}

Matrix2cd su2_with_column(Vector2cd c) {
  c /= c.norm();
  Matrix2cd a;
  a << c[0], -std::conj(c[1]), c[1], std::conj(c[0]);
  return a;
}

double sequence1_residual(const VectorXd& phis, const ChebyshevSeries& target) {
  double res = 0.0;
  for (int i = 0; i <= 1024; ++i) {
    const double theta = M_PI * i / 1024.0;
    const double realized = eval_sequence1(phis, theta)(0, 0).real();
    res = std::max(res, std::abs(realized - target(std::cos(2.0 * theta))));
  }
  return res;
}

double sequence2_residual(const VectorXd& omegas, const XiMatrix& xis, const FourierSeries& g) {
  double res = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double x = -M_PI + 2.0 * M_PI * i / 1024.0;
    res = std::max(res, std::abs(eval_sequence2(omegas, xis, x)(0, 0) - g(x)));
  }
  return res;
}

VectorXd flatten(const XiMatrix& xis) {
  VectorXd f(xis.size());
  for (Eigen::Index k = 0; k < xis.rows(); ++k) f.segment<4>(4 * k) = xis.row(k).transpose();
  return f;
}

XiMatrix unflatten(const VectorXd& f) {
  XiMatrix xis(f.size() / 4, 4);
  for (Eigen::Index k = 0; k < xis.rows(); ++k) xis.row(k) = f.segment<4>(4 * k).transpose();
  return xis;
}

// Constructive Ξ: complete g̃ to a unit column (g̃, h̃) and peel one gate per layer.
XiMatrix method2_layer_strip(const FourierSeries& g) {
  const int q = g.q;
  const VectorXcd h = outer_factor([&](double x) { return 1.0 - std::norm(g(x)); }, q);
  // Coefficients on u = e^{ix/2}, exponents −q..q (index j + q).
  std::vector<Vector2cd> v(2 * q + 1, Vector2cd::Zero());
  for (int m = -q / 2; m <= q / 2; ++m) {
    v[2 * m + q][0] = g.coeffs[m + q / 2];
    v[2 * m + q][1] = h[m + q / 2];
  }
  XiMatrix xis = XiMatrix::Zero(q + 1, 4);
  for (int k = q; k >= 1; --k) {
    const int s = k % 2 ? -1 : 1;
    const Vector2cd a = v[k + q];
    const Vector2cd b = v[-k + q];
    const Vector2cd& keep = s > 0 ? a : b;
    const Vector2cd& orth = s > 0 ? b : a;
    Vector2cd c;
    if (std::max(keep.norm(), orth.norm()) < 1e-300) {
      c = Vector2cd(1.0, 0.0);
    } else if (keep.norm() >= orth.norm()) {
      c = keep;
    } else {
      c = Vector2cd(std::conj(orth[1]), -std::conj(orth[0]));
    }
    const Matrix2cd am = su2_with_column(c);
    const auto ang = su2_from_column(am.col(0));
    xis.row(k) << ang[0], ang[1], ang[2], 0.0;
    std::vector<Vector2cd> next(2 * q + 1, Vector2cd::Zero());
    for (int j = -k; j <= k; j += 2) {
      const Vector2cd y = am.adjoint() * v[j + q];
      if (j - s >= -(k - 1) && j - s <= k - 1) next[j - s + q][0] = y[0];
      if (j + s >= -(k - 1) && j + s <= k - 1) next[j + s + q][1] = y[1];
    }
    v.swap(next);
  }
  const auto ang = su2_from_column(v[q].norm() > 0 ? Vector2cd(v[q] / v[q].norm())
                                                   : Vector2cd(1.0, 0.0));
  xis.row(0) << ang[0], ang[1], ang[2], 0.0;
  return xis;
}

}  // namespace

PolyPair complete_polynomials(const VectorXd& b) {
  require(b.size() >= 1, "complete_polynomials needs at least one coefficient");
  double peak = 0.0, at = 0.0;
  for (int i = 0; i <= 8192; ++i) {
    const double x = -1.0 + 2.0 * i / 8192.0;
    const double v = std::abs(clenshaw(b, x));
    if (v > peak) {
      peak = v;
      at = x;
    }
  }
  if (peak > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "normalization violation: |B| = " << peak << " > 1 at lambda = " << at;
    throw ConfigError(os.str());
  }
  VectorXd kappa;
  PolyPair best;
  if (complement_by_roots(b, kappa)) best = pair_from_kappa(b, kappa);
  if (best.B.size() == 0 || best.unitarity_residual > 1e-8) {
    PolyPair alt = pair_from_kappa(b, complement_by_cepstrum(b));
    if (best.B.size() == 0 || alt.unitarity_residual < best.unitarity_residual) best = alt;
  }
  if (best.unitarity_residual > 1e-6) {
    std::ostringstream os;
    os << "polynomial completion residual " << best.unitarity_residual
       << " exceeds 1e-6; rescale the target by 1/(1 + eps_tr)";
    throw NumericalError(os.str());
  }
  return best;
}

PulseSeq1 angles_method1(const PolyPair& pair) {
  const int q = pair.q;
  require(q >= 0 && q % 2 == 0 && pair.B.size() == q + 1, "angles_method1: malformed PolyPair");
  PulseSeq1 out;
  out.q = q;
  out.target.coeffs.resize(q / 2 + 1);
  for (int k = 0; k <= q / 2; ++k) out.target.coeffs[k] = pair.B[2 * k].real();
  out.phis = VectorXd::Zero(q + 1);
  out.step_residuals = VectorXd::Zero(q);

  // Laurent coefficients of U(z), z = e^{iθ}, index n + off.
  const int off = q + 1;
  std::vector<Matrix2cd> u(2 * off + 1, Matrix2cd::Zero());
  for (int n = 0; n <= q; ++n) {
    const cplx bn = pair.B[n];
    u[off + n](0, 0) += 0.5 * bn;
    u[off - n](0, 0) += 0.5 * bn;
    u[off + n](1, 1) += 0.5 * std::conj(bn);
    u[off - n](1, 1) += 0.5 * std::conj(bn);
  }
  for (Eigen::Index n = 0; n < pair.D.size() && n + 1 <= q; ++n) {
    const cplx dn = pair.D[n];
    u[off + n + 1](0, 1) += 0.5 * dn;
    u[off - n - 1](0, 1) -= 0.5 * dn;
    u[off + n + 1](1, 0) += 0.5 * std::conj(dn);
    u[off - n - 1](1, 0) -= 0.5 * std::conj(dn);
  }

  const Matrix2cd x = pauli_x();
  const Matrix2cd id = Matrix2cd::Identity();
  int j = 1;
  while (j <= q) {
    const int m = q - j + 1;
    const double sigma = j % 2 ? 1.0 : -1.0;
    const Matrix2cd& top = u[off + m];
    const Matrix2cd& bot = u[off - m];
    const double lead = std::max(top.norm(), bot.norm());
    if (lead < 1e-12) {
      out.step_residuals[j - 1] = lead;
      j += 2;
      continue;
    }
    const cplx s = std::conj(top(0, 0)) * top(0, 1) + std::conj(top(1, 0)) * top(1, 1) -
                   std::conj(bot(0, 0)) * bot(0, 1) - std::conj(bot(1, 0)) * bot(1, 1);
    const double ca = std::hypot(top.col(0).norm(), bot.col(0).norm());
    const double cb = std::hypot(top.col(1).norm(), bot.col(1).norm());
    if (std::abs(ca - cb) > 1e-6 * std::max(ca, cb) || std::abs(s) == 0.0) {
      // Tails this small are rounding noise from the completion step.
      if (lead < 1e-8) {
        out.step_residuals[j - 1] = lead;
        j += 2;
        continue;
      }
      std::ostringstream os;
      os << "degenerate leading coefficients at step " << j << ": |a| = " << ca
         << ", |b| = " << cb;
      throw NumericalError(os.str());
    }
    const double phi = 0.5 * std::arg(sigma * std::conj(s));
    out.phis[j - 1] = phi;
    const Matrix2cd e = exp_z(-phi);
    const Matrix2cd pm = e * (id - sigma * x) * 0.5;  // multiplies z
    const Matrix2cd pp = e * (id + sigma * x) * 0.5;  // multiplies z^{-1}
    std::vector<Matrix2cd> next(u.size(), Matrix2cd::Zero());
    for (int n = -m - 1; n <= m + 1; ++n) {
      Matrix2cd acc = Matrix2cd::Zero();
      if (n - 1 >= -m) acc += u[off + n - 1] * pm;
      if (n + 1 <= m) acc += u[off + n + 1] * pp;
      next[off + n] = acc;
    }
    out.step_residuals[j - 1] = std::max(next[off + m + 1].norm(), next[off - m - 1].norm());
    next[off + m + 1].setZero();
    next[off - m - 1].setZero();
    u.swap(next);
    ++j;
  }
  out.phis[q] = std::arg(u[off](0, 0));

  out.residual = sequence1_residual(out.phis, out.target);
  if (out.residual > 1e-8 && q > 0 && q + 1 <= 400) {
    // Direct optimization of the phases, seeded by the recurrence.
    std::vector<double> thetas;
    std::vector<cplx> vals;
    for (int i = 0; i < 1024; ++i) {
      const double th = M_PI * (i + 0.5) / 1024.0;
      thetas.push_back(th);
      vals.emplace_back(out.target(std::cos(2.0 * th)));
    }
    ChainFit fit([](const VectorXd& p, double th) { return chain1(p, th); }, thetas, vals,
                 q + 1, true);
    const VectorXd polished = lm_polish(fit, out.phis);
    const double res = sequence1_residual(polished, out.target);
    if (res < out.residual) {
      out.phis = polished;
      out.residual = res;
    }
  }
  return out;
}

Matrix2cd eval_sequence1(const VectorXd& phis, double theta) {
  const int q = static_cast<int>(phis.size()) - 1;
  Matrix2cd u = Matrix2cd::Identity();
  for (int j = 1; j <= q; ++j) u = exp_x(j % 2 ? theta : -theta) * exp_z(phis[j - 1]) * u;
  if (q >= 0) u = exp_z(phis[q]) * u;
  return u;
}

VectorXd method2_omegas(int q) {
  require(q >= 0, "method2_omegas requires q >= 0");
  VectorXd w(q + 1);
  w[0] = 0.0;
  for (int k = 1; k <= q; ++k) w[k] = k % 2 ? -0.5 : 0.5;
  return w;
}

Matrix2cd r2_gate(double x, double omega, double zeta, double eta, double phi, double kappa) {
  return exp_z(0.5 * (zeta + eta)) * exp_my(phi) * exp_z(0.5 * (zeta - eta)) *
         exp_z(omega * x) * exp_my(kappa);
}

Matrix2cd eval_sequence2(const VectorXd& omegas, const XiMatrix& xis, double x) {
  require(omegas.size() == xis.rows(), "eval_sequence2: omegas and xis disagree in length");
  Matrix2cd u = Matrix2cd::Identity();
  for (Eigen::Index k = 0; k < omegas.size(); ++k)
    u = r2_gate(x, omegas[k], xis(k, 0), xis(k, 1), xis(k, 2), xis(k, 3)) * u;
  return u;
}

PulseSeq2 angles_method2(const FourierSeries& target, double tol, const Method2Options& opt) {
  const int q = target.q;
  require(q >= 0 && q % 2 == 0 && target.coeffs.size() == q + 1,
          "angles_method2: malformed Fourier series");
  require(tol > 0.0, "angles_method2 requires tol > 0");
  double peak = 0.0;
  for (int i = 0; i < 8192; ++i) peak = std::max(peak, std::abs(target(-M_PI + 2.0 * M_PI * i / 8192)));
  require(peak <= 1.0 + 1e-12, "angles_method2 requires |g| <= 1 on [-pi, pi]");

  PulseSeq2 out;
  out.q = q;
  out.target = target;
  out.omegas = method2_omegas(q);
  if (opt.constructive_seed) {
    out.xis = method2_layer_strip(target);
  } else {
    out.xis = XiMatrix::Zero(q + 1, 4);
  }
  out.residual = sequence2_residual(out.omegas, out.xis, target);

  const int params = 4 * (q + 1);
  if (out.residual > tol && params <= opt.max_lm_params) {
    std::vector<double> xs;
    std::vector<cplx> vals;
    for (int i = 0; i < 1024; ++i) {
      const double x = -M_PI + 2.0 * M_PI * i / 1024.0;
      xs.push_back(x);
      vals.push_back(target(x));
    }
    const VectorXd omegas = out.omegas;
    ChainFit fit([omegas](const VectorXd& p, double x) { return chain2(omegas, p, x); }, xs,
                 vals, params, false);
    Rng rng(opt.seed);
    for (int attempt = 0; attempt <= opt.restarts && out.residual > tol; ++attempt) {
      VectorXd start(params);
      if (attempt == 0 && opt.constructive_seed) {
        start = flatten(out.xis);
      } else {
        for (int i = 0; i < params; ++i) start[i] = rng.uniform(-M_PI, M_PI);
      }
      const XiMatrix cand = unflatten(lm_polish(fit, start));
      const double res = sequence2_residual(out.omegas, cand, target);
      if (res < out.residual) {
        out.xis = cand;
        out.residual = res;
      }
    }
  }
  out.converged = out.residual <= tol;
  return out;
}

AchievabilityReport verify_achievability(const VectorXd& b, const VectorXd& d, double tol) {
  AchievabilityReport r;
  r.degree_ok = b.size() >= 1 && d.size() <= b.size();
  const int grid = 8192;
  for (int i = 0; i <= grid; ++i) {
    const double theta = M_PI * i / grid;
    double bv = 0.0, dv = 0.0;
    for (Eigen::Index k = 0; k < b.size(); ++k) bv += b[k] * std::cos(2.0 * k * theta);
    for (Eigen::Index k = 1; k < d.size(); ++k) dv += d[k] * std::sin(2.0 * k * theta);
    const double v = bv * bv + dv * dv;
    if (v > r.max_value) {
      r.max_value = v;
      r.argmax_theta = theta;
    }
  }
  r.pass = r.degree_ok && r.max_value <= 1.0 + tol;
  return r;
}

}  // namespace fragqite
