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

#include "fragqite/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fragqite {

Schedule ansatz_schedule(int r, double a, double total_beta) {
  require(r >= 1, "ansatz_schedule requires r >= 1");
  require(a >= 1.0 && std::isfinite(a), "ansatz_schedule requires a >= 1");
  require(total_beta > 0.0, "ansatz_schedule requires total_beta > 0");
  Schedule s;
  s.fragments.resize(r);
  double prev = 0.0;
  for (int l = 1; l <= r; ++l) {
    const double cur = l == r ? total_beta : std::pow(double(l) / r, a) * total_beta;
    s.fragments[l - 1] = cur - prev;
    prev = cur;
  }
  return s;
}

namespace {

// Cost of S_{r,a} with p(β) cached. `smooth` drops the ceiling on q̃.
class AnsatzCost {
 public:
  AnsatzCost(const Spectrum& spec, double total, double eps, Primitive prim)
      : spec_(spec), total_(total), eps_(eps), prim_(prim), p_(success_prob(spec, total)) {}

  double operator()(int r, double a, bool smooth) const {
    const Schedule s = ansatz_schedule(r, a, total_);
    const std::vector<double> b = s.partial_sums();
    std::vector<double> pb(r + 1);
    pb[0] = 1.0;
    for (int l = 1; l < r; ++l) pb[l] = success_prob(spec_, b[l]);
    pb[r] = p_;
    std::vector<double> alpha(r);
    for (int l = 0; l < r; ++l) alpha[l] = fragment_alpha(prim_, s.fragments[l], spec_.lambda_min);
    double q_total = 0.0;
    for (int l = 1; l <= r; ++l) {
      double prod = 1.0;
      for (int k = l; k <= r; ++k) prod *= alpha[k - 1];
      const double e = l == 1 ? eps_ * prod * std::sqrt(p_) / (2.0 * std::pow(4.0, r - 1))
                              : eps_ * prod / std::pow(4.0, r - l + 1) * std::sqrt(p_ / pb[l - 1]);
      const double db = s.fragments[l - 1];
      double q;
      if (smooth) {
        q = prim_ == Primitive::p1 ? q1_bound(db, e) : q2_bound(db, gamma_opt(db, Kind::prob), e);
      } else {
        q = fragment_queries(prim_, db, e);
      }
      q_total += pb[l - 1] / (p_ * prod * prod) * q;
    }
    return q_total;
  }

 private:
  const Spectrum& spec_;
  double total_;
  double eps_;
  Primitive prim_;
  double p_;
};

struct LineMin {
  double x = 1.0;
  double f = 0.0;
  bool converged = false;
};

// Projected quasi-Newton (secant-updated inverse Hessian) on [lo, hi].
template <typename F>
LineMin quasi_newton_1d(const F& f, double x0, double lo, double hi) {
  auto grad = [&](double x) {
    const double h = 1e-5 * std::max(1.0, x);
    const double xl = std::max(lo, x - h);
    const double xr = std::min(hi, x + h);
    return (f(xr) - f(xl)) / (xr - xl);
  };
  LineMin out;
  double x = std::clamp(x0, lo, hi);
  double fx = f(x);
  double g = grad(x);
  double hinv = 1.0 / std::max(std::abs(g), 1e-300);
  for (int it = 0; it < 60; ++it) {
    const double d = -hinv * g;
    double t = 1.0;
    double xn = x, fn = fx;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      xn = std::clamp(x + t * d, lo, hi);
      if (xn == x) break;
      fn = f(xn);
      if (fn <= fx - 1e-4 * std::abs(g * (xn - x))) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double gn = grad(xn);
    const double s = xn - x;
    const double y = gn - g;
    if (s * y > 0.0) hinv = s / y;
    x = xn;
    fx = fn;
    g = gn;
    if (std::abs(s) < 1e-7 * std::max(1.0, x)) {
      out.converged = true;
      break;
    }
  }
  out.x = x;
  out.f = fx;
  return out;
}

}  // namespace

OptimizedSchedule optimize_schedule(const Spectrum& spec, double total_beta, double eps,
                                    Primitive prim, int r_max, Family family) {
  require(r_max >= 1, "optimize_schedule requires r_max >= 1");
  require(total_beta > 0.0 && eps > 0.0 && eps < 1.0,
          "optimize_schedule requires total_beta > 0 and 0 < eps < 1");
  const AnsatzCost cost(spec, total_beta, eps, prim);
  OptimizedSchedule best;
  double best_q = std::numeric_limits<double>::infinity();
  bool fallback = false;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<double> candidates = {1.0};
    if (r > 1 && family == Family::nonuniform) {
      bool ok = false;
      const auto smooth = [&](double a) { return cost(r, a, true); };
      for (double a0 : {1.0, 2.0, std::cbrt(total_beta)}) {
        const LineMin m = quasi_newton_1d(smooth, a0, 1.0, kAnsatzMaxA);
        if (std::isfinite(m.f)) {
          candidates.push_back(m.x);
          ok = ok || m.converged;
        }
      }
      if (!ok) {
        fallback = true;
        for (double a = 1.0; a <= kAnsatzMaxA; a += 0.25) candidates.push_back(a);
      }
    }
    for (double a : candidates) {
      const double q = cost(r, a, false);
      if (q < best_q) {
        best_q = q;
        best.params = {r, a};
      }
    }
  }
  best.used_grid_fallback = fallback;
  best.schedule = ansatz_schedule(best.params.r, best.params.a, total_beta);
  best.report = expected_queries_fragmented(best.schedule, spec, eps, prim);
  return best;
}

double beta_crit_theorem(double o, double eps, const std::function<double(double)>& p_inv_at) {
  require(o > 0.0 && o <= 1.0 / 2.2, "beta_crit_theorem requires 0 < o <= 1/2.2");
  require(eps > 0.0 && eps < 1.0, "beta_crit_theorem requires 0 < eps < 1");
  const double e = std::exp(1.0);
  return (2.0 / o) * ((2.0 / e) * std::log(8.0 / (o * eps)) + p_inv_at(o / 2.2));
}

double beta_crit_theorem(const Spectrum& spec, double eps) {
  const double o = std::sqrt(spec.ground_overlap());
  return beta_crit_theorem(o, eps, [&](double p) { return inverse_success_prob(spec, p); });
}

Schedule theorem5_schedule(const Spectrum& spec, double o, double beta, double eps) {
  if (!(o > 0.0 && o <= 1.0 / 2.2)) {
    throw ConfigError("theorem5_schedule: ground amplitude o must satisfy 0 < o <= 1/2.2");
  }
  require(eps > 0.0 && eps < 1.0, "theorem5_schedule requires 0 < eps < 1");
  const double e = std::exp(1.0);
  const double bc = beta_crit_theorem(o, eps, [&](double p) { return inverse_success_prob(spec, p); });
  if (beta < bc * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "theorem5_schedule: beta " << beta << " below critical value " << bc;
    throw ConfigError(os.str());
  }
  if (success_prob(spec, bc) > 0.25) {
    throw ConfigError("theorem5_schedule: p(beta_c) exceeds 1/4");
  }
  const double target = (o / 2.0) / std::log(e + 2.0 * std::log(2.0 / (o * eps)) / (e * beta));
  const double b1 = inverse_success_prob(spec, target);
  return Schedule{{b1, beta - b1}};
}

CrossingScan beta_crit_empirical(const Spectrum& spec, double eps, Primitive prim,
                                 const std::vector<double>& beta_grid, Mode mode, int r_max) {
  require(!beta_grid.empty(), "beta_crit_empirical requires a nonempty grid");
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    require(beta_grid[i] > 0.0 && (i == 0 || beta_grid[i] > beta_grid[i - 1]),
            "beta_crit_empirical requires a positive ascending grid");
  }
  auto eval = [&](double beta, double* qf, double* qc) {
    const double tb = qite_beta(mode, beta);
    *qf = optimize_schedule(spec, tb, eps, prim, r_max).report.expected_queries;
    *qc = expected_queries_baseline(tb, eps, spec, Kind::coh, prim).expected_queries;
    return *qf < *qc;
  };
  CrossingScan out;
  double qf = 0.0, qc = 0.0;
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    if (!eval(beta_grid[i], &qf, &qc)) {
      out.below = beta_grid[i];
      continue;
    }
    double hi = beta_grid[i];
    double hf = qf, hc = qc;
    if (i > 0) {
      double lo = beta_grid[i - 1];
      while (hi / lo - 1.0 > 1e-3) {
        const double mid = std::sqrt(lo * hi);
        if (eval(mid, &qf, &qc)) {
          hi = mid;
          hf = qf;
          hc = qc;
        } else {
          lo = mid;
        }
      }
      out.below = lo;
    }
    out.beta = hi;
    out.q_frag = hf;
    out.q_coh = hc;
    return out;
  }
  return out;
}

BetaCritFit fit_beta_crit(const std::vector<double>& n, const std::vector<double>& beta_c) {
  require(n.size() == beta_c.size() && n.size() >= 4, "fit_beta_crit requires >= 4 points");
  const Eigen::Index m = static_cast<Eigen::Index>(n.size());
  VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    require(std::isfinite(beta_c[i]), "fit_beta_crit requires finite data");
    y[i] = beta_c[i];
  }
  BetaCritFit fit;
  const double mean = y.mean();
  if (y.maxCoeff() - y.minCoeff() <= 1e-12 * std::max(1.0, std::abs(mean))) {
    fit.B = mean;
    return fit;
  }
  // For fixed η the model is linear in (A, B).
  auto solve = [&](double eta, double* a, double* b) {
    MatrixXd x(m, 2);
    for (Eigen::Index i = 0; i < m; ++i) {
      x(i, 0) = std::exp2(eta * n[i]);
      x(i, 1) = 1.0;
    }
    const Eigen::Vector2d c = x.colPivHouseholderQr().solve(y);
    *a = c[0];
    *b = c[1];
    return (x * c - y).squaredNorm();
  };
  double a = 0.0, b = 0.0;
  double best_eta = 0.0, best = std::numeric_limits<double>::infinity();
  for (int k = -2000; k <= 3000; ++k) {
    const double eta = 1e-3 * k;
    if (k == 0) continue;
    const double r = solve(eta, &a, &b);
    if (r < best) {
      best = r;
      best_eta = eta;
    }
  }
  // Golden-section polish inside the bracketing grid cell.
  double lo = best_eta - 1e-3, hi = best_eta + 1e-3;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = solve(x1, &a, &b), f2 = solve(x2, &a, &b);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = solve(x1, &a, &b);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = solve(x2, &a, &b);
    }
  }
  fit.eta = 0.5 * (lo + hi);
  const double r = solve(fit.eta, &fit.A, &fit.B);
  if (!std::isfinite(r)) throw NumericalError("fit_beta_crit diverged");
  fit.rmsd = std::sqrt(r / m);
  return fit;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_power_law requires >= 2 points");
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());
  MatrixXd a(m, 2);
  VectorXd ly(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "fit_power_law requires positive data");
    a(i, 0) = std::log(x[i]);
    a(i, 1) = 1.0;
    ly[i] = std::log(y[i]);
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(ly);
  PowerLawFit fit;
  fit.eta = c[0];
  fit.A = std::exp(c[1]);
  fit.rmsd_log = std::sqrt((a * c - ly).squaredNorm() / m);
  return fit;
}

double first_fragment_ratio(const Schedule& s, double eps1) {
  s.validate();
  require(eps1 > 0.0 && eps1 < 4.0, "first_fragment_ratio requires 0 < eps1 < 4");
  return s.fragments[0] / (8.0 * std::log(4.0 / eps1));
}

Histogram histogram(const std::vector<double>& values, double lo, double hi, int bins) {
  require(bins >= 1 && hi > lo, "histogram requires bins >= 1 and hi > lo");
  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  h.counts.assign(bins, 0);
  for (double v : values) {
    int k = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    k = std::clamp(k, 0, bins - 1);
    ++h.counts[k];
  }
  return h;
}

}  // namespace fragqite
