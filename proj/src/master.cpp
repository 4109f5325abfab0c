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

#include "fragqite/master.hpp"

#include <cmath>
#include <numeric>

#include "fragqite/simulator.hpp"

namespace fragqite {

std::string to_string(Primitive p) { return p == Primitive::p1 ? "P1" : "P2"; }

Primitive primitive_from_string(const std::string& s) {
  if (s == "P1" || s == "p1") return Primitive::p1;
  if (s == "P2" || s == "p2") return Primitive::p2;
  throw ConfigError("unknown primitive '" + s + "' (expected P1 or P2)");
}

double Schedule::total() const {
  return std::accumulate(fragments.begin(), fragments.end(), 0.0);
}

std::vector<double> Schedule::partial_sums() const {
  std::vector<double> b(fragments.size() + 1, 0.0);
  for (std::size_t l = 0; l < fragments.size(); ++l) b[l + 1] = b[l] + fragments[l];
  return b;
}

void Schedule::validate() const {
  require(!fragments.empty(), "schedule has no fragments");
  for (double d : fragments) {
    require(std::isfinite(d) && d > 0.0, "schedule fragments must be positive and finite");
  }
}

void Schedule::validate(double expected) const {
  validate();
  require(std::abs(total() - expected) <= 1e-12 * std::max(1.0, expected),
          "schedule fragments do not sum to the target inverse temperature");
}

double fragment_alpha(Primitive prim, double dbeta, double lambda_min) {
  if (prim == Primitive::p1) return 1.0;
  return std::exp(-dbeta * (1.0 + lambda_min) - gamma_opt(dbeta, Kind::prob));
}

std::vector<double> fragment_alphas(Primitive prim, const Schedule& s, double lambda_min) {
  std::vector<double> a;
  a.reserve(s.fragments.size());
  for (double d : s.fragments) a.push_back(fragment_alpha(prim, d, lambda_min));
  return a;
}

int fragment_queries(Primitive prim, double dbeta, double eps, Kind kind) {
  if (prim == Primitive::p1) return even_ceil(q1_bound(dbeta, eps));
  return even_ceil(q2_bound(dbeta, gamma_opt(dbeta, kind), eps));
}

ErrorBudget eps_budget(const Schedule& s, double eps, const Spectrum& spec,
                       const std::vector<double>& alphas) {
  s.validate();
  require(eps > 0.0, "eps_budget requires eps > 0");
  require(alphas.size() == s.fragments.size(), "eps_budget: one alpha per fragment");
  const int r = s.r();
  const std::vector<double> b = s.partial_sums();
  const double p = success_prob(spec, b[r]);
  ErrorBudget out;
  out.total = eps;
  out.eps.resize(r);
  for (int l = 1; l <= r; ++l) {
    double prod = 1.0;
    for (int k = l; k <= r; ++k) prod *= alphas[k - 1];
    if (l == 1) {
      out.eps[0] = eps * prod * std::sqrt(p) / (2.0 * std::pow(4.0, r - 1));
    } else {
      out.eps[l - 1] =
          eps * prod / std::pow(4.0, r - l + 1) * std::sqrt(p / success_prob(spec, b[l - 1]));
    }
  }
  return out;
}

ComplexityReport expected_queries_fragmented(const Schedule& s, const Spectrum& spec,
                                             double eps, Primitive prim) {
  s.validate();
  const int r = s.r();
  ComplexityReport rep;
  rep.kind = Kind::prob;
  rep.primitive = prim;
  rep.alphas = fragment_alphas(prim, s, spec.lambda_min);
  rep.eps = eps_budget(s, eps, spec, rep.alphas).eps;
  const std::vector<double> b = s.partial_sums();
  const double p = success_prob(spec, b[r]);
  rep.n.resize(r);
  rep.q.resize(r);
  for (int l = 1; l <= r; ++l) {
    double a2 = 1.0;
    for (int k = l; k <= r; ++k) a2 *= rep.alphas[k - 1] * rep.alphas[k - 1];
    rep.n[l - 1] = success_prob(spec, b[l - 1]) / (p * a2);
    rep.q[l - 1] = fragment_queries(prim, s.fragments[l - 1], rep.eps[l - 1]);
    rep.expected_queries += rep.n[l - 1] * rep.q[l - 1];
    rep.query_depth += rep.q[l - 1];
  }
  return rep;
}

int coherent_rounds(double p) {
  require(p > 0.0 && p <= 1.0, "coherent_rounds requires 0 < p <= 1");
  const double theta = std::asin(std::sqrt(p));
  return std::max(0, static_cast<int>(std::lround(M_PI / (4.0 * theta) - 0.5)));
}

double coherent_success(double p, int k) {
  require(p > 0.0 && p <= 1.0 && k >= 0, "coherent_success requires 0 < p <= 1, k >= 0");
  const double s = std::sin((2.0 * k + 1.0) * std::asin(std::sqrt(p)));
  return s * s;
}

ComplexityReport expected_queries_baseline(double beta, double eps, const Spectrum& spec,
                                           Kind kind, Primitive prim) {
  require(beta > 0.0 && eps > 0.0, "expected_queries_baseline requires beta > 0, eps > 0");
  ComplexityReport rep;
  rep.kind = kind;
  rep.primitive = prim;
  double alpha = 1.0;
  if (prim == Primitive::p2) {
    alpha = std::exp(-beta * (1.0 + spec.lambda_min) - gamma_opt(beta, kind));
  }
  const double p = success_prob(spec, beta);
  // Same operation order as the r = 1 fragmented report, so the two agree bit for bit.
  const double e1 = eps * alpha * std::sqrt(p) / 2.0;
  const int q = fragment_queries(prim, beta, e1, kind);
  const double pa = p * (alpha * alpha);
  rep.alphas = {alpha};
  rep.eps = {e1};
  rep.q = {q};
  if (kind == Kind::prob) {
    rep.n = {success_prob(spec, 0.0) / pa};
    rep.expected_queries = rep.n[0] * q;
    rep.query_depth = q;
  } else {
    rep.n = {1.0 / std::sqrt(pa)};
    rep.expected_queries = rep.n[0] * q;
    rep.query_depth = static_cast<long long>(2 * coherent_rounds(pa) + 1) * q;
  }
  return rep;
}

std::vector<double> fragment_success_probs(const Spectrum& spec, const Schedule& s,
                                           const std::vector<double>& alphas) {
  const std::vector<double> b = s.partial_sums();
  std::vector<double> out(s.fragments.size());
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l] = alphas[l] * alphas[l] * success_prob(spec, b[l + 1]) / success_prob(spec, b[l]);
  }
  return out;
}

namespace {

// Conditional success probabilities from the simulated per-eigenvalue blocks.
std::vector<double> circuit_success_probs(const Spectrum& spec, const Schedule& s,
                                          const std::vector<double>& eps, Primitive prim,
                                          std::vector<int>* queries) {
  const Eigen::Index m = spec.eigenvalues.size();
  VectorXd w = spec.overlaps;
  std::vector<double> out;
  queries->clear();
  for (int l = 0; l < s.r(); ++l) {
    VectorXd amp2(m);
    if (prim == Primitive::p1) {
      const int q = fragment_queries(prim, s.fragments[l], eps[l]);
      const P1Design d = design_p1(s.fragments[l], eps[l], q);
      queries->push_back(d.q);
      for (Eigen::Index i = 0; i < m; ++i) amp2[i] = std::pow(d.eval(spec.eigenvalues[i]), 2);
    } else {
      const double g = gamma_opt(s.fragments[l], Kind::prob);
      const P2Design d = design_p2(s.fragments[l], eps[l], g, spec.lambda_min);
      queries->push_back(d.queries());
      for (Eigen::Index i = 0; i < m; ++i) amp2[i] = std::norm(d.eval(spec.eigenvalues[i]));
    }
    const double before = w.sum();
    w = w.cwiseProduct(amp2);
    out.push_back(w.sum() / before);
  }
  return out;
}

}  // namespace

RunStats monte_carlo_fragmented(const Spectrum& spec, const Schedule& s, double eps,
                                Primitive prim, std::uint64_t seed, int n_runs, McMode mode) {
  s.validate();
  require(n_runs >= 1, "monte_carlo_fragmented requires n_runs >= 1");
  const int r = s.r();
  const std::vector<double> alphas = fragment_alphas(prim, s, spec.lambda_min);
  const ErrorBudget budget = eps_budget(s, eps, spec, alphas);
  std::vector<double> ps;
  std::vector<int> q;
  if (mode == McMode::analytic) {
    ps = fragment_success_probs(spec, s, alphas);
    for (int l = 0; l < r; ++l) q.push_back(fragment_queries(prim, s.fragments[l], budget.eps[l]));
  } else {
    ps = circuit_success_probs(spec, s, budget.eps, prim, &q);
  }
  for (double p : ps) {
    if (!(p > 0.0)) throw NumericalError("fragment success probability vanishes");
  }

  RunStats st;
  st.seed = seed;
  st.runs = n_runs;
  st.attempts.assign(r, 0);
  st.successes.assign(r, 0);
  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (int run = 0; run < n_runs; ++run) {
    long long used = 0;
    int l = 0;
    while (l < r) {
      if (l == 0) ++st.trials;
      ++st.attempts[l];
      used += q[l];
      if (rng.uniform() < ps[l]) {
        ++st.successes[l];
        ++l;
      } else {
        l = 0;
      }
    }
    st.total_queries += used;
    sum += static_cast<double>(used);
    sum2 += static_cast<double>(used) * static_cast<double>(used);
  }
  st.mean_queries = sum / n_runs;
  if (n_runs > 1) {
    const double var = std::max(0.0, (sum2 - sum * sum / n_runs) / (n_runs - 1));
    st.std_error = std::sqrt(var / n_runs);
  }
  return st;
}

}  // namespace fragqite
