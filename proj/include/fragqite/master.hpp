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
#include <string>
#include <vector>

#include "fragqite/funcapprox.hpp"
#include "fragqite/hamiltonians.hpp"

namespace fragqite {

enum class Primitive { p1, p2 };

std::string to_string(Primitive p);
Primitive primitive_from_string(const std::string& s);

/// Gibbs sampling runs QITE to β/2 on the maximally mixed state; pure mode runs to β.
enum class Mode { gibbs, pure };

inline double qite_beta(Mode m, double beta) { return m == Mode::gibbs ? beta / 2.0 : beta; }

/// Fragments Δβ_1..Δβ_r of a fragmented QITE run.
struct Schedule {
  std::vector<double> fragments;

  int r() const { return static_cast<int>(fragments.size()); }
  double total() const;
  /// β_0 = 0, β_1, ..., β_r.
  std::vector<double> partial_sums() const;
  void validate() const;
  /// Also checks |Σ Δβ_l − total| ≤ 1e−12 · max(1, total).
  void validate(double total) const;

  static Schedule single(double beta) { return {{beta}}; }
};

struct ErrorBudget {
  std::vector<double> eps;  // ε'_l
  double total = 0.0;       // ε
};

struct ComplexityReport {
  double expected_queries = 0.0;
  std::vector<double> n;      // expected runs of each fragment
  std::vector<int> q;         // queries per fragment
  std::vector<double> alphas;
  std::vector<double> eps;
  long long query_depth = 0;
  Kind kind = Kind::prob;
  Primitive primitive = Primitive::p1;
};

struct RunStats {
  long long trials = 0;  // fragment-1 attempts
  long long total_queries = 0;
  std::vector<long long> attempts;   // per fragment
  std::vector<long long> successes;  // per fragment
  std::uint64_t seed = 0;
  int runs = 0;
  double mean_queries = 0.0;
  double std_error = 0.0;  // of mean_queries
};

/// Subnormalization of a fragment: 1 for P1, e^{−Δβ(1+λ_min)−γ} with γ = γ_opt(Δβ, prob) for P2.
double fragment_alpha(Primitive prim, double dbeta, double lambda_min);
std::vector<double> fragment_alphas(Primitive prim, const Schedule& s, double lambda_min);

/// Queries 2⌈q̃/2⌉ for one fragment at tolerance ε'.
int fragment_queries(Primitive prim, double dbeta, double eps, Kind kind = Kind::prob);

/// Canonical per-fragment tolerances, saturating the composed-error condition.
ErrorBudget eps_budget(const Schedule& s, double eps, const Spectrum& spec,
                       const std::vector<double>& alphas);

ComplexityReport expected_queries_fragmented(const Schedule& s, const Spectrum& spec,
                                             double eps, Primitive prim);

/// Probabilistic (μ = 1) or coherent (μ = 1/2) single-shot algorithm.
ComplexityReport expected_queries_baseline(double beta, double eps, const Spectrum& spec,
                                           Kind kind, Primitive prim);

/// sin²((2k+1) arcsin √p).
double coherent_success(double p, int k);

/// Amplification rounds k with (2k+1)·arcsin√p closest to π/2.
int coherent_rounds(double p);

enum class McMode { analytic, circuit };

/// Repeat-on-failure execution of the fragmented algorithm: on any failed
/// post-selection the run restarts at fragment 1. Circuit mode draws outcomes
/// from the simulated per-eigenvalue blocks and counts the designs' queries.
RunStats monte_carlo_fragmented(const Spectrum& spec, const Schedule& s, double eps,
                                Primitive prim, std::uint64_t seed, int n_runs,
                                McMode mode = McMode::analytic);

/// Conditional success probability of each fragment given the previous ones succeeded.
std::vector<double> fragment_success_probs(const Spectrum& spec, const Schedule& s,
                                           const std::vector<double>& alphas);

}  // namespace fragqite
