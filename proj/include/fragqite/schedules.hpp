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
#include <optional>
#include <vector>

#include "fragqite/master.hpp"

namespace fragqite {

struct AnsatzParams {
  int r = 1;
  double a = 1.0;
};

/// Δβ_l = ((l/r)^a − ((l−1)/r)^a)·total_beta.
Schedule ansatz_schedule(int r, double a, double total_beta);

inline constexpr double kAnsatzMaxA = 50.0;

enum class Family { nonuniform, uniform };

struct OptimizedSchedule {
  AnsatzParams params;
  Schedule schedule;
  ComplexityReport report;
  bool used_grid_fallback = false;
};

/// Best S_{r,a} over r = 1..r_max. For each r, a ∈ [1, 50] is chosen by a
/// projected quasi-Newton search (numeric gradient, starts 1, 2, β^{1/3}) on
/// the smooth cost Σ n_l q̃_l; candidates are then ranked by the integer cost.
/// Family::uniform fixes a = 1.
OptimizedSchedule optimize_schedule(const Spectrum& spec, double total_beta, double eps,
                                    Primitive prim, int r_max = 10,
                                    Family family = Family::nonuniform);

/// Two-fragment schedule with Δβ_1 = p⁻¹((o/2)/ln[e + 2 ln(2/(oε))/(eβ)]).
/// `o` is the ground-state amplitude. Throws ConfigError naming the violated precondition.
Schedule theorem5_schedule(const Spectrum& spec, double o, double beta, double eps);

/// (2/o)[(2/e) ln(8/(oε)) + p⁻¹(o/2.2)], with p⁻¹ supplied by the caller.
double beta_crit_theorem(double o, double eps, const std::function<double(double)>& p_inv_at);

/// beta_crit_theorem using inverse_success_prob on `spec`.
double beta_crit_theorem(const Spectrum& spec, double eps);

struct CrossingScan {
  std::optional<double> beta;  // empty: no crossing up to the last grid point
  double q_frag = 0.0;         // at the returned β
  double q_coh = 0.0;
  double below = 0.0;          // largest probed β with Q_frag ≥ Q_coh
};

/// Smallest β on the grid with optimized Q_frag < Q_coh, refined by bisection
/// to relative 1e−3. The grid is in units of the physical β; `mode` maps it to
/// the QITE time.
CrossingScan beta_crit_empirical(const Spectrum& spec, double eps, Primitive prim,
                                 const std::vector<double>& beta_grid, Mode mode = Mode::gibbs,
                                 int r_max = 10);

struct BetaCritFit {
  double A = 0.0;
  double eta = 0.0;
  double B = 0.0;
  double rmsd = 0.0;
};

/// Least squares for β_c(N) = A·2^{ηN} + B (variable projection over η).
BetaCritFit fit_beta_crit(const std::vector<double>& n, const std::vector<double>& beta_c);

struct PowerLawFit {
  double A = 0.0;
  double eta = 0.0;
  double rmsd_log = 0.0;
};

/// y = A x^η by linear regression in log-log space. Requires positive data.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// β_1 / (8 ln(4/ε'_1)).
double first_fragment_ratio(const Schedule& s, double eps1);

struct Histogram {
  std::vector<double> edges;
  std::vector<int> counts;
};

Histogram histogram(const std::vector<double>& values, double lo, double hi, int bins);

}  // namespace fragqite
