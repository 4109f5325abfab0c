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

// fragqite command-line driver: seeded experiment pipelines plus thin
// wrappers around the library modules. Exit codes: 0 ok, 2 configuration
// error, 3 failed check or numerical failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "config.hpp"
#include "fragqite/bounds.hpp"
#include "fragqite/io.hpp"
#include "fragqite/master.hpp"
#include "fragqite/parity.hpp"
#include "fragqite/schedules.hpp"
#include "fragqite/simulator.hpp"

namespace fs = std::filesystem;
using namespace fragqite;
using fragqite::cli::ExperimentConfig;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f(0..n−1) on `threads` workers; results keep index order.
template <typename F>
auto parallel_map(int n, int threads, F f) -> std::vector<decltype(f(0))> {
  std::vector<decltype(f(0))> out(n);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int k = std::max(1, std::min(threads, n));
  if (k == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct Instance {
  HamClass cls;
  int n;
  int index;
  std::uint64_t seed;
  Spectrum spectrum;
};

InputState input_for(Mode mode, int n) {
  if (mode == Mode::gibbs) return InputState::mixed();
  return InputState::pure(VectorXcd::Constant(1 << n, cplx(std::pow(2.0, -0.5 * n), 0.0)));
}

Instance make_instance(const ExperimentConfig& cfg, HamClass c, int n, int i) {
  Instance inst{c, n, i, cfg.instance_seed(c, n, i), {}};
  const HamiltonianSpec h = normalize(gen_ensemble(c, n, inst.seed));
  inst.spectrum = diagonalize(h, input_for(cfg.mode, n)).compressed();
  return inst;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
  if (cfg.out.empty() || cfg.out == "-") return "";
  fs::create_directories(cfg.out);
  return (fs::path(cfg.out) / file).string();
}

struct Moments {
  double sum = 0.0, sum2 = 0.0;
  int count = 0;
  void add(double v) {
    sum += v;
    sum2 += v * v;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double std() const {
    if (count < 2) return 0.0;
    return std::sqrt(std::max(0.0, (sum2 - sum * sum / count) / (count - 1)));
  }
};

// ---------------------------------------------------------------------------

struct ComplexityCell {
  double q_prob = 0, q_coh = 0, q_uniform = 0, q_frag = 0;
  long long d_prob = 0, d_coh = 0, d_uniform = 0, d_frag = 0;
  int r_uniform = 0, r_frag = 0;
  double a_frag = 1.0;
};

ComplexityCell complexity_cell(const ExperimentConfig& cfg, const Spectrum& s, double beta,
                               double eps) {
  ComplexityCell c;
  const double tb = qite_beta(cfg.mode, beta);
  if (tb == 0.0) return c;  // F_0 = I needs no queries
  const ComplexityReport prob = expected_queries_baseline(tb, eps, s, Kind::prob, cfg.primitive);
  const ComplexityReport coh = expected_queries_baseline(tb, eps, s, Kind::coh, cfg.primitive);
  const OptimizedSchedule uni = optimize_schedule(s, tb, eps, cfg.primitive, cfg.r_max, Family::uniform);
  const OptimizedSchedule frag = optimize_schedule(s, tb, eps, cfg.primitive, cfg.r_max);
  c.q_prob = prob.expected_queries;
  c.q_coh = coh.expected_queries;
  c.q_uniform = uni.report.expected_queries;
  c.q_frag = frag.report.expected_queries;
  c.d_prob = prob.query_depth;
  c.d_coh = coh.query_depth;
  c.d_uniform = uni.report.query_depth;
  c.d_frag = frag.report.query_depth;
  c.r_uniform = uni.params.r;
  c.r_frag = frag.params.r;
  c.a_frag = frag.params.a;
  return c;
}

int cmd_complexity_scan(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.beta_grid();
  CsvWriter rows(out_path(cfg, "complexity.csv"),
                 {"class", "N", "seed", "instance", "eps", "beta", "Q_prob", "Q_coh", "Q_uniform",
                  "r_uniform", "Q_frag", "r_frag", "a_frag", "depth_prob", "depth_coh",
                  "depth_uniform", "depth_frag"});
  const std::string spath = out_path(cfg, "complexity_summary.csv");
  std::unique_ptr<CsvWriter> summary;
  if (!spath.empty()) {
    summary = std::make_unique<CsvWriter>(
        spath, std::vector<std::string>{"class", "N", "eps", "beta", "mean_Q_prob", "std_Q_prob",
                                        "mean_Q_coh", "std_Q_coh", "mean_Q_uniform",
                                        "std_Q_uniform", "mean_Q_frag", "std_Q_frag",
                                        "mean_depth_prob", "mean_depth_frag"});
  }
  for (HamClass c : cfg.classes) {
    for (int n : cfg.n) {
      for (double eps : cfg.eps) {
        const auto cells = parallel_map(cfg.instances, cfg.threads, [&](int i) {
          const Instance inst = make_instance(cfg, c, n, i);
          std::vector<ComplexityCell> out;
          for (double b : grid) out.push_back(complexity_cell(cfg, inst.spectrum, b, eps));
          return std::make_pair(inst.seed, out);
        });
        std::vector<std::array<Moments, 6>> m(grid.size());
        for (int i = 0; i < cfg.instances; ++i) {
          for (std::size_t k = 0; k < grid.size(); ++k) {
            const ComplexityCell& x = cells[i].second[k];
            rows << to_string(c) << n << static_cast<unsigned long long>(cells[i].first) << i << eps
                 << grid[k] << x.q_prob << x.q_coh << x.q_uniform << x.r_uniform << x.q_frag
                 << x.r_frag << x.a_frag << x.d_prob << x.d_coh << x.d_uniform << x.d_frag;
            rows.end_row();
            m[k][0].add(x.q_prob);
            m[k][1].add(x.q_coh);
            m[k][2].add(x.q_uniform);
            m[k][3].add(x.q_frag);
            m[k][4].add(static_cast<double>(x.d_prob));
            m[k][5].add(static_cast<double>(x.d_frag));
          }
        }
        if (!summary) continue;
        for (std::size_t k = 0; k < grid.size(); ++k) {
          *summary << to_string(c) << n << eps << grid[k];
          for (int j = 0; j < 4; ++j) *summary << m[k][j].mean() << m[k][j].std();
          *summary << m[k][4].mean() << m[k][5].mean();
          summary->end_row();
        }
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_beta_crit(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.beta_grid();
  CsvWriter rows(out_path(cfg, "beta_crit.csv"),
                 {"class", "N", "seed", "instance", "eps", "found", "beta_c", "beta_below",
                  "Q_frag", "Q_coh"});
  Json fits = Json::array();
  for (HamClass c : cfg.classes) {
    for (double eps : cfg.eps) {
      std::vector<double> ns, means;
      Json per_n = Json::array();
      for (int n : cfg.n) {
        const auto res = parallel_map(cfg.instances, cfg.threads, [&](int i) {
          const Instance inst = make_instance(cfg, c, n, i);
          return std::make_pair(inst.seed, beta_crit_empirical(inst.spectrum, eps, cfg.primitive,
                                                               grid, cfg.mode, cfg.r_max));
        });
        Moments m;
        int missing = 0;
        for (int i = 0; i < cfg.instances; ++i) {
          const CrossingScan& x = res[i].second;
          rows << to_string(c) << n << static_cast<unsigned long long>(res[i].first) << i << eps
               << (x.beta ? 1 : 0) << (x.beta ? *x.beta : std::nan("")) << x.below << x.q_frag
               << x.q_coh;
          rows.end_row();
          if (x.beta) m.add(*x.beta);
          else ++missing;
        }
        per_n.push_back({{"N", n}, {"mean_beta_c", m.mean()}, {"std_beta_c", m.std()},
                         {"found", m.count}, {"not_found", missing}});
        if (m.count) {
          ns.push_back(n);
          means.push_back(m.mean());
        }
      }
      Json entry = {{"class", to_string(c)}, {"eps", eps}, {"points", per_n}};
      if (ns.size() >= 4) {
        const BetaCritFit f = fit_beta_crit(ns, means);
        entry["fit"] = {{"A", f.A}, {"eta", f.eta}, {"B", f.B}, {"rmsd", f.rmsd}};
      } else {
        entry["fit"] = "needs at least 4 system sizes with a crossing";
      }
      fits.push_back(entry);
    }
  }
  const std::string p = out_path(cfg, "beta_crit_fit.json");
  if (p.empty()) std::cout << fits.dump(2) << '\n';
  else write_json_file(p, fits);
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_schedule_scan(const ExperimentConfig& cfg) {
  const std::vector<double> grid = cfg.beta_grid();
  for (double b : grid) require(b > 0.0, "schedule-scan needs beta > 0");
  CsvWriter rows(out_path(cfg, "schedules.csv"),
                 {"N", "class", "seed", "eps", "beta", "best_r", "best_a", "Q_frag", "Q_prob",
                  "Q_coh", "depth_frag", "depth_prob", "uniform_r", "Q_uniform"});
  Json fits = Json::array();
  for (HamClass c : cfg.classes) {
    for (int n : cfg.n) {
      for (double eps : cfg.eps) {
        const auto cells = parallel_map(cfg.instances, cfg.threads, [&](int i) {
          const Instance inst = make_instance(cfg, c, n, i);
          std::vector<ComplexityCell> out;
          for (double b : grid) out.push_back(complexity_cell(cfg, inst.spectrum, b, eps));
          return std::make_pair(inst.seed, out);
        });
        std::vector<Moments> r_uni(grid.size()), r_frag(grid.size()), a_frag(grid.size());
        for (int i = 0; i < cfg.instances; ++i) {
          for (std::size_t k = 0; k < grid.size(); ++k) {
            const ComplexityCell& x = cells[i].second[k];
            rows << n << to_string(c) << static_cast<unsigned long long>(cells[i].first) << eps
                 << grid[k] << x.r_frag << x.a_frag << x.q_frag << x.q_prob << x.q_coh << x.d_frag
                 << x.d_prob << x.r_uniform << x.q_uniform;
            rows.end_row();
            r_uni[k].add(x.r_uniform);
            r_frag[k].add(x.r_frag);
            a_frag[k].add(x.a_frag);
          }
        }
        Json entry = {{"class", to_string(c)}, {"N", n}, {"eps", eps}};
        if (grid.size() >= 2) {
          std::vector<double> ru, af;
          for (std::size_t k = 0; k < grid.size(); ++k) {
            ru.push_back(r_uni[k].mean());
            af.push_back(a_frag[k].mean());
          }
          const PowerLawFit fu = fit_power_law(grid, ru);
          const PowerLawFit fa = fit_power_law(grid, af);
          entry["uniform_r_fit"] = {{"A", fu.A}, {"eta", fu.eta}, {"rmsd_log", fu.rmsd_log}};
          entry["nonuniform_a_fit"] = {{"A", fa.A}, {"eta", fa.eta}, {"rmsd_log", fa.rmsd_log}};
        }
        Json means = Json::array();
        for (std::size_t k = 0; k < grid.size(); ++k) {
          means.push_back({{"beta", grid[k]}, {"mean_uniform_r", r_uni[k].mean()},
                           {"mean_r", r_frag[k].mean()}, {"mean_a", a_frag[k].mean()}});
        }
        entry["means"] = means;
        fits.push_back(entry);
      }
    }
  }
  const std::string p = out_path(cfg, "schedule_fits.json");
  if (p.empty()) std::cout << fits.dump(2) << '\n';
  else write_json_file(p, fits);
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_histogram(const ExperimentConfig& cfg, int bins) {
  const std::vector<double> grid = cfg.beta_grid();
  for (double b : grid) require(b > 0.0, "histogram needs beta > 0");
  CsvWriter rows(out_path(cfg, "first_fragment.csv"),
                 {"class", "N", "seed", "eps", "beta", "r", "a", "beta1", "eps1", "ratio"});
  std::vector<double> ratios;
  for (HamClass c : cfg.classes) {
    for (int n : cfg.n) {
      for (double eps : cfg.eps) {
        const auto res = parallel_map(cfg.instances, cfg.threads, [&](int i) {
          const Instance inst = make_instance(cfg, c, n, i);
          std::vector<OptimizedSchedule> out;
          for (double b : grid) {
            out.push_back(optimize_schedule(inst.spectrum, qite_beta(cfg.mode, b), eps,
                                            cfg.primitive, cfg.r_max));
          }
          return std::make_pair(inst.seed, out);
        });
        for (int i = 0; i < cfg.instances; ++i) {
          for (std::size_t k = 0; k < grid.size(); ++k) {
            const OptimizedSchedule& o = res[i].second[k];
            const double ratio = first_fragment_ratio(o.schedule, o.report.eps[0]);
            rows << to_string(c) << n << static_cast<unsigned long long>(res[i].first) << eps
                 << grid[k] << o.params.r << o.params.a << o.schedule.fragments[0]
                 << o.report.eps[0] << ratio;
            rows.end_row();
            ratios.push_back(ratio);
          }
        }
      }
    }
  }
  const double hi = std::max(1e-12, *std::max_element(ratios.begin(), ratios.end()));
  const Histogram h = histogram(ratios, 0.0, hi, bins);
  CsvWriter hist(out_path(cfg, "first_fragment_histogram.csv"), {"lo", "hi", "count"});
  for (int b = 0; b < bins; ++b) {
    hist << h.edges[b] << h.edges[b + 1] << h.counts[b];
    hist.end_row();
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  int n = 2;
  double beta = 1.0;
  double eps_prime = 1e-3;
  std::string primitive = "P1";
  std::string cls = "sk_heisenberg";
  std::string backend = "fast";
  std::uint64_t seed = 1;
};

int cmd_validate_primitive(const ValidateArgs& a) {
  require(a.n >= 2 && a.n <= 10, "validate-primitive: n must lie in [2, 10]");
  require(a.beta >= 0.0, "validate-primitive: beta must be >= 0");
  require(a.eps_prime > 0.0 && a.eps_prime < 0.5, "validate-primitive: eps' must lie in (0, 1/2)");
  require(a.backend == "fast" || a.backend == "full", "validate-primitive: backend is fast or full");
  const Backend backend = a.backend == "full" ? Backend::full : Backend::fast;
  require(backend == Backend::fast || a.n <= kFullBackendMaxQubits,
          "validate-primitive: the full backend supports n <= 4");
  const Primitive prim = primitive_from_string(a.primitive);
  const HamiltonianSpec h = normalize(gen_ensemble(ham_class_from_string(a.cls), a.n, a.seed));
  const Eigensystem es = eigensystem(h);

  BlockEncoding enc;
  int queries = 0;
  if (prim == Primitive::p1) {
    const P1Design d = design_p1(a.beta, a.eps_prime);
    enc = build_p1(es, d, backend);
    queries = d.queries();
  } else {
    require(a.beta > 0.0, "validate-primitive: P2 needs beta > 0");
    const P2Design d = design_p2(a.beta, a.eps_prime, gamma_opt(a.beta, Kind::prob), es.values[0]);
    enc = build_p2(es, d, backend);
    queries = d.queries();
  }
  Rng rng(derive_seed(a.seed, 17));
  VectorXcd psi(1 << a.n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = cplx(rng.normal(), rng.normal());
  psi.normalize();
  const SimResult sim = post_select(enc, InputState::pure(psi));
  const double p_ideal = (enc.target * psi).squaredNorm();
  const double eps_out = 2.0 * a.eps_prime / std::sqrt(p_ideal);
  const double block_error = enc.block_error();
  const bool block_ok = block_error <= a.eps_prime * (1.0 + 1e-9) + 1e-13;
  const bool state_ok = sim.trace_distance_to_ideal <= 1.5 * eps_out;

  Json report = {{"N", a.n},
                 {"class", a.cls},
                 {"seed", a.seed},
                 {"primitive", to_string(prim)},
                 {"backend", a.backend},
                 {"beta", a.beta},
                 {"eps_prime", a.eps_prime},
                 {"alpha", enc.alpha},
                 {"queries", queries},
                 {"block_error", block_error},
                 {"post_selection_prob", sim.post_selection_prob},
                 {"ideal_post_selection_prob", p_ideal},
                 {"trace_distance", sim.trace_distance_to_ideal},
                 {"state_error_bound", 1.5 * eps_out},
                 {"block_ok", block_ok},
                 {"state_ok", state_ok}};
  std::cout << report.dump(2) << '\n';
  if (!block_ok || !state_ok) throw CheckFailed("primitive validation failed");
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_lower_bound(const ExperimentConfig& cfg, double alpha) {
  const std::vector<double> grid = cfg.beta_grid();
  CsvWriter rows(out_path(cfg, "lower_bound.csv"), {"beta", "eps", "alpha", "q_tilde", "q1", "ratio"});
  for (double eps : cfg.eps) {
    require(eps < alpha / 2.0, "lower-bound: need eps' < alpha/2");
    for (double b : grid) {
      require(b > 0.0, "lower-bound needs beta > 0");
      const double qt = solve_lower_bound(b, eps, alpha).q_tilde;
      const int q1 = even_ceil(q1_bound(b, eps));
      rows << b << eps << alpha << qt << q1 << q1 / qt;
      rows.end_row();
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ParityArgs {
  int n = 3;
  double beta = 10.0;
  double eps_prime = 1e-4;
  double alpha = 1.0;
  std::string primitive = "ideal";
  std::string bits;
  std::uint64_t seed = 1;
};

int cmd_parity_demo(const ParityArgs& a) {
  require(a.n >= 1 && a.n <= 30, "parity-demo: n must lie in [1, 30]");
  ParityPrimitive prim;
  if (a.primitive == "ideal") prim = ParityPrimitive::ideal;
  else if (a.primitive == "p1" || a.primitive == "P1") prim = ParityPrimitive::p1;
  else if (a.primitive == "adversarial") prim = ParityPrimitive::adversarial;
  else throw ConfigError("parity-demo: primitive is ideal, p1 or adversarial");
  std::vector<int> bits;
  if (!a.bits.empty()) {
    for (char ch : a.bits) {
      require(ch == '0' || ch == '1', "parity-demo: bits must be a 0/1 string");
      bits.push_back(ch - '0');
    }
  } else {
    Rng rng(a.seed);
    for (int i = 0; i < a.n; ++i) bits.push_back(static_cast<int>(rng.next() & 1));
  }
  const ParityResult r = parity_via_qite(bits, a.beta, a.eps_prime, a.alpha, prim);
  std::string s;
  for (int b : bits) s += char('0' + b);
  Json out = {{"N", static_cast<int>(bits.size())},
              {"bits", s},
              {"beta", a.beta},
              {"eps", a.eps_prime},
              {"alpha", a.alpha},
              {"overlap", r.overlap},
              {"success_prob", r.success_prob},
              {"condition_holds", r.condition_holds}};
  if (a.beta > 0.0 && a.eps_prime > 0.0 && a.eps_prime < a.alpha / 2.0) {
    out["predicted_q_tilde"] = solve_lower_bound(a.beta, a.eps_prime, a.alpha).q_tilde;
    out["max_parity_length"] = max_parity_length(a.beta, a.eps_prime, a.alpha);
  }
  if (!r.condition_holds) out["note"] = "condition fails: the reduction gives no guarantee";
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

void add_experiment_options(CLI::App* sub, std::map<std::string, std::string>& flags,
                            std::string& config_path) {
  sub->add_option("--config", config_path, "JSON experiment config");
  for (const char* name : {"classes", "n", "instances", "eps", "beta-min", "beta-max",
                           "beta-points", "beta-grid", "primitive", "mode", "rmax", "seed", "out",
                           "threads"}) {
    sub->add_option(std::string("--") + name, flags[name]);
  }
}

ExperimentConfig load_config(const std::string& path, const std::map<std::string, std::string>& flags,
                             CLI::App* sub) {
  ExperimentConfig cfg;
  if (!path.empty()) cli::apply_json(read_json_file(path), cfg);
  Json overrides = Json::object();
  for (const auto& [name, value] : flags) {
    if (sub->count("--" + name) == 0) continue;
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    const bool numeric = key == "instances" || key == "beta_min" || key == "beta_max" ||
                         key == "beta_points" || key == "rmax" || key == "seed" || key == "threads";
    if (numeric) {
      try {
        overrides[key] = Json::parse(value);
      } catch (const Json::exception&) {
        throw ConfigError("--" + name + " expects a number");
      }
    } else {
      overrides[key] = value;
    }
  }
  cli::apply_json(overrides, cfg);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragqite: QSP-based imaginary-time evolution and fragmented QITE experiments"};
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, std::string> config_paths;
  std::vector<std::pair<CLI::App*, std::function<int(const ExperimentConfig&)>>> experiments;
  int bins = 20;
  double lb_alpha = 1.0;

  auto experiment = [&](const std::string& name, const std::string& help,
                        std::function<int(const ExperimentConfig&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_experiment_options(sub, flags[name], config_paths[name]);
    experiments.emplace_back(sub, std::move(fn));
    return sub;
  };
  experiment("complexity-scan", "Q_prob, Q_coh and optimized fragmented costs over a beta grid",
             cmd_complexity_scan);
  experiment("beta-crit", "critical inverse temperatures and the A*2^(eta N)+B fit", cmd_beta_crit);
  experiment("schedule-scan", "optimal (r, a) versus beta with power-law fits", cmd_schedule_scan);
  experiment("histogram", "first-fragment ratios beta_1 / (8 ln(4/eps'_1))",
             [&](const ExperimentConfig& c) { return cmd_histogram(c, bins); })
      ->add_option("--bins", bins, "histogram bins");
  experiment("lower-bound", "imaginary-time no-fast-forwarding bound over (beta, eps') grids",
             [&](const ExperimentConfig& c) { return cmd_lower_bound(c, lb_alpha); })
      ->add_option("--alpha", lb_alpha, "subnormalization");

  ValidateArgs va;
  CLI::App* val = app.add_subcommand("validate-primitive", "simulate one primitive and check its errors");
  val->add_option("--n", va.n);
  val->add_option("--beta", va.beta);
  val->add_option("--eps-prime", va.eps_prime);
  val->add_option("--primitive", va.primitive);
  val->add_option("--class", va.cls);
  val->add_option("--backend", va.backend);
  val->add_option("--seed", va.seed);

  ParityArgs pa;
  CLI::App* par = app.add_subcommand("parity-demo", "parity of a bit string from one QITE run");
  par->add_option("--n", pa.n);
  par->add_option("--beta", pa.beta);
  par->add_option("--eps-prime", pa.eps_prime);
  par->add_option("--alpha", pa.alpha);
  par->add_option("--primitive", pa.primitive, "ideal, p1 or adversarial");
  par->add_option("--bits", pa.bits);
  par->add_option("--seed", pa.seed);

  std::string gh_class = "weighted_maxcut", gh_out;
  int gh_n = 4;
  std::uint64_t gh_seed = 1;
  bool gh_normalize = false;
  CLI::App* gh = app.add_subcommand("gen-hamiltonian", "write an ensemble instance as JSON");
  gh->add_option("--class", gh_class);
  gh->add_option("--n", gh_n);
  gh->add_option("--seed", gh_seed);
  gh->add_flag("--normalize", gh_normalize, "rescale the spectrum to [-1, 1]");
  gh->add_option("--out", gh_out);

  std::string pu_prim = "P1", pu_out;
  double pu_beta = 1.0, pu_eps = 1e-6;
  CLI::App* pu = app.add_subcommand("pulses", "compute a QITE pulse sequence and write it as JSON");
  pu->add_option("--primitive", pu_prim);
  pu->add_option("--beta", pu_beta);
  pu->add_option("--eps-prime", pu_eps);
  pu->add_option("--out", pu_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    for (auto& [sub, fn] : experiments) {
      if (sub->parsed()) {
        return fn(load_config(config_paths[sub->get_name()], flags[sub->get_name()], sub));
      }
    }
    if (val->parsed()) return cmd_validate_primitive(va);
    if (par->parsed()) return cmd_parity_demo(pa);
    if (gh->parsed()) {
      require(gh_n >= 2 && gh_n <= 15, "gen-hamiltonian: n must lie in [2, 15]");
      HamiltonianSpec h = gen_ensemble(ham_class_from_string(gh_class), gh_n, gh_seed);
      if (gh_normalize) h = normalize(h);
      if (gh_out.empty()) std::cout << to_json(h).dump(2) << '\n';
      else write_json_file(gh_out, to_json(h));
      return 0;
    }
    if (pu->parsed()) {
      const Primitive prim = primitive_from_string(pu_prim);
      Json j;
      if (prim == Primitive::p1) {
        j = to_json(design_p1(pu_beta, pu_eps).pulses);
      } else {
        require(pu_beta > 0.0, "pulses: P2 needs beta > 0");
        j = to_json(design_p2(pu_beta, pu_eps, gamma_opt(pu_beta, Kind::prob)).pulses);
      }
      if (pu_out.empty()) std::cout << j.dump(2) << '\n';
      else write_json_file(pu_out, j);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitCheck;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitCheck;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
