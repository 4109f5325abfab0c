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

#include "fragqite/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace fragqite {

std::string to_string(HamClass c) {
  switch (c) {
    case HamClass::maxcut: return "maxcut";
    case HamClass::weighted_maxcut: return "weighted_maxcut";
    case HamClass::rbm: return "rbm";
    case HamClass::sk_heisenberg: return "sk_heisenberg";
    case HamClass::noninteracting: return "noninteracting";
    case HamClass::custom: return "custom";
  }
  return "custom";
}

HamClass ham_class_from_string(const std::string& s) {
  for (HamClass c : {HamClass::maxcut, HamClass::weighted_maxcut, HamClass::rbm,
                     HamClass::sk_heisenberg, HamClass::noninteracting, HamClass::custom}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown Hamiltonian class: " + s);
}

void HamiltonianSpec::validate() const {
  require(n_qubits >= 1 && n_qubits <= 15, "n_qubits must lie in [1, 15]");
  for (const auto& t : terms) {
    require(std::isfinite(t.coefficient), "non-finite Pauli coefficient");
    std::uint32_t seen = 0;
    for (const auto& [q, a] : t.word) {
      require(q >= 0 && q < n_qubits, "Pauli qubit index out of range");
      require(!(seen & (1u << q)), "repeated qubit in Pauli word");
      seen |= 1u << q;
    }
  }
}

bool HamiltonianSpec::is_diagonal() const {
  for (const auto& t : terms)
    for (const auto& w : t.word)
      if (w.second != Axis::Z) return false;
  return true;
}

namespace {

PauliTerm zz(double c, int i, int j) { return {c, {{i, Axis::Z}, {j, Axis::Z}}}; }

HamiltonianSpec draw(HamClass cls, int n, Rng& rng) {
  HamiltonianSpec h;
  h.n_qubits = n;
  h.cls = cls;
  switch (cls) {
    case HamClass::maxcut:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.uniform() < 0.5) h.terms.push_back(zz(1.0, i, j));
      break;
    case HamClass::weighted_maxcut:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) h.terms.push_back(zz(rng.uniform(), i, j));
      break;
    case HamClass::rbm: {
      const int nv = (n + 1) / 2;
      for (int i = 0; i < nv; ++i)
        for (int j = nv; j < n; ++j) h.terms.push_back(zz(rng.uniform(-1.0, 1.0), i, j));
      for (int i = 0; i < n; ++i) h.terms.push_back({rng.uniform(), {{i, Axis::X}}});
      break;
    }
    case HamClass::sk_heisenberg:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (Axis a : {Axis::X, Axis::Y, Axis::Z})
            h.terms.push_back({rng.uniform(-1.0, 1.0), {{i, a}, {j, a}}});
      break;
    case HamClass::noninteracting:
      for (int i = 0; i < n; ++i) h.terms.push_back({1.0 / n, {{i, Axis::Z}}});
      break;
    case HamClass::custom:
      throw ConfigError("custom Hamiltonians are loaded from JSON, not generated");
  }
  return h;
}

// Applies a Pauli word to basis state b: returns (b', phase) with P|b> = phase |b'>.
std::pair<std::uint64_t, cplx> apply_word(const PauliTerm& t, std::uint64_t b) {
  cplx phase = 1.0;
  std::uint64_t out = b;
  for (const auto& [q, a] : t.word) {
    const bool bit = (b >> q) & 1u;
    switch (a) {
      case Axis::X: out ^= (1ull << q); break;
      case Axis::Y:
        out ^= (1ull << q);
        phase *= bit ? cplx(0, -1) : cplx(0, 1);
        break;
      case Axis::Z:
        if (bit) phase = -phase;
        break;
    }
  }
  return {out, phase};
}

}  // namespace

HamiltonianSpec gen_ensemble(HamClass cls, int n_qubits, std::uint64_t seed) {
  require(n_qubits >= 2 && n_qubits <= 15, "n_qubits must lie in [2, 15]");
  Rng rng(seed);
  // A draw without any nonzero coupling has a flat spectrum that cannot be rescaled.
  for (;;) {
    HamiltonianSpec h = draw(cls, n_qubits, rng);
    h.seed = seed;
    if (!h.terms.empty()) return h;
  }
}

MatrixXcd dense_matrix(const HamiltonianSpec& h) {
  h.validate();
  const std::uint64_t dim = 1ull << h.n_qubits;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const auto [out, phase] = apply_word(t, b);
      m(out, b) += t.coefficient * phase;
    }
  }
  return m;
}

VectorXd diagonal_energies(const HamiltonianSpec& h) {
  h.validate();
  require(h.is_diagonal(), "diagonal_energies requires a Z-only Hamiltonian");
  const std::uint64_t dim = 1ull << h.n_qubits;
  VectorXd e = VectorXd::Zero(dim);
  for (const auto& t : h.terms) {
    std::uint64_t mask = 0;
    for (const auto& w : t.word) mask |= 1ull << w.first;
    for (std::uint64_t b = 0; b < dim; ++b)
      e[b] += (std::popcount(b & mask) & 1) ? -t.coefficient : t.coefficient;
  }
  return e;
}

HamiltonianSpec rescale(const HamiltonianSpec& h, double lo, double hi) {
  require(lo < hi, "rescale requires lo < hi");
  const Eigensystem es = eigensystem(h, false);
  const double tol = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (es.values[0] < lo - tol || es.values[es.values.size() - 1] > hi + tol)
    throw ConfigError("rescale bounds do not contain the spectrum");
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  HamiltonianSpec out = h;
  out.terms.clear();
  double identity = -mid;
  for (const auto& t : h.terms) {
    if (t.word.empty()) {
      identity += t.coefficient;
    } else {
      out.terms.push_back({t.coefficient / half, t.word});
    }
  }
  if (identity != 0.0) out.terms.push_back({identity / half, {}});
  out.energy_shift = h.energy_shift + h.energy_scale * mid;
  out.energy_scale = h.energy_scale * half;
  return out;
}

HamiltonianSpec normalize(const HamiltonianSpec& h, int dense_cap) {
  const Eigensystem es = eigensystem(h, false, dense_cap);
  const double lo = es.values[0];
  const double hi = es.values[es.values.size() - 1];
  if (!(hi - lo > 1e-12)) throw ConfigError("flat spectrum cannot be normalized");
  return rescale(h, lo, hi);
}

Eigensystem eigensystem(const HamiltonianSpec& h, bool want_vectors, int dense_cap) {
  h.validate();
  Eigensystem es;
  if (h.is_diagonal()) {
    const VectorXd e = diagonal_energies(h);
    std::vector<Eigen::Index> order(e.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return e[a] < e[b]; });
    es.values.resize(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) es.values[i] = e[order[i]];
    if (want_vectors) {
      require(h.n_qubits <= dense_cap, "eigenvectors requested beyond the dense cap");
      es.vectors = MatrixXcd::Zero(e.size(), e.size());
      for (Eigen::Index i = 0; i < e.size(); ++i) es.vectors(order[i], i) = 1.0;
    }
    return es;
  }
  require(h.n_qubits <= dense_cap, "dense eigensolve capped at n_qubits = " +
                                       std::to_string(dense_cap));
  const MatrixXcd m = dense_matrix(h);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw ConfigError("Hamiltonian matrix is not Hermitian");
  const auto opt = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(m.real(), opt);
    es.values = solver.eigenvalues();
    if (want_vectors) es.vectors = solver.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m, opt);
    es.values = solver.eigenvalues();
    if (want_vectors) es.vectors = solver.eigenvectors();
  }
  return es;
}

InputState InputState::basis(int n_qubits, std::uint64_t index) {
  VectorXcd v = VectorXcd::Zero(1ll << n_qubits);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return pure(std::move(v));
}

double Spectrum::ground_overlap(double tol) const {
  double o2 = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size() && eigenvalues[i] <= lambda_min + tol; ++i)
    o2 += overlaps[i];
  return o2;
}

Spectrum Spectrum::compressed(double tol) const {
  Spectrum out;
  out.lambda_min = lambda_min;
  out.lambda_max = lambda_max;
  out.n_qubits = n_qubits;
  std::vector<double> ev, ov, mu;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (!ev.empty() && eigenvalues[i] - ev.back() <= tol * std::max(1.0, std::abs(ev.back()))) {
      ov.back() += overlaps[i];
      mu.back() += multiplicity[i];
    } else {
      ev.push_back(eigenvalues[i]);
      ov.push_back(overlaps[i]);
      mu.push_back(multiplicity[i]);
    }
  }
  out.eigenvalues = Eigen::Map<VectorXd>(ev.data(), ev.size());
  out.overlaps = Eigen::Map<VectorXd>(ov.data(), ov.size());
  out.multiplicity = Eigen::Map<VectorXd>(mu.data(), mu.size());
  return out;
}

void Spectrum::validate() const {
  require(eigenvalues.size() > 0, "empty spectrum");
  require(overlaps.size() == eigenvalues.size() && multiplicity.size() == eigenvalues.size(),
          "spectrum fields have mismatched lengths");
  require(std::abs(overlaps.sum() - 1.0) <= 1e-10, "overlaps must sum to 1");
  require((overlaps.array() >= 0.0).all(), "overlaps must be nonnegative");
}

Spectrum spectrum_from(const Eigensystem& es, const InputState& state, int n_qubits) {
  Spectrum s;
  const Eigen::Index dim = es.values.size();
  s.n_qubits = n_qubits;
  s.eigenvalues = es.values;
  s.multiplicity = VectorXd::Ones(dim);
  s.lambda_min = es.values[0];
  s.lambda_max = es.values[dim - 1];
  if (state.maximally_mixed) {
    s.overlaps = VectorXd::Constant(dim, 1.0 / static_cast<double>(dim));
  } else {
    require(state.vector.size() == dim, "input state has the wrong dimension");
    require(es.vectors.cols() == dim, "pure-state overlaps need eigenvectors");
    const double norm = state.vector.norm();
    require(norm > 0.0, "input state is zero");
    s.overlaps = (es.vectors.adjoint() * state.vector / norm).cwiseAbs2();
  }
  return s;
}

Spectrum diagonalize(const HamiltonianSpec& h, const InputState& state, int dense_cap) {
  const bool need_vectors = !state.maximally_mixed;
  const Eigensystem es = eigensystem(h, need_vectors, dense_cap);
  return spectrum_from(es, state, h.n_qubits);
}

double success_prob(const Spectrum& s, double beta) {
  require(beta >= 0.0, "success_prob requires beta >= 0");
  // Eigenvalues ascend, so terms decrease; stop once the remaining weight
  // cannot move the sum in the last representable digit.
  double sum = 0.0;
  double remaining = 1.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double w = std::exp(-2.0 * beta * (s.eigenvalues[i] - s.lambda_min));
    if (w * remaining < 1e-17 * sum) break;
    sum += s.overlaps[i] * w;
    remaining -= s.overlaps[i];
  }
  return std::min(sum, 1.0);
}

double inverse_success_prob(const Spectrum& s, double target) {
  const double o2 = s.ground_overlap();
  if (!(target > o2) || target > 1.0)
    throw ConfigError("inverse_success_prob target outside (o^2, 1]");
  if (target >= 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (success_prob(s, hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw NumericalError("inverse_success_prob bracket diverged");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (success_prob(s, mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gibbs_post_selection(const Spectrum& s, double beta, double alpha) {
  require(beta >= 0.0, "gibbs_post_selection requires beta >= 0");
  require(alpha > 0.0 && alpha <= 1.0, "gibbs_post_selection requires 0 < alpha <= 1");
  const double z = (s.multiplicity.array() *
                    (-beta * (s.eigenvalues.array() - s.lambda_min)).exp())
                       .sum();
  return alpha * alpha * z / s.multiplicity.sum();
}

MatrixXcd qite_operator(const Eigensystem& es, double beta, double lambda_min) {
  const VectorXd f = (-beta * (es.values.array() - lambda_min)).exp();
  return es.vectors * f.asDiagonal() * es.vectors.adjoint();
}

}  // namespace fragqite
