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

#include "fragqite/parity.hpp"

#include <cmath>
#include <deque>

#include <unsupported/Eigen/MatrixFunctions>

namespace fragqite {

namespace {

void check_bits(const std::vector<int>& bits) {
  require(!bits.empty(), "parity: bit string must be nonempty");
  for (int b : bits) require(b == 0 || b == 1, "parity: bits must be 0 or 1");
}

double coupling(int n, int j) { return std::sqrt(double(n - j) * (j + 1)) / (4.0 * n); }

// J₊ on the symmetric subspace, padded with zeros to `dim`.
MatrixXd ladder_up(int n, int dim) {
  MatrixXd j = MatrixXd::Zero(dim, dim);
  for (int k = 0; k < n; ++k) j(k + 1, k) = std::sqrt(double(n - k) * (k + 1));
  return j;
}

MatrixXd psd_sqrt(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

// [[A, √(I − AAᵀ)], [√(I − AᵀA), −Aᵀ]] for a real contraction A.
MatrixXcd contraction_dilation(const MatrixXd& a) {
  const Eigen::Index d = a.rows();
  const MatrixXd id = MatrixXd::Identity(d, d);
  MatrixXd u(2 * d, 2 * d);
  u << a, psd_sqrt(id - a * a.transpose()), psd_sqrt(id - a.transpose() * a), -a.transpose();
  return u.cast<cplx>();
}

}  // namespace

MatrixXd build_h0(int n) {
  require(n >= 1, "build_h0 requires N >= 1");
  MatrixXd h = MatrixXd::Zero(n + 1, n + 1);
  for (int j = 0; j < n; ++j) h(j + 1, j) = h(j, j + 1) = coupling(n, j);
  return h;
}

ParityInstance build_hx(const std::vector<int>& bits) {
  check_bits(bits);
  const int n = static_cast<int>(bits.size());
  ParityInstance inst;
  inst.bits = bits;
  inst.h = MatrixXd::Zero(2 * (n + 1), 2 * (n + 1));
  for (int j = 0; j < n; ++j) {
    const double c = coupling(n, j);
    for (int p = 0; p < 2; ++p) {
      const int a = ParityInstance::index(j, p);
      const int b = ParityInstance::index(j + 1, p ^ bits[j]);
      inst.h(a, b) = inst.h(b, a) = c;
    }
    inst.parity ^= bits[j];
  }
  return inst;
}

bool parity_connectivity(const ParityInstance& inst) {
  const Eigen::Index d = inst.h.rows();
  std::vector<bool> seen(d, false);
  std::deque<Eigen::Index> queue = {0};
  seen[0] = true;
  while (!queue.empty()) {
    const Eigen::Index v = queue.front();
    queue.pop_front();
    for (Eigen::Index w = 0; w < d; ++w) {
      if (inst.h(v, w) != 0.0 && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  const int n = inst.n();
  return seen[ParityInstance::index(n, inst.parity)] &&
         !seen[ParityInstance::index(n, inst.parity ^ 1)];
}

double overlap_formula(int n, double beta) {
  require(n >= 1 && beta >= 0.0, "overlap_formula requires N >= 1, beta >= 0");
  return std::pow(-std::expm1(-beta / (2.0 * n)) / 2.0, n);
}

double overlap_expm(int n, double beta) {
  require(n >= 1 && beta >= 0.0, "overlap_expm requires N >= 1, beta >= 0");
  const MatrixXd shifted = build_h0(n) + 0.25 * MatrixXd::Identity(n + 1, n + 1);
  const MatrixXd f = (-beta * shifted).exp();
  return std::abs(f(n, 0));
}

int max_parity_length(double beta, double eps_prime, double alpha) {
  require(beta > 0.0 && alpha > 0.0 && eps_prime > 0.0 && eps_prime < alpha / 2.0,
          "max_parity_length requires beta > 0 and 0 < eps' < alpha/2");
  const double rhs = 2.0 * eps_prime / alpha;
  int n = 0;
  while (overlap_formula(n + 1, beta) > rhs) {
    ++n;
    if (n > 100000000) throw NumericalError("max_parity_length did not terminate");
  }
  return n;
}

ParityResult parity_via_qite(const std::vector<int>& bits, double beta, double eps_prime,
                             double alpha, ParityPrimitive prim) {
  check_bits(bits);
  require(beta >= 0.0 && eps_prime >= 0.0 && alpha > 0.0 && alpha <= 1.0,
          "parity_via_qite requires beta >= 0, eps' >= 0, 0 < alpha <= 1");
  const ParityInstance inst = build_hx(bits);
  const int n = inst.n();
  const int good = ParityInstance::index(n, inst.parity);
  const int bad = ParityInstance::index(n, inst.parity ^ 1);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(inst.h);
  const VectorXd lam = es.eigenvalues();
  const MatrixXd& v = es.eigenvectors();
  // Column of the block acting on |0⟩_s|0⟩_p.
  VectorXd col(inst.h.rows());
  switch (prim) {
    case ParityPrimitive::ideal:
    case ParityPrimitive::adversarial: {
      const VectorXd f = (-beta * (lam.array() + 0.25)).exp();
      col = alpha * v * f.asDiagonal() * v.row(0).transpose();
      if (prim == ParityPrimitive::adversarial && eps_prime > 0.0) {
        // Minimizes (A − ε' cos θ)² − ε'² sin² θ over θ, with A = |good amplitude|.
        const double a = std::abs(col[good]);
        const double c = a >= 2.0 * eps_prime ? 1.0 : a / (2.0 * eps_prime);
        const double sign = col[good] < 0.0 ? -1.0 : 1.0;
        col[good] -= sign * eps_prime * c;
        col[bad] += eps_prime * std::sqrt(1.0 - c * c);
      }
      break;
    }
    case ParityPrimitive::p1: {
      require(alpha == 1.0, "the Chebyshev primitive has alpha = 1");
      VectorXd f(lam.size());
      if (beta == 0.0) {
        f.setOnes();
      } else {
        require(eps_prime > 0.0, "the Chebyshev primitive needs eps' > 0");
        const P1Design d = design_p1(beta / 4.0, eps_prime);
        for (Eigen::Index i = 0; i < lam.size(); ++i) f[i] = d.eval(4.0 * lam[i]);
      }
      col = v * f.asDiagonal() * v.row(0).transpose();
      break;
    }
  }
  ParityResult out;
  out.overlap = overlap_formula(n, beta);
  out.condition_holds = alpha * out.overlap > 2.0 * eps_prime;
  const double pg = col[good] * col[good];
  const double pb = col[bad] * col[bad];
  out.post_selection_prob = pg + pb;
  out.success_prob = 0.5 + 0.5 * (pg - pb);
  out.prob_guess[inst.parity] = out.success_prob;
  out.prob_guess[inst.parity ^ 1] = 1.0 - out.success_prob;
  if (out.condition_holds && !(out.success_prob > 0.5)) {
    throw NumericalError("parity success probability not above 1/2 although the condition holds");
  }
  return out;
}

MatrixXcd parity_oracle(const std::vector<int>& bits) {
  check_bits(bits);
  const int n = static_cast<int>(bits.size());
  int m = 0;
  while ((1 << m) < n + 1) ++m;
  const int dim = 2 << m;
  MatrixXcd u = MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int j = i >> 1;
    const int flip = j < n ? bits[j] : 0;
    u(i ^ flip, i) = 1.0;
  }
  return u;
}

BlockEncoding block_encode_hx(const std::vector<int>& bits, int* oracle_calls) {
  check_bits(bits);
  const int n = static_cast<int>(bits.size());
  require(n <= 8, "block_encode_hx supports N <= 8");
  const MatrixXcd ux = parity_oracle(bits);
  const int sys = static_cast<int>(ux.rows());
  int sys_qubits = 0;
  while ((1 << sys_qubits) < sys) ++sys_qubits;
  const int lcu = sys_qubits + 1;  // the J-encoding ancilla is qubit sys_qubits
  const int total = sys_qubits + 2;

  // J₊ ⊗ I_p in the 2j + p ordering.
  const MatrixXd ladder = ladder_up(n, sys / 2);
  MatrixXd jp = MatrixXd::Zero(sys, sys);
  for (int a = 0; a < sys / 2; ++a)
    for (int b = 0; b < sys / 2; ++b)
      for (int p = 0; p < 2; ++p) jp(2 * a + p, 2 * b + p) = ladder(a, b);
  const MatrixXcd up = contraction_dilation(jp / (2.0 * n));
  const MatrixXcd um = contraction_dilation(jp.transpose() / (2.0 * n));
  const int half = 2 * sys;
  MatrixXcd c0 = MatrixXcd::Identity(2 * half, 2 * half);
  c0.topLeftCorner(half, half) = up;
  MatrixXcd c1 = MatrixXcd::Identity(2 * half, 2 * half);
  c1.bottomRightCorner(half, half) = um;
  Matrix2cd hd;
  hd << 1.0, 1.0, 1.0, -1.0;
  hd /= std::sqrt(2.0);
  const MatrixXcd had = on_qubit(total, lcu, hd);

  OracleCircuit c(total, ux);
  c.fixed(had);
  c.fixed(c1);
  c.call(false);
  c.fixed(c0);
  c.fixed(had);
  if (oracle_calls) *oracle_calls = c.queries();

  BlockEncoding e;
  e.n_system = sys_qubits;
  e.n_ancilla = 2;
  e.unitary = c.unitary();
  const int phys = 2 * (n + 1);
  e.block = e.unitary.topLeftCorner(phys, phys);
  e.target = build_hx(bits).h.cast<cplx>();
  e.queries = c.queries();
  return e;
}

}  // namespace fragqite
