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

#include "fragqite/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fragqite {

namespace {


Matrix2cd hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return (Matrix2cd() << r, r, r, -r).finished();
}
Matrix2cd pauli_x2() { return (Matrix2cd() << 0, 1, 1, 0).finished(); }
Matrix2cd pauli_z2() { return (Matrix2cd() << 1, 0, 0, -1).finished(); }
Matrix2cd zrot(double a) {
  return (Matrix2cd() << std::polar(1.0, a), 0, 0, std::polar(1.0, -a)).finished();
}
// e^{−iaY}
Matrix2cd yrot(double a) {
  return (Matrix2cd() << std::cos(a), -std::sin(a), std::sin(a), std::cos(a)).finished();
}

double spectral_norm(const MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<MatrixXcd>(a).singularValues()[0];
}

int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index(1) << k) < n) ++k;
  require((Eigen::Index(1) << k) == n, "dimension is not a power of two");
  return k;
}

void check_system(const Eigensystem& es) {
  require(es.vectors.size() > 0, "block construction needs eigenvectors");
}

MatrixXcd from_eigen(const Eigensystem& es, const VectorXcd& f) {
  return es.vectors * f.asDiagonal() * es.vectors.adjoint();
}

MatrixXcd hamiltonian_matrix(const Eigensystem& es) {
  return from_eigen(es, es.values.cast<cplx>());
}

// √(1 − H²) through the eigensystem of a Hermitian H with ‖H‖ ≤ 1.
MatrixXcd complement_sqrt(const MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  VectorXcd s(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double l = es.eigenvalues()[i];
    s[i] = std::sqrt(std::max(0.0, 1.0 - l * l));
  }
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

// Diagonal reflection 2|0⟩⟨0| − 1 on qubits [lo, hi), active when `control`
// (if any) is set.
VectorXcd reflection_diag(int n_qubits, int lo, int hi, int control) {
  const int dim = 1 << n_qubits;
  VectorXcd d(dim);
  const int mask = ((1 << hi) - 1) & ~((1 << lo) - 1);
  for (int i = 0; i < dim; ++i) {
    const bool active = control < 0 || ((i >> control) & 1);
    d[i] = !active || (i & mask) == 0 ? 1.0 : -1.0;
  }
  return d;
}

}  // namespace

double BlockEncoding::block_error() const { return spectral_norm(block - target); }

// ---------------------------------------------------------------------------
// Primitive design.

double P1Design::eval(double lambda) const {
  const double theta = std::acos(std::clamp(lambda, -1.0, 1.0));
  // W_out V̄ V ⋯ W_in restricted to the two eigenphases e^{∓iθ} of the
  // qubitized oracle; each branch is ⟨+|U(±θ/2)|+⟩ and |0_λ⟩ splits evenly.
  auto branch = [&](double u) {
    const Matrix2cd m = eval_sequence1(pulses.phis, u);
    return 0.5 * (m(0, 0) + m(0, 1) + m(1, 0) + m(1, 1));
  };
  return (0.5 * (branch(0.5 * theta) + branch(-0.5 * theta))).real();
}

P1Design design_p1(double beta, double eps, int q) {
  require(beta >= 0.0 && eps > 0.0 && eps < 1.0, "design_p1: bad arguments");
  P1Design d;
  d.beta = beta;
  d.eps = eps;
  d.q = q > 0 ? q : cheb_truncation_order(beta, eps);
  require(d.q % 2 == 0, "design_p1 requires even q");
  ChebyshevSeries s = jacobi_anger_coeffs(beta, -1.0, d.q);
  d.truncation_bound = s.certified_error;
  double peak = 0.0;
  for (int i = 0; i <= 8192; ++i) peak = std::max(peak, std::abs(s(-1.0 + 2.0 * i / 8192.0)));
  d.scale = peak > 1.0 ? 1.0 / peak : 1.0;
  s.coeffs *= d.scale;
  double err = 0.0;
  for (int i = 0; i <= 8192; ++i) {
    const double x = -1.0 + 2.0 * i / 8192.0;
    err = std::max(err, std::abs(s(x) - std::exp(-beta * (x + 1.0))));
  }
  d.realized_error = err;
  s.certified_error = err;
  d.pulses = angles_method1(complete_polynomials(s.coeffs));
  d.pulses.target = s;
  return d;
}

cplx P2Design::eval(double lambda) const {
  return eval_sequence2(pulses.omegas, pulses.xis, lambda * t())(0, 0);
}

P2Design design_p2(double beta, double eps, double gamma, double lambda_min) {
  require(beta >= 0.0 && eps > 0.0 && eps < 1.0 && gamma > 0.0, "design_p2: bad arguments");
  require(lambda_min >= -1.0 - 1e-12 && lambda_min <= 1.0, "design_p2 needs lambda_min in [-1, 1]");
  P2Design d;
  d.beta = beta;
  d.eps = eps;
  d.gamma = gamma;
  d.lambda_min = lambda_min;
  const TaylorResult tay = taylor_order_and_alpha(beta, lambda_min, gamma, eps);
  d.alpha = tay.alpha;
  const FourierSeries fs = fourier_from_taylor(tay, beta, gamma, eps);
  if (!fs.certified) {
    std::ostringstream os;
    os << "Fourier fit not certified: error " << fs.certified_error << " > " << eps
       << " or max modulus " << fs.max_modulus << " > 1";
    throw NumericalError(os.str());
  }
  const double tol = std::max(1e-12, std::min(1e-8, 0.01 * eps));
  d.pulses = angles_method2(fs, tol);
  if (!d.pulses.converged) {
    std::ostringstream os;
    os << "pulse fit residual " << d.pulses.residual << " exceeds " << tol;
    throw NumericalError(os.str());
  }
  return d;
}

// ---------------------------------------------------------------------------
// Oracle circuits.

OracleCircuit::OracleCircuit(int total_qubits, MatrixXcd oracle)
    : total_qubits_(total_qubits), oracle_(std::move(oracle)) {
  require(total_qubits >= log2_exact(oracle_.rows()), "oracle larger than the register");
}

void OracleCircuit::fixed(const MatrixXcd& u) {
  require(u.rows() == dim() && u.cols() == dim(), "fixed step has the wrong dimension");
  // Consecutive fixed steps are merged so evaluation cost scales with the calls.
  if (!steps_.empty() && !steps_.back().is_call) {
    steps_.back().fixed = u * steps_.back().fixed;
    return;
  }
  Step s;
  s.fixed = u;
  steps_.push_back(std::move(s));
}

void OracleCircuit::call(bool dagger, int control) {
  require(control < total_qubits_, "control qubit out of range");
  Step s;
  s.is_call = true;
  s.dagger = dagger;
  s.control = control;
  steps_.push_back(std::move(s));
  ++queries_;
}

MatrixXcd OracleCircuit::unitary(const std::vector<MatrixXcd>* perturb) const {
  require(!perturb || static_cast<int>(perturb->size()) >= queries_,
          "one perturbation per oracle call is required");
  const int k = log2_exact(oracle_.rows());
  const int block = 1 << k;
  MatrixXcd u = MatrixXcd::Identity(dim(), dim());
  int call = 0;
  for (const Step& s : steps_) {
    if (!s.is_call) {
      u = s.fixed * u;
      continue;
    }
    MatrixXcd o = perturb ? MatrixXcd((*perturb)[call] * oracle_) : oracle_;
    if (s.dagger) o.adjointInPlace();
    ++call;
    require(s.control < 0 || s.control >= k, "oracle control must lie outside the oracle");
    for (int h = 0; h < dim() / block; ++h) {
      if (s.control >= 0 && !((h >> (s.control - k)) & 1)) continue;
      u.middleRows(h * block, block) = o * u.middleRows(h * block, block);
    }
  }
  return u;
}

MatrixXcd on_qubit(int n_qubits, int bit, const Matrix2cd& g) {
  const int dim = 1 << n_qubits;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int b = (i >> bit) & 1;
    const int base = i & ~(1 << bit);
    for (int c = 0; c < 2; ++c) m(base | (c << bit), i) = g(c, b);
  }
  return m;
}

namespace {

MatrixXcd controlled(int n_qubits, int control, const MatrixXcd& u) {
  const int dim = 1 << n_qubits;
  MatrixXcd m = MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!((i >> control) & 1)) continue;
    for (int j = 0; j < dim; ++j)
      if ((j >> control) & 1) m(i, j) = u(i, j);
  }
  return m;
}

// O1 = U_H ⊗ |0⟩⟨0|_c + 1 ⊗ |1⟩⟨1|_c with c the high qubit.
MatrixXcd controlled_oracle(const MatrixXcd& uh) {
  const Eigen::Index d = uh.rows();
  MatrixXcd o = MatrixXcd::Identity(2 * d, 2 * d);
  o.topLeftCorner(d, d) = uh;
  return o;
}

// Appends O'1 = R_{|0⟩} Z_c (M_c O1 M_c)(M_c X_c O1† X_c M_c), or its inverse,
// on a register whose low `n_sys + n_anc + 1` qubits hold S, A_{U_H} and c.
// The reflection, Z_c and both oracle calls are controlled on `control`.
void append_qubitized(OracleCircuit& c, int n_total, int n_sys, int n_anc, int control,
                      bool inverse) {
  const int cbit = n_sys + n_anc;
  const MatrixXcd m = on_qubit(n_total, cbit, hadamard());
  const MatrixXcd x = on_qubit(n_total, cbit, pauli_x2());
  MatrixXcd z = on_qubit(n_total, cbit, pauli_z2());
  MatrixXcd r = reflection_diag(n_total, n_sys, cbit + 1, control).asDiagonal();
  if (control >= 0) z = controlled(n_total, control, z);
  if (!inverse) {
    c.fixed(m);
    c.fixed(x);
    c.call(true, control);
    c.fixed(x);
    c.call(false, control);
    c.fixed(m);
    c.fixed(z);
    c.fixed(r);
  } else {
    c.fixed(r);
    c.fixed(z);
    c.fixed(m);
    c.fixed(x);
    c.call(false, control);
    c.fixed(x);
    c.call(true, control);
    c.fixed(m);
  }
}

}  // namespace

BlockEncoding dilation_encoding(const MatrixXcd& h) {
  require(h.rows() == h.cols(), "dilation needs a square matrix");
  require((h - h.adjoint()).norm() <= 1e-8, "dilation needs a Hermitian matrix");
  const Eigen::Index d = h.rows();
  BlockEncoding e;
  e.n_system = log2_exact(d);
  e.n_ancilla = 1;
  const MatrixXcd s = complement_sqrt(h);
  e.unitary.resize(2 * d, 2 * d);
  e.unitary << h, s, s, -h;
  e.block = h;
  e.target = h;
  e.queries = 1;
  return e;
}

BlockEncoding qubitize(const BlockEncoding& uh) {
  require(uh.unitary.size() > 0, "qubitize needs the full unitary");
  const int n = uh.n_system, k = uh.n_ancilla;
  const MatrixXcd h = uh.unitary.topLeftCorner(1 << n, 1 << n);
  require((h - h.adjoint()).norm() <= 1e-8, "qubitize needs a Hermitian block");
  require(spectral_norm(h - uh.target) <= 1e-8,
          "qubitize needs a perfect block-encoding");
  OracleCircuit c(n + k + 1, controlled_oracle(uh.unitary));
  append_qubitized(c, n + k + 1, n, k, -1, false);
  BlockEncoding out;
  out.n_system = n;
  out.n_ancilla = k + 1;
  out.unitary = c.unitary();
  out.block = out.unitary.topLeftCorner(1 << n, 1 << n);
  out.target = uh.target;
  out.queries = c.queries();
  return out;
}

VectorXd invariant_subspace_angles(const MatrixXcd& w, const Eigensystem& es, int n_ancilla,
                                   double* leakage) {
  check_system(es);
  const Eigen::Index d = es.vectors.rows();
  require(w.rows() == (d << n_ancilla), "operator and eigensystem disagree in dimension");
  VectorXd angles(es.values.size());
  double leak = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    VectorXcd x0 = VectorXcd::Zero(w.rows());
    x0.head(d) = es.vectors.col(i);
    const VectorXcd y = w * x0;
    // Distance of W²x₀ from span{x₀, Wx₀}; a least-squares residual stays
    // accurate when the two spanning vectors are nearly parallel.
    MatrixXcd basis(w.rows(), 2);
    basis << x0, y;
    const VectorXcd wy = w * y;
    leak = std::max(leak, (wy - basis * basis.colPivHouseholderQr().solve(wy)).norm());
    const cplx a00 = x0.dot(y);
    VectorXcd perp = y - a00 * x0;
    if (perp.norm() < 1e-10) {
      angles[i] = std::abs(std::arg(a00));
      continue;
    }
    perp.normalize();
    const VectorXcd wp = w * perp;
    Matrix2cd m;
    m << a00, x0.dot(wp), perp.dot(y), perp.dot(wp);
    Eigen::ComplexEigenSolver<Matrix2cd> ces(m);
    angles[i] = 0.5 * (std::abs(std::arg(ces.eigenvalues()[0])) +
                       std::abs(std::arg(ces.eigenvalues()[1])));
  }
  if (leakage) *leakage = leak;
  return angles;
}

OracleCircuit p1_circuit(const MatrixXcd& h, const PulseSeq1& pulses) {
  const BlockEncoding uh = dilation_encoding(h);
  const int n = uh.n_system;
  const int total = n + 3;
  const int sbit = n + 2;
  OracleCircuit c(total, controlled_oracle(uh.unitary));
  const MatrixXcd ms = on_qubit(total, sbit, hadamard());
  auto phase = [&](double phi) { return on_qubit(total, sbit, zrot(phi)); };
  const int q = pulses.q;
  c.fixed(ms);  // W_in
  for (int j = 1; j <= q; ++j) {
    c.fixed(phase(pulses.phis[j - 1]));
    c.fixed(ms);
    append_qubitized(c, total, n, 1, sbit, j % 2 == 0);
    c.fixed(ms);
  }
  c.fixed(phase(pulses.phis[q]));
  c.fixed(ms);  // W_out
  return c;
}

OracleCircuit p2_circuit(const MatrixXcd& h, double t, const PulseSeq2& pulses) {
  const int n = log2_exact(h.rows());
  const Eigen::Index d = h.rows();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  VectorXcd ph(d);
  for (Eigen::Index i = 0; i < d; ++i) ph[i] = std::polar(1.0, -t * es.eigenvalues()[i]);
  MatrixXcd o2 = MatrixXcd::Identity(2 * d, 2 * d);
  o2.bottomRightCorner(d, d) = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  OracleCircuit c(n + 1, o2);
  auto gate = [&](int k) {
    const double zeta = pulses.xis(k, 0), eta = pulses.xis(k, 1), phi = pulses.xis(k, 2);
    return on_qubit(n + 1, n, zrot(0.5 * (zeta + eta)) * yrot(phi) * zrot(0.5 * (zeta - eta)));
  };
  for (int k = 0; k <= pulses.q; ++k) {
    c.fixed(on_qubit(n + 1, n, yrot(pulses.xis(k, 3))));
    // ω_k = −1/2 for odd k is realized by O2†, +1/2 for even k by O2.
    if (k > 0) c.call(k % 2 == 1);
    c.fixed(gate(k));
  }
  return c;
}

BlockEncoding build_p1(const Eigensystem& es, const P1Design& d, Backend backend) {
  check_system(es);
  require(std::abs(es.values[0] + 1.0) <= 1e-9,
          "the Chebyshev primitive needs a rescaled Hamiltonian with lambda_min = -1");
  BlockEncoding e;
  e.n_system = log2_exact(es.vectors.rows());
  e.target = qite_operator(es, d.beta, -1.0);
  e.declared_error = d.eps;
  e.queries = d.queries();
  if (backend == Backend::fast) {
    VectorXcd f(es.values.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = d.eval(es.values[i]);
    e.n_ancilla = 3;
    e.block = from_eigen(es, f);
    return e;
  }
  require(e.n_system <= kFullBackendMaxQubits, "full backend is limited to 4 system qubits");
  const OracleCircuit c = p1_circuit(hamiltonian_matrix(es), d.pulses);
  e.n_ancilla = 3;
  e.unitary = c.unitary();
  e.block = e.unitary.topLeftCorner(1 << e.n_system, 1 << e.n_system);
  return e;
}

BlockEncoding build_p2(const Eigensystem& es, const P2Design& d, Backend backend) {
  check_system(es);
  BlockEncoding e;
  e.n_system = log2_exact(es.vectors.rows());
  e.n_ancilla = 1;
  e.alpha = d.alpha;
  e.target = d.alpha * qite_operator(es, d.beta, d.lambda_min);
  e.declared_error = d.eps;
  e.queries = d.queries();
  if (backend == Backend::fast) {
    VectorXcd f(es.values.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = d.eval(es.values[i]);
    e.block = from_eigen(es, f);
    return e;
  }
  require(e.n_system <= kFullBackendMaxQubits, "full backend is limited to 4 system qubits");
  const OracleCircuit c = p2_circuit(hamiltonian_matrix(es), d.t(), d.pulses);
  e.unitary = c.unitary();
  e.block = e.unitary.topLeftCorner(1 << e.n_system, 1 << e.n_system);
  return e;
}

SimResult post_select(const BlockEncoding& enc, const InputState& input) {
  SimResult r;
  const Eigen::Index d = enc.block.rows();
  if (input.maximally_mixed) {
    const double norm2 = enc.block.squaredNorm();
    r.post_selection_prob = norm2 / static_cast<double>(d);
    if (norm2 <= 0.0) {
      r.trace_distance_to_ideal = 1.0;
      return r;
    }
    const MatrixXcd rho = enc.block * enc.block.adjoint() / norm2;
    const MatrixXcd sigma = enc.target * enc.target.adjoint() / enc.target.squaredNorm();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho - sigma, Eigen::EigenvaluesOnly);
    r.trace_distance_to_ideal = 0.5 * es.eigenvalues().cwiseAbs().sum();
    return r;
  }
  require(input.vector.size() == d, "input state has the wrong dimension");
  require(std::abs(input.vector.norm() - 1.0) <= 1e-10, "input state must be normalized");
  const VectorXcd out = enc.block * input.vector;
  r.post_selection_prob = out.squaredNorm();
  if (r.post_selection_prob <= 1e-300) {
    r.trace_distance_to_ideal = 1.0;
    return r;
  }
  r.output_state = out / std::sqrt(r.post_selection_prob);
  VectorXcd ideal = enc.target * input.vector;
  ideal.normalize();
  const double ov = std::norm(ideal.dot(r.output_state));
  r.trace_distance_to_ideal = std::sqrt(std::max(0.0, 1.0 - ov));
  return r;
}

OracleCheckReport imperfect_oracle_check(const OracleCircuit& circuit, int n_system,
                                         const MatrixXcd& target, double declared_error,
                                         double eps_o, int trials, std::uint64_t seed) {
  require(eps_o >= 0.0 && trials >= 0, "imperfect_oracle_check: bad arguments");
  OracleCheckReport rep;
  rep.eps_o = eps_o;
  rep.queries = circuit.queries();
  rep.bound = declared_error + rep.queries * eps_o;
  const int ds = 1 << n_system;
  rep.base_error = spectral_norm(circuit.unitary().topLeftCorner(ds, ds) - target);
  const Eigen::Index od = circuit.oracle().rows();
  Rng rng(seed);
  rep.pass = rep.base_error <= declared_error + 1e-12;
  for (int t = 0; t < trials; ++t) {
    std::vector<MatrixXcd> perturb;
    for (int i = 0; i < rep.queries; ++i) {
      MatrixXcd a(od, od);
      for (Eigen::Index r = 0; r < od; ++r)
        for (Eigen::Index c = 0; c < od; ++c) a(r, c) = cplx(rng.normal(), rng.normal());
      MatrixXcd g = 0.5 * (a + a.adjoint());
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
      const double gn = es.eigenvalues().cwiseAbs().maxCoeff();
      VectorXcd ph(od);
      for (Eigen::Index r = 0; r < od; ++r) ph[r] = std::polar(1.0, eps_o * es.eigenvalues()[r] / gn);
      perturb.push_back(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
    }
    const double err =
        spectral_norm(circuit.unitary(&perturb).topLeftCorner(ds, ds) - target);
    rep.errors.push_back(err);
    rep.max_error = std::max(rep.max_error, err);
    if (err > rep.bound + 1e-12) rep.pass = false;
  }
  return rep;
}

}  // namespace fragqite
