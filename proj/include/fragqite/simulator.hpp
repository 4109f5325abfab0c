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
#include <vector>

#include "fragqite/hamiltonians.hpp"
#include "fragqite/qsp.hpp"

namespace fragqite {

enum class Backend { fast, full };

/// Largest system size accepted by the full-ancilla backend.
inline constexpr int kFullBackendMaxQubits = 4;

/// Unitary whose ⟨0|·|0⟩ ancilla block approximates `target`.
/// Basis index = system + 2^N · ancilla, so the block is the top-left corner.
struct BlockEncoding {
  int n_system = 0;
  int n_ancilla = 0;
  MatrixXcd unitary;  // empty for the per-eigenvalue backend
  MatrixXcd block;
  MatrixXcd target;   // αF_β(H) for the QITE primitives
  double alpha = 1.0;
  double declared_error = 0.0;
  int queries = 0;

  /// Spectral norm of block − target.
  double block_error() const;
};

/// Chebyshev primitive: pulses and a per-eigenvalue evaluator.
struct P1Design {
  double beta = 0.0;
  double eps = 0.0;
  int q = 0;
  double scale = 1.0;            // normalization applied to the truncated series
  double realized_error = 0.0;   // grid max of |𝓑 − F_β| over [−1, 1]
  double truncation_bound = 0.0;
  PulseSeq1 pulses;

  int queries() const { return 2 * q; }
  /// ⟨0_λ| block |0_λ⟩ from the qubitized circuit restricted to eigenvalue λ.
  double eval(double lambda) const;
};

/// Fourier primitive on the real-time oracle e^{−iHt}.
struct P2Design {
  double beta = 0.0;
  double eps = 0.0;
  double gamma = 0.0;
  double alpha = 1.0;
  double lambda_min = -1.0;
  PulseSeq2 pulses;

  int queries() const { return pulses.q; }
  double t() const { return pulses.target.t; }
  cplx eval(double lambda) const;
};

/// q = 0 selects cheb_truncation_order(β, ε'). Requires λ_min = −1.
P1Design design_p1(double beta, double eps, int q = 0);

/// Certified Fourier fit plus pulses. Throws NumericalError when either fails.
P2Design design_p2(double beta, double eps, double gamma, double lambda_min = -1.0);

/// A circuit made of fixed unitaries and oracle calls, so that every call can
/// be replaced (e.g. perturbed) independently.
class OracleCircuit {
 public:
  /// `oracle` acts on the lowest log2(oracle.rows()) qubits of a `total_qubits` register.
  OracleCircuit(int total_qubits, MatrixXcd oracle);

  void fixed(const MatrixXcd& u);
  /// Oracle (or inverse) call, optionally controlled on qubit `control` being |1⟩.
  void call(bool dagger, int control = -1);

  int queries() const { return queries_; }
  int dim() const { return 1 << total_qubits_; }
  const MatrixXcd& oracle() const { return oracle_; }

  /// Full unitary. `perturb[i]`, when given, left-multiplies the oracle on call i.
  MatrixXcd unitary(const std::vector<MatrixXcd>* perturb = nullptr) const;

 private:
  struct Step {
    MatrixXcd fixed;
    bool is_call = false;
    bool dagger = false;
    int control = -1;
  };
  int total_qubits_;
  MatrixXcd oracle_;
  std::vector<Step> steps_;
  int queries_ = 0;
};

/// Single-qubit gate on qubit `bit` of an n-qubit register.
MatrixXcd on_qubit(int n_qubits, int bit, const Matrix2cd& g);

/// [[H, √(1−H²)], [√(1−H²), −H]] with the ancilla as the high qubit.
BlockEncoding dilation_encoding(const MatrixXcd& h);

/// Qubitized oracle R_{|0⟩} Z_c C₊(U_H) C₋(U_H†): one extra control qubit, two queries.
BlockEncoding qubitize(const BlockEncoding& uh);

/// For each eigenvector |λ⟩ of H, the eigenphase magnitude of `w` restricted to
/// span{|λ⟩|0⟩, w|λ⟩|0⟩}. `leakage` receives the largest norm leaving that span.
VectorXd invariant_subspace_angles(const MatrixXcd& w, const Eigensystem& es, int n_ancilla,
                                   double* leakage = nullptr);

/// Full-ancilla circuits (system + 3 ancillas for P1, + 1 for P2).
OracleCircuit p1_circuit(const MatrixXcd& h, const PulseSeq1& pulses);
OracleCircuit p2_circuit(const MatrixXcd& h, double t, const PulseSeq2& pulses);

BlockEncoding build_p1(const Eigensystem& es, const P1Design& d, Backend backend = Backend::fast);
BlockEncoding build_p2(const Eigensystem& es, const P2Design& d, Backend backend = Backend::fast);

struct SimResult {
  double post_selection_prob = 0.0;
  VectorXcd output_state;  // empty for mixed input or a zero-probability branch
  double trace_distance_to_ideal = 0.0;
};

/// Heralded action of the block on the input; mixed input is treated as the
/// reduced state of a maximally entangled purification.
SimResult post_select(const BlockEncoding& enc, const InputState& input);

struct OracleCheckReport {
  double eps_o = 0.0;
  int queries = 0;
  double base_error = 0.0;
  double max_error = 0.0;
  double bound = 0.0;
  std::vector<double> errors;
  bool pass = false;
};

/// Replaces every oracle call by e^{iε_O G}·O with G a random unit-norm Hermitian
/// and checks ‖block − target‖ ≤ declared + queries·ε_O in each trial.
OracleCheckReport imperfect_oracle_check(const OracleCircuit& circuit, int n_system,
                                         const MatrixXcd& target, double declared_error,
                                         double eps_o, int trials, std::uint64_t seed);

}  // namespace fragqite
