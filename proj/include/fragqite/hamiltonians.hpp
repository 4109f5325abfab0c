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
#include <utility>
#include <vector>

#include "fragqite/common.hpp"

namespace fragqite {

enum class Axis { X, Y, Z };

/// coefficient · ⊗_{(q, a) ∈ word} σ_a^{(q)}. An empty word is the identity.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<std::pair<int, Axis>> word;
};

enum class HamClass { maxcut, weighted_maxcut, rbm, sk_heisenberg, noninteracting, custom };

std::string to_string(HamClass c);
HamClass ham_class_from_string(const std::string& s);

/// Pauli-sum Hamiltonian. Qubit q is bit q of a computational-basis index.
///
/// After rescaling, the original operator is `energy_scale * H + energy_shift`,
/// so imaginary time transforms as β_rescaled = energy_scale · β_original.
struct HamiltonianSpec {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
  HamClass cls = HamClass::custom;
  std::uint64_t seed = 0;
  double energy_scale = 1.0;
  double energy_shift = 0.0;

  void validate() const;
  bool is_diagonal() const;
};

/// Random instance of an ensemble. Deterministic in (cls, n_qubits, seed).
HamiltonianSpec gen_ensemble(HamClass cls, int n_qubits, std::uint64_t seed);

/// Dense 2^N × 2^N matrix.
MatrixXcd dense_matrix(const HamiltonianSpec& h);

/// Computational-basis energies of a Z-only Hamiltonian.
VectorXd diagonal_energies(const HamiltonianSpec& h);

/// Affine map (H − λ̄)/Δλ sending [lo, hi] to [−1, 1].
HamiltonianSpec rescale(const HamiltonianSpec& h, double lo, double hi);

/// rescale() with the exact extremal eigenvalues of h.
HamiltonianSpec normalize(const HamiltonianSpec& h, int dense_cap = 12);

struct Eigensystem {
  VectorXd values;    // ascending
  MatrixXcd vectors;  // columns; empty when not requested
};

Eigensystem eigensystem(const HamiltonianSpec& h, bool want_vectors = true,
                        int dense_cap = 12);

/// Input state: either the maximally mixed state or a pure state vector.
struct InputState {
  bool maximally_mixed = true;
  VectorXcd vector;

  static InputState mixed() { return {}; }
  static InputState pure(VectorXcd v) { return {false, std::move(v)}; }
  static InputState basis(int n_qubits, std::uint64_t index);
};

/// Eigenvalues with input-state weights. `multiplicity` counts eigenvectors
/// folded into each entry (all ones unless compressed()).
struct Spectrum {
  VectorXd eigenvalues;
  VectorXd overlaps;
  VectorXd multiplicity;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int n_qubits = 0;

  /// o² = total overlap with the ground space.
  double ground_overlap(double tol = 1e-9) const;
  /// Merges eigenvalues closer than tol; weights and multiplicities add.
  Spectrum compressed(double tol = 1e-12) const;
  void validate() const;
};

Spectrum spectrum_from(const Eigensystem& es, const InputState& state, int n_qubits);
Spectrum diagonalize(const HamiltonianSpec& h, const InputState& state, int dense_cap = 12);

/// p_Ψ(β) = Σ_λ o_λ² e^{−2β(λ−λ_min)}.
double success_prob(const Spectrum& s, double beta);

/// β with success_prob(s, β) = target.
double inverse_success_prob(const Spectrum& s, double target);

/// α² Σ_λ e^{−β(λ−λ_min)} / 2^N.
double gibbs_post_selection(const Spectrum& s, double beta, double alpha);

/// F_β(A) = e^{−β(A−λ_min)} for a Hermitian matrix via its eigensystem.
MatrixXcd qite_operator(const Eigensystem& es, double beta, double lambda_min);

}  // namespace fragqite
