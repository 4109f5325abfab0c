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

#include <vector>

#include "fragqite/simulator.hpp"

namespace fragqite {

/// Symmetric-subspace (N+1)-dim representation of Σ X_i / (4N).
MatrixXd build_h0(int n);

/// Bit-string instance on span{|j⟩_s} ⊗ write qubit, basis index 2j + p.
struct ParityInstance {
  std::vector<int> bits;
  MatrixXd h;  // H_x, 2(N+1) × 2(N+1)
  int parity = 0;

  int n() const { return static_cast<int>(bits.size()); }
  static int index(int j, int p) { return 2 * j + p; }
};

ParityInstance build_hx(const std::vector<int>& bits);

/// Whether |0⟩_s|0⟩_p reaches |N⟩_s|par⟩_p, but not |N⟩_s|par ⊕ 1⟩_p, in the
/// coupling graph of H_x.
bool parity_connectivity(const ParityInstance& inst);

/// |(1 − e^{−β/(2N)})/2|^N.
double overlap_formula(int n, double beta);

/// |⟨N| F_β(H_0) |0⟩| by matrix exponential, with λ_min(H_0) = −1/4.
double overlap_expm(int n, double beta);

/// Largest N for which overlap_formula(N, β) > 2ε'/α, i.e. ⌊2q̃⌋.
int max_parity_length(double beta, double eps_prime, double alpha = 1.0);

enum class ParityPrimitive {
  ideal,        // block = αF_β(H_x)
  p1,           // simulated Chebyshev primitive on 4H_x at β/4
  adversarial,  // ideal plus the rank-one error of norm ε' that most hurts the guess
};

struct ParityResult {
  double prob_guess[2] = {0.0, 0.0};  // output distribution over {0, 1}
  double success_prob = 0.0;
  double overlap = 0.0;
  double post_selection_prob = 0.0;  // ancilla and |N⟩_s both heralded
  bool condition_holds = false;       // α·overlap > 2ε'
};

/// Exact outcome distribution of the three-measurement parity algorithm.
/// Throws NumericalError if the condition holds and success ≤ 1/2.
ParityResult parity_via_qite(const std::vector<int>& bits, double beta, double eps_prime,
                             double alpha, ParityPrimitive prim);

/// U_x = Σ_j |j⟩⟨j| ⊗ X^{x_j} on the padded register (x_j = 0 for j ≥ N).
MatrixXcd parity_oracle(const std::vector<int>& bits);

/// Block-encoding of H_x = (J₊U_x + U_x J₋)/(4N) from one U_x call, two
/// ladder encodings of J_±/(2N) and an LCU qubit. `block` and `target` are
/// restricted to the 2(N+1) physical states.
BlockEncoding block_encode_hx(const std::vector<int>& bits, int* oracle_calls = nullptr);

}  // namespace fragqite
