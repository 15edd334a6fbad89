// Copyright 2026 The qcomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used to check the library. They are written with
// explicit index loops and full unitaries and share no code with core/ beyond
// the matrix type, so agreement is meaningful.

#ifndef QCOMB_TESTS_ORACLES_H
#define QCOMB_TESTS_ORACLES_H

#include <vector>

#include "qcomb/comb.h"

namespace qcomb::oracle {

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix> &ms);
ComplexMatrix eye(size_t d);

/// Explicit index sum over the traced wires.
ComplexMatrix partial_trace(const ComplexMatrix &m, const std::vector<size_t> &dims, const std::vector<size_t> &keep);

/// Permutation matrix sending wire perm[k] to position k.
ComplexMatrix wire_permutation(const std::vector<size_t> &dims, const std::vector<size_t> &perm);

/// Embeds `u`, acting on the listed (distinct, ascending) wires, into the
/// full space by conjugating with a wire permutation.
ComplexMatrix embed(const ComplexMatrix &u, const std::vector<size_t> &dims, const std::vector<size_t> &wires);

/// SWAP of two wires as a full matrix.
ComplexMatrix swap_wires(const std::vector<size_t> &dims, size_t a, size_t b);

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix> &kraus, const ComplexMatrix &x);

/// sum_ij |i><j| (x) |i><j|.
ComplexMatrix phi_plus(size_t d);

/// Pauli string matrix, qubit 0 leftmost. Built from literal 2x2 matrices.
ComplexMatrix pauli(size_t index, size_t n_qubits);

/// System (x) environment simulation with every step as a full unitary
/// (or Kraus sum for the layers) on the joint space.
ComplexMatrix simulate(const EnvModel &m, const std::vector<std::vector<ComplexMatrix>> &layer_kraus,
                       const ComplexMatrix &input);

/// Comb operator by the SWAP construction: the system starts maximally
/// entangled with reference R_1; after tooth m a SWAP moves the system into
/// a spare wire T_m (which was maximally entangled with R_{m+1}). Wires are
/// returned in the order (R_1, T_1, R_2, T_2, ..., R_M, S).
ComplexMatrix comb_by_swaps(const EnvModel &m);

/// sum over i, k of chi(i, k) G_{i_M} L_{M-1}( ... L_1(G_{i_1} X G_{k_1}) ...) G_{k_M}
/// with L given by Kraus operators.
ComplexMatrix chi_sum(const ComplexMatrix &chi, size_t teeth, size_t n_qubits,
                      const std::vector<std::vector<ComplexMatrix>> &layer_kraus, const ComplexMatrix &input,
                      bool diagonal_only = false);

/// chi(i, k) = <<G_i| J |G_k>> / d^2 for a Choi matrix in (output, input)
/// order with row-major vectorization.
ComplexMatrix chi_of_choi(const ComplexMatrix &choi, size_t n_qubits);

/// Trace norm distance via eigenvalues of the (Hermitian) difference.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace qcomb::oracle

#endif
