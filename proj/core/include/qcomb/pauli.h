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

#ifndef QCOMB_PAULI_H
#define QCOMB_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcomb/linalg.h"

/// Shared Pauli-basis enumeration. Every module that indexes Paulis goes
/// through here so the basis order cannot drift.
///
/// Order: I < X < Y < Z per qubit; multi-qubit strings are lexicographic with
/// the leftmost qubit slowest, so index("XZ") = 1 * 4 + 3.
namespace qcomb {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    }

    static PauliString from_index(size_t index, size_t n_qubits);
    /// Accepts letters from "IXYZ" (case-insensitive).
    static PauliString parse(std::string_view text);

    size_t index() const;
    size_t n_qubits() const {
        return letters_.size();
    }
    const std::vector<Pauli> &letters() const {
        return letters_;
    }
    std::string str() const;

    bool operator==(const PauliString &) const = default;

  private:
    std::vector<Pauli> letters_;
};

ComplexMatrix pauli_matrix(Pauli p);
ComplexMatrix pauli_matrix(const PauliString &s);
ComplexMatrix pauli_matrix(size_t index, size_t n_qubits);

/// All 4^n Pauli matrices in basis order.
std::vector<ComplexMatrix> pauli_basis(size_t n_qubits);
std::vector<std::string> pauli_labels(size_t n_qubits);

/// Number of qubits n with 2^n == d; throws std::invalid_argument otherwise.
size_t qubit_count(size_t d);

/// chi-matrix of a linear map: map(rho) = sum_ij chi(i,j) G_i rho G_j.
struct ChiMatrix {
    ComplexMatrix matrix;
    size_t n_qubits = 0;

    std::vector<std::string> basis_labels() const {
        return pauli_labels(n_qubits);
    }
};

/// Conversions between a map's Choi matrix (output (x) input, unnormalized
/// |Phi+>), its chi-matrix, and its Pauli transfer matrix
/// R(a, b) = Tr[G_a map(G_b)] / d. All are linear and exact inverses of each
/// other; no CP/TP assumptions are made here.
ChiMatrix chi_from_choi(const ComplexMatrix &choi, size_t n_qubits);
ComplexMatrix choi_from_chi(const ChiMatrix &chi);
ChiMatrix chi_from_ptm(const RealMatrix &ptm, size_t n_qubits);
RealMatrix ptm_from_choi(const ComplexMatrix &choi, size_t n_qubits);
ComplexMatrix choi_from_ptm(const RealMatrix &ptm, size_t n_qubits);

/// Sum of |chi(i, j)| over i != j.
double off_diagonal_mass(const ChiMatrix &chi);

}  // namespace qcomb

#endif
