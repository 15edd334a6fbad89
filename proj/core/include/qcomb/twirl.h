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

#ifndef QCOMB_TWIRL_H
#define QCOMB_TWIRL_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcomb/comb.h"

namespace qcomb {

inline constexpr double kPauliDiagonalTol = 1e-8;

/// Classically correlated Pauli noise over M teeth: probs[k] is the weight
/// of applying Pauli string i_m at tooth m, where k enumerates the tuple
/// (i_1, ..., i_M) with tooth 1 slowest and each i_m an n-qubit Pauli index.
class PauliDiagTable {
  public:
    /// Requires every entry >= -1e-12 and a total of 1 within 1e-10.
    PauliDiagTable(std::vector<double> probs, size_t teeth, size_t n_qubits);

    const std::vector<double> &probs() const {
        return probs_;
    }
    size_t teeth() const {
        return teeth_;
    }
    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t paulis_per_tooth() const {
        return size_t{1} << (2 * n_qubits_);
    }

    /// Per-tooth Pauli indices of flat entry k.
    std::vector<size_t> tooth_indices(size_t k) const;
    size_t flat_index(std::span<const size_t> tooth_indices) const;
    /// e.g. {"X", "Z"} for tooth 1 = X, tooth 2 = Z.
    std::vector<std::string> labels(size_t k) const;

    /// Marginal distribution of tooth m (0-based).
    std::vector<double> marginal(size_t tooth) const;
    /// Total-variation distance to the product of the marginals.
    double tv_from_product() const;
    /// Sum of marginal entropies minus the joint entropy, in bits (the mutual
    /// information for two teeth).
    double total_correlation() const;
    /// Sum of squared probabilities.
    double purity() const;

  private:
    std::vector<double> probs_;
    size_t teeth_;
    size_t n_qubits_;
};

/// Average of G o c o G over all 4^n Paulis.
Channel twirl_channel(const Channel &c);

/// Exact average over independent per-tooth Paulis: tooth m is conjugated by
/// G_{a_m} (before it on the input and after it on the output).
Comb twirl_comb(const Comb &c);

/// Empirical average over `samples` Pauli tuples. Sample s uses the tuple
/// drawn from counter_uniform(seed, s); with `stratified` the tuples are
/// enumerated cyclically instead, so samples = 4^{nM} reproduces twirl_comb.
Comb sampled_twirl(const Comb &c, size_t samples, uint64_t seed, bool stratified = false);

/// Conjugates a comb by the given per-tooth Pauli tuple.
Comb conjugate_comb_by_paulis(const Comb &c, std::span<const size_t> tooth_paulis);

/// p-table of a Pauli-diagonal comb (the chi diagonal). Throws NumericalError
/// when the off-diagonal chi mass exceeds `off_diagonal_tol`, or when
/// negative entries exceed rounding noise.
PauliDiagTable extract_pauli_diag(const Comb &c, double off_diagonal_tol = kPauliDiagonalTol);

/// Comb implementing sum_k p_k G_{i_M} ... U_1(G_{i_1} rho G_{i_1}) ... G_{i_M}.
Comb pauli_correlated_comb(const PauliDiagTable &table);
/// Dilation of the same comb: a classical environment register labelled by
/// the table's support drives controlled Paulis at each tooth.
EnvModel pauli_correlated_env_model(const PauliDiagTable &table);

/// Direct evaluation of the Pauli-diagonal formula above.
ComplexMatrix apply_pauli_table(const PauliDiagTable &table, std::span<const Channel> layers, const ComplexMatrix &input);

}  // namespace qcomb

#endif
