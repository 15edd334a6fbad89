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

#ifndef QCOMB_CHANNEL_H
#define QCOMB_CHANNEL_H

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcomb/linalg.h"
#include "qcomb/pauli.h"

namespace qcomb {

inline constexpr double kChannelTol = 1e-9;

/// A CPTP map stored as its Choi matrix
///
///     J = sum_ab E(|a><b|) (x) |a><b|
///
/// i.e. wire order (output, input) and unnormalized |Phi+>. Tr J = d_in.
class Channel {
  public:
    /// Validates complete positivity and trace preservation within `tol`.
    Channel(ComplexMatrix choi, size_t d_in, size_t d_out, double tol = kChannelTol);

    static Channel from_kraus(std::span<const ComplexMatrix> kraus, double tol = kChannelTol);

    const ComplexMatrix &choi() const {
        return choi_;
    }
    size_t d_in() const {
        return d_in_;
    }
    size_t d_out() const {
        return d_out_;
    }

    /// Kraus operators from the Choi eigendecomposition (rank-truncated).
    std::vector<ComplexMatrix> kraus(double tol = 1e-12) const;

  private:
    ComplexMatrix choi_;
    size_t d_in_;
    size_t d_out_;
};

/// Choi matrix of X -> sum_k K_k X K_k^dagger with no CP/TP checks.
ComplexMatrix choi_from_kraus(std::span<const ComplexMatrix> kraus);

/// E(op) for a Choi matrix in (output, input) order. `op` is any d_in x d_in
/// operator; no validation beyond shapes.
ComplexMatrix apply_choi(const ComplexMatrix &choi, size_t d_in, size_t d_out, const ComplexMatrix &op);

/// Validates `state` as a density matrix and applies the channel.
ComplexMatrix apply(const Channel &c, const ComplexMatrix &state);
/// Applies the channel to an arbitrary operator (linear extension).
ComplexMatrix apply_linear(const Channel &c, const ComplexMatrix &op);

/// Applies a map (given by its Choi matrix) to the selected wires of a
/// multi-wire operator. The map must preserve dimension (d_in == d_out).
ComplexMatrix apply_choi_on_wires(
    const ComplexMatrix &choi, const ComplexMatrix &state, std::span<const size_t> dims, std::span<const size_t> wires);

/// later o earlier.
Channel compose(const Channel &later, const Channel &earlier);
ComplexMatrix compose_choi(
    const ComplexMatrix &later, const ComplexMatrix &earlier, size_t d_in, size_t d_mid, size_t d_out);

Channel tensor(const Channel &a, const Channel &b);
/// Choi matrix of a (x) b for maps with square Choi matrices of dims da, db.
ComplexMatrix tensor_choi(const ComplexMatrix &a, size_t da_in, size_t da_out, const ComplexMatrix &b, size_t db_in,
                          size_t db_out);

/// Swaps the two Choi wires: (output, input) <-> (input, output).
ComplexMatrix swap_choi_wires(const ComplexMatrix &choi, size_t first_dim, size_t second_dim);

/// Pauli transfer matrix, R(a, b) = Tr[G_a E(G_b)] / d.
struct PTM {
    RealMatrix matrix;
    size_t n_qubits = 0;
};

PTM to_ptm(const Channel &c);
Channel from_ptm(const PTM &m);

ChiMatrix to_chi(const Channel &c);
/// Rejects non-Hermitian, non-PSD or mis-normalized chi instead of projecting.
Channel from_chi(const ChiMatrix &chi, double tol = kChannelTol);

/// Frobenius distance between Choi matrices.
double choi_distance(const Channel &a, const Channel &b);

namespace channels {

Channel identity(size_t d);
Channel unitary(const ComplexMatrix &u);
/// rho -> (1 - p) rho + p I/d on n qubits.
Channel depolarizing(double p, size_t n_qubits = 1);
/// rho -> sum_s probs[s] G_s rho G_s. `probs` has one entry per Pauli string.
Channel pauli_channel(std::span<const double> probs);
Channel pauli_channel(const std::map<std::string, double> &probs);
/// rho -> Tr(rho) I/d.
Channel completely_depolarizing(size_t d);
Channel amplitude_damping(double gamma);

}  // namespace channels

namespace gates {

ComplexMatrix hadamard();
ComplexMatrix phase();
ComplexMatrix t_gate();
/// exp(-i theta/2 n.sigma) for a unit axis n (normalized here).
ComplexMatrix rotation(double nx, double ny, double nz, double theta);
ComplexMatrix swap(size_t d);

}  // namespace gates

}  // namespace qcomb

#endif
