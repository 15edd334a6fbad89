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

#ifndef QCOMB_COMB_H
#define QCOMB_COMB_H

#include <cstdint>
#include <span>
#include <vector>

#include "qcomb/channel.h"
#include "qcomb/pauli.h"

namespace qcomb {

/// An M-tooth process (quantum comb) stored as its Choi operator over the
/// wires (in_1, out_1, in_2, out_2, ..., in_M, out_M). Tooth m maps in_m to
/// out_m; the M - 1 slots sit between out_m and in_{m+1}.
///
/// The operator is built by feeding one half of an unnormalized |Phi+> into
/// every tooth input, so the in_m wires hold the reference halves and
/// Tr(choi_op) = d_sys^M for a causal comb.
///
/// Construction checks shapes only; `validate_comb` reports positivity and
/// the causality hierarchy so that invalid combs can be diagnosed.
class Comb {
  public:
    Comb(ComplexMatrix choi_op, size_t teeth, size_t d_sys);

    const ComplexMatrix &choi_op() const {
        return choi_op_;
    }
    size_t teeth() const {
        return teeth_;
    }
    size_t d_sys() const {
        return d_sys_;
    }
    std::vector<size_t> wire_dims() const;
    /// Labels "in1", "out1", ..., "inM", "outM".
    WireLayout layout() const;

  private:
    ComplexMatrix choi_op_;
    size_t teeth_;
    size_t d_sys_;
};

/// Explicit system-environment dilation: the environment starts in
/// `env_init`, and tooth m is the joint unitary `interactions[m]` on
/// system (x) environment (system is the slow index).
struct EnvModel {
    size_t d_sys = 2;
    size_t d_env = 1;
    ComplexMatrix env_init;
    std::vector<ComplexMatrix> interactions;

    size_t teeth() const {
        return interactions.size();
    }
    /// Throws std::invalid_argument when the model is malformed.
    void validate(double tol = 1e-9) const;
};

/// Haar-random interactions and a random full-rank environment state.
EnvModel random_env_model(size_t d_sys, size_t d_env, size_t teeth, uint64_t seed);
/// Interactions exp(-i strength H_m) with random H_m normalized to unit
/// operator norm; small strengths give near-identity (invertible) noise.
EnvModel weak_env_model(size_t d_sys, size_t d_env, size_t teeth, double strength, uint64_t seed);

Comb comb_from_env_model(const EnvModel &m);
Comb markovian_comb(std::span<const Channel> teeth);
Comb identity_comb(size_t teeth, size_t d_sys);

struct CombReport {
    bool passes = false;
    bool psd = false;
    double min_eigenvalue = 0;
    /// Trace-norm deviation of level k (index k - 1): at level k the check is
    /// Tr_{out_k} C^(k) = C^(k-1) (x) I_{in_k}, with C^(0) = 1.
    std::vector<double> level_residuals;
    /// |Tr C - d^M|.
    double trace_residual = 0;
};

CombReport validate_comb(const Comb &c, double tol = kChannelTol);
/// Throws NumericalError with the failing residuals when invalid.
void require_valid_comb(const Comb &c, double tol = kChannelTol);

/// Channel from M input registers (in_1..in_M) to M output registers
/// (out_1..out_M). A pure regrouping of the comb's wires.
Channel choi_channel(const Comb &c);
/// Choi channel followed by the inverse cyclic register permutation, so
/// output register 1 holds out_M and register m + 1 holds out_m.
Channel slot_channel(const Comb &c);

/// Unitary channel on `registers` registers of dimension d moving register m
/// to register m - 1 and register 1 to register `registers` (inverse = the
/// opposite rotation).
Channel cyclic_register_permutation(size_t registers, size_t d, bool inverse = false);

/// Output of the noisy circuit: tooth 1, layers[0], tooth 2, ..., tooth M.
/// Contracts the comb operator with the input and each layer's Choi matrix.
ComplexMatrix apply_comb(const Comb &c, std::span<const Channel> layers, const ComplexMatrix &input);

/// Same contraction without validation. `layer_chois` are Choi matrices in
/// (output, input) order of arbitrary linear maps on the system, and `input`
/// may be any operator.
ComplexMatrix contract_comb(const ComplexMatrix &choi_op, size_t teeth, size_t d_sys,
                            std::span<const ComplexMatrix> layer_chois, const ComplexMatrix &input);

/// Output via the slot channel: the input on register 1, each layer's
/// unnormalized Choi state on (register m + 1, reference m), the slot channel
/// on registers 1..M, then <Phi+| on (register m, reference m - 1) for
/// m = 2..M.
ComplexMatrix output_from_slot_channel(
    const Channel &slot, size_t teeth, std::span<const Channel> layers, const ComplexMatrix &input);
/// Output via the Choi channel: composes it with the inverse register
/// permutation (a SWAP for two teeth) and then proceeds as above.
ComplexMatrix output_from_choi_channel(
    const Channel &choi, size_t teeth, std::span<const Channel> layers, const ComplexMatrix &input);

/// (C (x) I)(Phi+^{(1,M+1)} (x) ... (x) Phi+^{(M,2M)}): wires are registers
/// 1..M followed by references M+1..2M. Trace d^M.
ComplexMatrix comb_choi_state(const Comb &c);

/// chi over 2M Pauli indices: rows (i_1..i_M), columns (k_1..k_M), with
///   E[U_1..](rho) = sum chi G_{i_M} ... U_1(G_{i_1} rho G_{k_1}) ... G_{k_M}.
ChiMatrix comb_chi(const Comb &c);

/// Master oracle: explicit density-matrix simulation of system (x)
/// environment with interleaved layers, tracing the environment at the end.
ComplexMatrix simulate_env_model(const EnvModel &m, std::span<const Channel> layers, const ComplexMatrix &input);

/// exp(-i h) for Hermitian h.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix &h);

}  // namespace qcomb

#endif
