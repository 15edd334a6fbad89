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

#ifndef QCOMB_PEC_H
#define QCOMB_PEC_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcomb/comb.h"

/// Probabilistic error cancellation for combs.
///
/// The inverse of the comb's Choi channel is computed in Pauli-transfer-
/// matrix space and expanded over tensor products of register-local basis
/// operations, one factor per tooth:
///
///     C^-1 = sum_k alpha_k A_{k_1} (x) ... (x) A_{k_M}.
///
/// In the circuit, factor m acts right after tooth m (before layer m, or at
/// the very end for the last tooth), and the signed mixture is realized by
/// sampling terms with probability |alpha_k| / gamma.
namespace qcomb {

/// A physically implementable single-register operation: completely positive
/// and trace non-increasing (measurement projections are included, their
/// discarded branch contributes zero).
struct BasisOp {
    std::string name;
    ComplexMatrix choi;  // (output, input)
    size_t dim = 2;
};

BasisOp basis_op_from_kraus(std::string name, std::span<const ComplexMatrix> kraus);

struct BasisOpSet {
    std::vector<BasisOp> ops;
};

/// 16 single-qubit operations: I, X, Y, Z; pi/2 rotations about x, y, z,
/// y+z, z+x, x+y; and the projections (I+X)/2, (I+Y)/2, (I+Z)/2,
/// (Y+iZ)/2, (Z+iX)/2, (X+iY)/2 (Z-basis measurement with S and H).
BasisOpSet default_basis();

struct BasisReport {
    size_t rank = 0;
    double condition_number = 0;
    bool physical = true;
    std::vector<std::string> unphysical_ops;
};

/// Rank and condition number of the matrix whose columns are the ops'
/// vectorized PTMs, and CP / trace-non-increasing checks. Throws
/// NumericalError when the ops do not span the full PTM space.
BasisReport verify_basis_completeness(const BasisOpSet &basis, double tol = 1e-9);

enum class PreGateConvention {
    /// A_i acts on the state exactly as its Kraus operators say.
    kDirect,
    /// A_i is replaced by its transpose (Kraus K -> K^T) on registers 1..M-1.
    kTransposed,
};

struct QuasiProbDecomposition {
    std::vector<double> alpha;
    double gamma = 0;
    size_t registers = 0;
    /// Per-register basis (tensor products of the single-qubit set for
    /// multi-qubit registers).
    std::vector<BasisOp> register_ops;
    double condition_number = 0;
    /// Frobenius residual of sum alpha PTM(ops) against the inverse PTM.
    double residual = 0;

    std::vector<size_t> register_indices(size_t k) const;
};

inline constexpr double kMaxPtmCondition = 1e10;

/// Decomposes the inverse of the comb's Choi channel. Throws NumericalError
/// when its PTM condition number exceeds kMaxPtmCondition.
QuasiProbDecomposition decompose_inverse(const Comb &c, const BasisOpSet &basis);
/// Same for an arbitrary channel split into `registers` equal registers.
QuasiProbDecomposition decompose_channel_inverse(const Channel &ch, size_t registers, const BasisOpSet &basis);

/// Re Tr[O rho].
double expectation(const ComplexMatrix &observable, const ComplexMatrix &state);

/// sum_k alpha_k Tr[O A_{k_M}(E[U_1 o A_{k_1}, ...](rho))].
double pec_correct_exact(const Comb &c, const QuasiProbDecomposition &decomposition, std::span<const Channel> layers,
                         const ComplexMatrix &input, const ComplexMatrix &observable,
                         PreGateConvention convention = PreGateConvention::kDirect);

struct PecEstimate {
    double estimate = 0;
    double std_error = 0;
    size_t shots = 0;
};

/// Monte Carlo estimate: each shot picks term k with probability
/// |alpha_k| / gamma, samples a measurement outcome of the observable on the
/// (sub-normalized) output, and records gamma * sign(alpha_k) * outcome.
/// Shot s draws from counter_uniform(seed, s, .) only.
PecEstimate pec_sample(const Comb &c, const QuasiProbDecomposition &decomposition, std::span<const Channel> layers,
                       const ComplexMatrix &input, const ComplexMatrix &observable, size_t shots, uint64_t seed,
                       PreGateConvention convention = PreGateConvention::kDirect);

}  // namespace qcomb

#endif
