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

#ifndef QCOMB_LINALG_H
#define QCOMB_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/// Dense operator algebra over multi-wire registers.
///
/// Index convention used everywhere in qcomb: in a tensor product the
/// leftmost factor is the slowest-varying index. A register with wire
/// dimensions (d0, d1, ..., dk) has linear index
/// i = ((i0 * d1 + i1) * d2 + i2) ... .
namespace qcomb {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when an input is well-formed but numerically or physically invalid
/// (a non-CP Choi matrix, a singular transfer matrix, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenTol = 1e-9;

/// Named subsystems of a register, in tensor order.
class WireLayout {
  public:
    WireLayout() = default;
    WireLayout(std::vector<size_t> dims, std::vector<std::string> labels);

    const std::vector<size_t> &dims() const {
        return dims_;
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    size_t size() const {
        return dims_.size();
    }
    size_t total_dim() const;
    size_t index_of(const std::string &label) const;
    std::vector<size_t> indices_of(std::span<const std::string> labels) const;

    bool operator==(const WireLayout &other) const = default;

  private:
    std::vector<size_t> dims_;
    std::vector<std::string> labels_;
};

size_t product(std::span<const size_t> dims);

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
ComplexMatrix identity(size_t d);

/// Reduced operator on `keep` (wire indices), in their original relative
/// order. Wires of dimension 1 are allowed here.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix &m, const WireLayout &layout, std::span<const std::string> keep);

/// Reorders subsystems: wire `perm[k]` of the input becomes wire k of the
/// output. Equivalent to conjugation by the permutation unitary.
ComplexMatrix permute_wires(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> perm);
ComplexMatrix permute_wires(const ComplexMatrix &m, const WireLayout &layout, std::span<const std::string> new_order);

/// Dimensions after applying `perm`.
std::vector<size_t> permuted_dims(std::span<const size_t> dims, std::span<const size_t> perm);
std::vector<size_t> inverse_permutation(std::span<const size_t> perm);

/// Unnormalized |Phi+> = sum_i |ii>, as a column vector of dimension d*d.
ComplexVector max_entangled(size_t d);
/// |Phi+><Phi+| (unnormalized).
ComplexMatrix max_entangled_projector(size_t d);

struct PsdReport {
    bool is_psd;
    double min_eigenvalue;
};

/// Requires `m` Hermitian within kHermitianTol relative to its Frobenius norm.
/// PSD means min eigenvalue >= -tol * |Tr m|.
PsdReport psd_check(const ComplexMatrix &m, double tol = kEigenTol);

bool is_square(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double rel_tol = kHermitianTol);
bool is_unitary(const ComplexMatrix &m, double tol = 1e-10);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Validates a density matrix: square of dimension d, Hermitian, unit trace,
/// PSD, each within tol. Throws std::invalid_argument otherwise.
void require_density_matrix(const ComplexMatrix &rho, size_t d, double tol = 1e-9);

/// Conjugates the chosen wires of `state` by `u` (dimension = product of the
/// wire dims, in the order given by `wires`).
ComplexMatrix apply_unitary_on_wires(
    const ComplexMatrix &u, const ComplexMatrix &state, std::span<const size_t> dims, std::span<const size_t> wires);

}  // namespace qcomb

#endif
