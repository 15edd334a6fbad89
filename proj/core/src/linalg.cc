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

#include "qcomb/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qcomb {

namespace {

// Maps each linear index of the permuted register to the original one.
std::vector<size_t> permutation_index_map(std::span<const size_t> dims, std::span<const size_t> perm) {
    const size_t n = dims.size();
    std::vector<size_t> old_strides(n, 1);
    for (size_t k = n; k-- > 1;) {
        old_strides[k - 1] = old_strides[k] * dims[k];
    }
    std::vector<size_t> new_dims = permuted_dims(dims, perm);
    const size_t total = product(dims);

    std::vector<size_t> map(total);
    std::vector<size_t> digits(n, 0);
    for (size_t idx = 0; idx < total; idx++) {
        size_t old = 0;
        for (size_t k = 0; k < n; k++) {
            old += digits[k] * old_strides[perm[k]];
        }
        map[idx] = old;
        for (size_t k = n; k-- > 0;) {
            if (++digits[k] < new_dims[k]) {
                break;
            }
            digits[k] = 0;
        }
    }
    return map;
}

void require_square_dims(const ComplexMatrix &m, std::span<const size_t> dims) {
    if (!is_square(m)) {
        throw std::invalid_argument("operator must be square");
    }
    if (product(dims) != static_cast<size_t>(m.rows())) {
        throw std::invalid_argument(
            "wire dimensions multiply to " + std::to_string(product(dims)) + " but operator has dimension " +
            std::to_string(m.rows()));
    }
}

void require_permutation(std::span<const size_t> perm, size_t n) {
    if (perm.size() != n) {
        throw std::invalid_argument("permutation length does not match number of wires");
    }
    std::vector<bool> seen(n, false);
    for (size_t p : perm) {
        if (p >= n || seen[p]) {
            throw std::invalid_argument("wire permutation is not a bijection");
        }
        seen[p] = true;
    }
}

}  // namespace

WireLayout::WireLayout(std::vector<size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.size() != labels_.size()) {
        throw std::invalid_argument("wire layout needs one label per dimension");
    }
    for (size_t d : dims_) {
        if (d < 2) {
            throw std::invalid_argument("wire dimensions must be at least 2");
        }
    }
    std::set<std::string> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size()) {
        throw std::invalid_argument("wire labels must be unique");
    }
}

size_t WireLayout::total_dim() const {
    return product(dims_);
}

size_t WireLayout::index_of(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown wire label '" + label + "'");
    }
    return static_cast<size_t>(it - labels_.begin());
}

std::vector<size_t> WireLayout::indices_of(std::span<const std::string> labels) const {
    std::vector<size_t> out;
    out.reserve(labels.size());
    for (const auto &l : labels) {
        out.push_back(index_of(l));
    }
    return out;
}

size_t product(std::span<const size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (const auto &f : factors) {
        out = tensor(out, f);
    }
    return out;
}

ComplexMatrix identity(size_t d) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

std::vector<size_t> permuted_dims(std::span<const size_t> dims, std::span<const size_t> perm) {
    std::vector<size_t> out(perm.size());
    for (size_t k = 0; k < perm.size(); k++) {
        out[k] = dims[perm[k]];
    }
    return out;
}

std::vector<size_t> inverse_permutation(std::span<const size_t> perm) {
    std::vector<size_t> inv(perm.size());
    for (size_t k = 0; k < perm.size(); k++) {
        inv[perm[k]] = k;
    }
    return inv;
}

ComplexMatrix permute_wires(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> perm) {
    require_square_dims(m, dims);
    require_permutation(perm, dims.size());
    auto map = permutation_index_map(dims, perm);
    const auto n = static_cast<Eigen::Index>(map.size());
    ComplexMatrix out(n, n);
    for (Eigen::Index c = 0; c < n; c++) {
        for (Eigen::Index r = 0; r < n; r++) {
            out(r, c) = m(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c]));
        }
    }
    return out;
}

ComplexMatrix permute_wires(const ComplexMatrix &m, const WireLayout &layout, std::span<const std::string> new_order) {
    auto perm = layout.indices_of(new_order);
    return permute_wires(m, layout.dims(), perm);
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const size_t> dims, std::span<const size_t> keep) {
    require_square_dims(m, dims);
    std::vector<bool> kept(dims.size(), false);
    for (size_t k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw std::invalid_argument("partial trace keep-set has an invalid or repeated wire");
        }
        kept[k] = true;
    }
    std::vector<size_t> keep_sorted(keep.begin(), keep.end());
    std::sort(keep_sorted.begin(), keep_sorted.end());

    std::vector<size_t> perm = keep_sorted;
    for (size_t k = 0; k < dims.size(); k++) {
        if (!kept[k]) {
            perm.push_back(k);
        }
    }
    ComplexMatrix p = permute_wires(m, dims, perm);

    size_t dk = 1;
    for (size_t k : keep_sorted) {
        dk *= dims[k];
    }
    const auto kd = static_cast<Eigen::Index>(dk);
    const auto td = static_cast<Eigen::Index>(product(dims) / dk);
    ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
    for (Eigen::Index a = 0; a < kd; a++) {
        for (Eigen::Index b = 0; b < kd; b++) {
            cplx s = 0;
            for (Eigen::Index t = 0; t < td; t++) {
                s += p(a * td + t, b * td + t);
            }
            out(a, b) = s;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const WireLayout &layout, std::span<const std::string> keep) {
    auto idx = layout.indices_of(keep);
    return partial_trace(m, layout.dims(), idx);
}

ComplexVector max_entangled(size_t d) {
    if (d < 2) {
        throw std::invalid_argument("maximally entangled state needs dimension >= 2");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
    for (size_t i = 0; i < d; i++) {
        v(static_cast<Eigen::Index>(i * d + i)) = 1.0;
    }
    return v;
}

ComplexMatrix max_entangled_projector(size_t d) {
    ComplexVector v = max_entangled(d);
    return v * v.adjoint();
}

bool is_square(const ComplexMatrix &m) {
    return m.rows() == m.cols();
}

bool is_hermitian(const ComplexMatrix &m, double rel_tol) {
    if (!is_square(m)) {
        return false;
    }
    double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (!is_square(m)) {
        return false;
    }
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

PsdReport psd_check(const ComplexMatrix &m, double tol) {
    if (!is_square(m)) {
        throw std::invalid_argument("psd_check needs a square matrix");
    }
    if (!is_hermitian(m)) {
        throw std::invalid_argument("psd_check needs a Hermitian matrix");
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    double min_ev = es.eigenvalues().minCoeff();
    double scale = std::max(std::abs(h.trace().real()), 1.0);
    return {min_ev >= -tol * scale, min_ev};
}

double trace_norm(const ComplexMatrix &m) {
    if (is_hermitian(m, 1e-13)) {
        ComplexMatrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return 0.5 * trace_norm(a - b);
}

void require_density_matrix(const ComplexMatrix &rho, size_t d, double tol) {
    if (!is_square(rho) || static_cast<size_t>(rho.rows()) != d) {
        throw std::invalid_argument("state must be a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    if (!is_hermitian(rho, tol)) {
        throw std::invalid_argument("state is not Hermitian");
    }
    if (std::abs(rho.trace() - cplx(1.0)) > tol) {
        throw std::invalid_argument("state does not have unit trace");
    }
    if (!psd_check(rho, tol).is_psd) {
        throw std::invalid_argument("state is not positive semidefinite");
    }
}

ComplexMatrix apply_unitary_on_wires(
    const ComplexMatrix &u, const ComplexMatrix &state, std::span<const size_t> dims, std::span<const size_t> wires) {
    require_square_dims(state, dims);
    std::vector<size_t> perm(wires.begin(), wires.end());
    std::vector<bool> used(dims.size(), false);
    for (size_t w : wires) {
        if (w >= dims.size() || used[w]) {
            throw std::invalid_argument("invalid target wire list");
        }
        used[w] = true;
    }
    for (size_t k = 0; k < dims.size(); k++) {
        if (!used[k]) {
            perm.push_back(k);
        }
    }
    size_t dt = 1;
    for (size_t w : wires) {
        dt *= dims[w];
    }
    if (static_cast<size_t>(u.rows()) != dt || !is_square(u)) {
        throw std::invalid_argument("unitary dimension does not match target wires");
    }

    const bool identity_perm = std::is_sorted(perm.begin(), perm.end());
    ComplexMatrix x = identity_perm ? state : permute_wires(state, dims, perm);
    const auto d = static_cast<Eigen::Index>(dt);
    const auto r = x.rows() / d;

    // (U (x) I_r) X (U (x) I_r)^dagger, done block-row-wise then via adjoint.
    auto left = [&](const ComplexMatrix &in) {
        ComplexMatrix out = ComplexMatrix::Zero(in.rows(), in.cols());
        for (Eigen::Index a = 0; a < d; a++) {
            for (Eigen::Index b = 0; b < d; b++) {
                if (u(a, b) != cplx(0.0)) {
                    out.middleRows(a * r, r) += u(a, b) * in.middleRows(b * r, r);
                }
            }
        }
        return out;
    };
    ComplexMatrix y = left(left(x).adjoint()).adjoint();

    if (identity_perm) {
        return y;
    }
    auto pdims = permuted_dims(dims, perm);
    auto inv = inverse_permutation(perm);
    return permute_wires(y, pdims, inv);
}

}  // namespace qcomb
