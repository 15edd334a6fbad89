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

#include "qcomb/channel.h"

#include <cmath>

namespace qcomb {

namespace {

using Idx = Eigen::Index;

Idx ix(size_t v) {
    return static_cast<Idx>(v);
}

void require_pauli_probabilities(std::span<const double> probs) {
    double total = 0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("Pauli probabilities must lie in [0, 1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("Pauli probabilities must sum to 1");
    }
}

}  // namespace

Channel::Channel(ComplexMatrix choi, size_t d_in, size_t d_out, double tol)
    : choi_(std::move(choi)), d_in_(d_in), d_out_(d_out) {
    if (d_in == 0 || d_out == 0) {
        throw std::invalid_argument("channel dimensions must be positive");
    }
    if (choi_.rows() != ix(d_in * d_out) || choi_.cols() != choi_.rows()) {
        throw std::invalid_argument("Choi matrix shape does not match channel dimensions");
    }
    if (!is_hermitian(choi_, tol)) {
        throw std::invalid_argument("Choi matrix is not Hermitian (map is not Hermiticity preserving)");
    }
    auto psd = psd_check(choi_, tol);
    if (!psd.is_psd) {
        throw std::invalid_argument(
            "Choi matrix is not positive semidefinite (min eigenvalue " + std::to_string(psd.min_eigenvalue) + ")");
    }
    std::vector<size_t> dims{d_out, d_in};
    std::vector<size_t> keep{1};
    ComplexMatrix marginal = partial_trace(choi_, dims, keep);
    double tp_residual = (marginal - identity(d_in)).cwiseAbs().maxCoeff();
    if (tp_residual > tol * static_cast<double>(std::max<size_t>(d_in, 1))) {
        throw std::invalid_argument("map is not trace preserving (residual " + std::to_string(tp_residual) + ")");
    }
}

Channel Channel::from_kraus(std::span<const ComplexMatrix> kraus, double tol) {
    if (kraus.empty()) {
        throw std::invalid_argument("Kraus list is empty");
    }
    const Idx rows = kraus[0].rows();
    const Idx cols = kraus[0].cols();
    ComplexMatrix completeness = ComplexMatrix::Zero(cols, cols);
    for (const auto &k : kraus) {
        if (k.rows() != rows || k.cols() != cols) {
            throw std::invalid_argument("Kraus operators have inconsistent shapes");
        }
        completeness += k.adjoint() * k;
    }
    if ((completeness - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("Kraus operators are not trace preserving");
    }
    return Channel(choi_from_kraus(kraus), static_cast<size_t>(cols), static_cast<size_t>(rows), tol);
}

std::vector<ComplexMatrix> Channel::kraus(double tol) const {
    ComplexMatrix h = 0.5 * (choi_ + choi_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    std::vector<ComplexMatrix> out;
    const double scale = std::max(h.trace().real(), 1.0);
    for (Idx k = es.eigenvalues().size(); k-- > 0;) {
        double lam = es.eigenvalues()(k);
        if (lam <= tol * scale) {
            continue;
        }
        ComplexMatrix op(ix(d_out_), ix(d_in_));
        for (Idx o = 0; o < ix(d_out_); o++) {
            for (Idx i = 0; i < ix(d_in_); i++) {
                op(o, i) = std::sqrt(lam) * es.eigenvectors()(o * ix(d_in_) + i, k);
            }
        }
        out.push_back(std::move(op));
    }
    return out;
}

ComplexMatrix choi_from_kraus(std::span<const ComplexMatrix> kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("Kraus list is empty");
    }
    const Idx rows = kraus[0].rows();
    const Idx cols = kraus[0].cols();
    ComplexMatrix choi = ComplexMatrix::Zero(rows * cols, rows * cols);
    for (const auto &k : kraus) {
        // (K (x) I)|Phi+> is the row-major vec of K.
        ComplexVector v(rows * cols);
        for (Idx o = 0; o < rows; o++) {
            for (Idx i = 0; i < cols; i++) {
                v(o * cols + i) = k(o, i);
            }
        }
        choi += v * v.adjoint();
    }
    return choi;
}

ComplexMatrix apply_choi(const ComplexMatrix &choi, size_t d_in, size_t d_out, const ComplexMatrix &op) {
    if (op.rows() != ix(d_in) || op.cols() != ix(d_in)) {
        throw std::invalid_argument("operator dimension does not match map input dimension");
    }
    const Idx di = ix(d_in);
    const Idx dout = ix(d_out);
    ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
    for (Idx x = 0; x < di; x++) {
        for (Idx y = 0; y < di; y++) {
            const cplx v = op(x, y);
            if (v == cplx(0.0)) {
                continue;
            }
            for (Idx i = 0; i < dout; i++) {
                for (Idx j = 0; j < dout; j++) {
                    out(i, j) += choi(i * di + x, j * di + y) * v;
                }
            }
        }
    }
    return out;
}

ComplexMatrix apply(const Channel &c, const ComplexMatrix &state) {
    require_density_matrix(state, c.d_in());
    return apply_choi(c.choi(), c.d_in(), c.d_out(), state);
}

ComplexMatrix apply_linear(const Channel &c, const ComplexMatrix &op) {
    return apply_choi(c.choi(), c.d_in(), c.d_out(), op);
}

ComplexMatrix apply_choi_on_wires(
    const ComplexMatrix &choi, const ComplexMatrix &state, std::span<const size_t> dims, std::span<const size_t> wires) {
    std::vector<size_t> perm(wires.begin(), wires.end());
    std::vector<bool> used(dims.size(), false);
    size_t d = 1;
    for (size_t w : wires) {
        if (w >= dims.size() || used[w]) {
            throw std::invalid_argument("invalid target wire list");
        }
        used[w] = true;
        d *= dims[w];
    }
    for (size_t k = 0; k < dims.size(); k++) {
        if (!used[k]) {
            perm.push_back(k);
        }
    }
    if (choi.rows() != ix(d * d) || choi.cols() != choi.rows()) {
        throw std::invalid_argument("map dimension does not match target wires");
    }
    const bool trivial = std::is_sorted(perm.begin(), perm.end());
    ComplexMatrix x = trivial ? state : permute_wires(state, dims, perm);
    const Idx dd = ix(d);
    const Idx r = x.rows() / dd;
    ComplexMatrix y = ComplexMatrix::Zero(x.rows(), x.cols());
    for (Idx a = 0; a < dd; a++) {
        for (Idx b = 0; b < dd; b++) {
            auto block = x.block(a * r, b * r, r, r);
            if (block.cwiseAbs().maxCoeff() == 0.0) {
                continue;
            }
            for (Idx i = 0; i < dd; i++) {
                for (Idx j = 0; j < dd; j++) {
                    const cplx w = choi(i * dd + a, j * dd + b);
                    if (w != cplx(0.0)) {
                        y.block(i * r, j * r, r, r) += w * block;
                    }
                }
            }
        }
    }
    if (trivial) {
        return y;
    }
    auto pdims = permuted_dims(dims, perm);
    auto inv = inverse_permutation(perm);
    return permute_wires(y, pdims, inv);
}

ComplexMatrix compose_choi(
    const ComplexMatrix &later, const ComplexMatrix &earlier, size_t d_in, size_t d_mid, size_t d_out) {
    const Idx di = ix(d_in);
    ComplexMatrix out = ComplexMatrix::Zero(ix(d_out) * di, ix(d_out) * di);
    for (Idx a = 0; a < di; a++) {
        for (Idx b = 0; b < di; b++) {
            ComplexMatrix basis = ComplexMatrix::Zero(di, di);
            basis(a, b) = 1.0;
            ComplexMatrix mid = apply_choi(earlier, d_in, d_mid, basis);
            ComplexMatrix fin = apply_choi(later, d_mid, d_out, mid);
            for (Idx i = 0; i < ix(d_out); i++) {
                for (Idx j = 0; j < ix(d_out); j++) {
                    out(i * di + a, j * di + b) = fin(i, j);
                }
            }
        }
    }
    return out;
}

Channel compose(const Channel &later, const Channel &earlier) {
    if (earlier.d_out() != later.d_in()) {
        throw std::invalid_argument("cannot compose channels with mismatched dimensions");
    }
    return Channel(compose_choi(later.choi(), earlier.choi(), earlier.d_in(), earlier.d_out(), later.d_out()),
                   earlier.d_in(), later.d_out());
}

ComplexMatrix tensor_choi(const ComplexMatrix &a, size_t da_in, size_t da_out, const ComplexMatrix &b, size_t db_in,
                          size_t db_out) {
    ComplexMatrix ab = tensor(a, b);
    std::vector<size_t> dims{da_out, da_in, db_out, db_in};
    std::vector<size_t> perm{0, 2, 1, 3};
    return permute_wires(ab, dims, perm);
}

Channel tensor(const Channel &a, const Channel &b) {
    return Channel(tensor_choi(a.choi(), a.d_in(), a.d_out(), b.choi(), b.d_in(), b.d_out()), a.d_in() * b.d_in(),
                   a.d_out() * b.d_out());
}

ComplexMatrix swap_choi_wires(const ComplexMatrix &choi, size_t first_dim, size_t second_dim) {
    std::vector<size_t> dims{first_dim, second_dim};
    std::vector<size_t> perm{1, 0};
    return permute_wires(choi, dims, perm);
}

PTM to_ptm(const Channel &c) {
    if (c.d_in() != c.d_out()) {
        throw std::invalid_argument("PTM needs equal input and output dimensions");
    }
    size_t n = qubit_count(c.d_in());
    return {ptm_from_choi(c.choi(), n), n};
}

Channel from_ptm(const PTM &m) {
    size_t d = size_t{1} << m.n_qubits;
    return Channel(choi_from_ptm(m.matrix, m.n_qubits), d, d);
}

ChiMatrix to_chi(const Channel &c) {
    if (c.d_in() != c.d_out()) {
        throw std::invalid_argument("chi matrix needs equal input and output dimensions");
    }
    return chi_from_choi(c.choi(), qubit_count(c.d_in()));
}

Channel from_chi(const ChiMatrix &chi, double tol) {
    if (!is_hermitian(chi.matrix, tol)) {
        throw std::invalid_argument("chi matrix is not Hermitian");
    }
    if (!psd_check(chi.matrix, tol).is_psd) {
        throw std::invalid_argument("chi matrix is not positive semidefinite");
    }
    if (std::abs(chi.matrix.trace() - cplx(1.0)) > tol) {
        throw std::invalid_argument("chi matrix diagonal does not sum to 1");
    }
    size_t d = size_t{1} << chi.n_qubits;
    return Channel(choi_from_chi(chi), d, d, tol);
}

double choi_distance(const Channel &a, const Channel &b) {
    if (a.choi().rows() != b.choi().rows()) {
        throw std::invalid_argument("channels have different dimensions");
    }
    return (a.choi() - b.choi()).norm();
}

namespace channels {

Channel identity(size_t d) {
    ComplexMatrix id = qcomb::identity(d);
    return unitary(id);
}

Channel unitary(const ComplexMatrix &u) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("matrix is not unitary");
    }
    std::vector<ComplexMatrix> k{u};
    return Channel::from_kraus(k);
}

Channel depolarizing(double p, size_t n_qubits) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    }
    const size_t count = size_t{1} << (2 * n_qubits);
    std::vector<double> probs(count, p / static_cast<double>(count));
    probs[0] = 1.0 - p + p / static_cast<double>(count);
    return pauli_channel(probs);
}

Channel pauli_channel(std::span<const double> probs) {
    const size_t n = qubit_count(probs.size()) / 2;
    if ((size_t{1} << (2 * n)) != probs.size()) {
        throw std::invalid_argument("Pauli probability table must have 4^n entries");
    }
    require_pauli_probabilities(probs);
    std::vector<ComplexMatrix> kraus;
    for (size_t k = 0; k < probs.size(); k++) {
        if (probs[k] > 0) {
            kraus.push_back(std::sqrt(probs[k]) * pauli_matrix(k, n));
        }
    }
    return Channel::from_kraus(kraus);
}

Channel pauli_channel(const std::map<std::string, double> &probs) {
    if (probs.empty()) {
        throw std::invalid_argument("Pauli probability table is empty");
    }
    const size_t n = probs.begin()->first.size();
    std::vector<double> table(size_t{1} << (2 * n), 0.0);
    for (const auto &[label, p] : probs) {
        auto s = PauliString::parse(label);
        if (s.n_qubits() != n) {
            throw std::invalid_argument("Pauli labels have inconsistent lengths");
        }
        table[s.index()] += p;
    }
    return pauli_channel(table);
}

Channel completely_depolarizing(size_t d) {
    if (d == 0) {
        throw std::invalid_argument("dimension must be positive");
    }
    // J = I_out (x) I_in / d
    return Channel(qcomb::identity(d * d) / static_cast<double>(d), d, d);
}

Channel amplitude_damping(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("damping rate must lie in [0, 1]");
    }
    ComplexMatrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    std::vector<ComplexMatrix> k{k0, k1};
    return Channel::from_kraus(k);
}

}  // namespace channels

namespace gates {

ComplexMatrix hadamard() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

ComplexMatrix phase() {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, cplx(0, 1);
    return s;
}

ComplexMatrix t_gate() {
    ComplexMatrix t(2, 2);
    t << 1, 0, 0, std::polar(1.0, M_PI / 4);
    return t;
}

ComplexMatrix rotation(double nx, double ny, double nz, double theta) {
    double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (norm == 0.0) {
        throw std::invalid_argument("rotation axis must be nonzero");
    }
    ComplexMatrix g = (nx * pauli_matrix(Pauli::X) + ny * pauli_matrix(Pauli::Y) + nz * pauli_matrix(Pauli::Z)) / norm;
    return std::cos(theta / 2) * qcomb::identity(2) - cplx(0, std::sin(theta / 2)) * g;
}

ComplexMatrix swap(size_t d) {
    ComplexMatrix s = ComplexMatrix::Zero(ix(d * d), ix(d * d));
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            s(ix(b * d + a), ix(a * d + b)) = 1.0;
        }
    }
    return s;
}

}  // namespace gates

}  // namespace qcomb
