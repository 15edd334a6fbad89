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

#include "qcomb/pauli.h"

#include <cctype>

namespace qcomb {

namespace {

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

size_t pow4(size_t n) {
    return size_t{1} << (2 * n);
}

// Columns are |G_i>> = (G_i (x) I)|Phi+>, i.e. row-major vec(G_i).
ComplexMatrix vectorized_basis(size_t n_qubits) {
    const size_t d = size_t{1} << n_qubits;
    const auto dd = static_cast<Eigen::Index>(d * d);
    auto basis = pauli_basis(n_qubits);
    ComplexMatrix b(dd, static_cast<Eigen::Index>(basis.size()));
    for (size_t i = 0; i < basis.size(); i++) {
        for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(d); r++) {
            for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(d); c++) {
                b(r * static_cast<Eigen::Index>(d) + c, static_cast<Eigen::Index>(i)) = basis[i](r, c);
            }
        }
    }
    return b;
}

void require_choi_shape(const ComplexMatrix &choi, size_t n_qubits) {
    const size_t d = size_t{1} << n_qubits;
    if (choi.rows() != static_cast<Eigen::Index>(d * d) || choi.cols() != choi.rows()) {
        throw std::invalid_argument("Choi matrix does not match " + std::to_string(n_qubits) + " qubits");
    }
}

}  // namespace

PauliString PauliString::from_index(size_t index, size_t n_qubits) {
    if (index >= pow4(n_qubits)) {
        throw std::invalid_argument("Pauli index out of range");
    }
    std::vector<Pauli> letters(n_qubits);
    for (size_t k = n_qubits; k-- > 0;) {
        letters[k] = static_cast<Pauli>(index & 3);
        index >>= 2;
    }
    return PauliString(std::move(letters));
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> letters;
    letters.reserve(text.size());
    for (char ch : text) {
        switch (std::toupper(static_cast<unsigned char>(ch))) {
            case 'I':
                letters.push_back(Pauli::I);
                break;
            case 'X':
                letters.push_back(Pauli::X);
                break;
            case 'Y':
                letters.push_back(Pauli::Y);
                break;
            case 'Z':
                letters.push_back(Pauli::Z);
                break;
            default:
                throw std::invalid_argument("not a Pauli string: '" + std::string(text) + "'");
        }
    }
    return PauliString(std::move(letters));
}

size_t PauliString::index() const {
    size_t idx = 0;
    for (Pauli p : letters_) {
        idx = idx * 4 + static_cast<size_t>(p);
    }
    return idx;
}

std::string PauliString::str() const {
    std::string s;
    for (Pauli p : letters_) {
        s.push_back(kLetters[static_cast<size_t>(p)]);
    }
    return s;
}

ComplexMatrix pauli_matrix(Pauli p) {
    ComplexMatrix m(2, 2);
    const cplx i(0, 1);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

ComplexMatrix pauli_matrix(const PauliString &s) {
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (Pauli p : s.letters()) {
        out = tensor(out, pauli_matrix(p));
    }
    return out;
}

ComplexMatrix pauli_matrix(size_t index, size_t n_qubits) {
    return pauli_matrix(PauliString::from_index(index, n_qubits));
}

std::vector<ComplexMatrix> pauli_basis(size_t n_qubits) {
    std::vector<ComplexMatrix> out;
    out.reserve(pow4(n_qubits));
    for (size_t k = 0; k < pow4(n_qubits); k++) {
        out.push_back(pauli_matrix(k, n_qubits));
    }
    return out;
}

std::vector<std::string> pauli_labels(size_t n_qubits) {
    std::vector<std::string> out;
    out.reserve(pow4(n_qubits));
    for (size_t k = 0; k < pow4(n_qubits); k++) {
        out.push_back(PauliString::from_index(k, n_qubits).str());
    }
    return out;
}

size_t qubit_count(size_t d) {
    if (d == 0 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("dimension " + std::to_string(d) + " is not a power of two");
    }
    size_t n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    return n;
}

ChiMatrix chi_from_choi(const ComplexMatrix &choi, size_t n_qubits) {
    require_choi_shape(choi, n_qubits);
    const double d = static_cast<double>(size_t{1} << n_qubits);
    ComplexMatrix b = vectorized_basis(n_qubits);
    return {b.adjoint() * choi * b / (d * d), n_qubits};
}

ComplexMatrix choi_from_chi(const ChiMatrix &chi) {
    const auto n = static_cast<Eigen::Index>(pow4(chi.n_qubits));
    if (chi.matrix.rows() != n || chi.matrix.cols() != n) {
        throw std::invalid_argument("chi matrix does not match its qubit count");
    }
    ComplexMatrix b = vectorized_basis(chi.n_qubits);
    return b * chi.matrix * b.adjoint();
}

RealMatrix ptm_from_choi(const ComplexMatrix &choi, size_t n_qubits) {
    require_choi_shape(choi, n_qubits);
    const size_t d = size_t{1} << n_qubits;
    const auto di = static_cast<Eigen::Index>(d);
    auto basis = pauli_basis(n_qubits);
    const auto n = static_cast<Eigen::Index>(basis.size());
    RealMatrix r(n, n);
    for (Eigen::Index b = 0; b < n; b++) {
        // map(G_b)(i, j) = sum_{x,y} choi((i,x),(j,y)) G_b(x, y)
        ComplexMatrix out = ComplexMatrix::Zero(di, di);
        const ComplexMatrix &g = basis[static_cast<size_t>(b)];
        for (Eigen::Index x = 0; x < di; x++) {
            for (Eigen::Index y = 0; y < di; y++) {
                if (g(x, y) == cplx(0.0)) {
                    continue;
                }
                for (Eigen::Index i = 0; i < di; i++) {
                    for (Eigen::Index j = 0; j < di; j++) {
                        out(i, j) += choi(i * di + x, j * di + y) * g(x, y);
                    }
                }
            }
        }
        for (Eigen::Index a = 0; a < n; a++) {
            r(a, b) = (basis[static_cast<size_t>(a)].cwiseProduct(out.transpose())).sum().real() /
                      static_cast<double>(d);
        }
    }
    return r;
}

ComplexMatrix choi_from_ptm(const RealMatrix &ptm, size_t n_qubits) {
    const auto n = static_cast<Eigen::Index>(pow4(n_qubits));
    if (ptm.rows() != n || ptm.cols() != n) {
        throw std::invalid_argument("PTM does not match its qubit count");
    }
    const double d = static_cast<double>(size_t{1} << n_qubits);
    auto basis = pauli_basis(n_qubits);
    const auto dd = static_cast<Eigen::Index>(d * d);
    ComplexMatrix choi = ComplexMatrix::Zero(dd, dd);
    // choi = sum_ab R(a,b)/d * G_a (x) G_b^T
    for (Eigen::Index b = 0; b < n; b++) {
        ComplexMatrix left = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (Eigen::Index a = 0; a < n; a++) {
            if (ptm(a, b) != 0.0) {
                left += ptm(a, b) * basis[static_cast<size_t>(a)];
            }
        }
        choi += tensor(left, ComplexMatrix(basis[static_cast<size_t>(b)].transpose())) / d;
    }
    return choi;
}

ChiMatrix chi_from_ptm(const RealMatrix &ptm, size_t n_qubits) {
    return chi_from_choi(choi_from_ptm(ptm, n_qubits), n_qubits);
}

double off_diagonal_mass(const ChiMatrix &chi) {
    double total = 0;
    for (Eigen::Index i = 0; i < chi.matrix.rows(); i++) {
        for (Eigen::Index j = 0; j < chi.matrix.cols(); j++) {
            if (i != j) {
                total += std::abs(chi.matrix(i, j));
            }
        }
    }
    return total;
}

}  // namespace qcomb
