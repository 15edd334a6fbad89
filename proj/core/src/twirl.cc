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

#include "qcomb/twirl.h"

#include <cmath>

#include "qcomb/random.h"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

size_t ipow(size_t base, size_t exp) {
    size_t r = 1;
    while (exp--) {
        r *= base;
    }
    return r;
}

double entropy_bits(std::span<const double> p) {
    double h = 0;
    for (double x : p) {
        if (x > 0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

// A tensor product of Paulis has exactly one nonzero entry per row.
struct Monomial {
    std::vector<Idx> col;
    std::vector<cplx> val;
};

Monomial to_monomial(const ComplexMatrix &w) {
    Monomial m;
    m.col.resize(static_cast<size_t>(w.rows()));
    m.val.resize(static_cast<size_t>(w.rows()));
    for (Idx r = 0; r < w.rows(); r++) {
        for (Idx c = 0; c < w.cols(); c++) {
            if (w(r, c) != cplx(0.0)) {
                m.col[static_cast<size_t>(r)] = c;
                m.val[static_cast<size_t>(r)] = w(r, c);
                break;
            }
        }
    }
    return m;
}

ComplexMatrix conjugate_monomial(const Monomial &w, const ComplexMatrix &c) {
    const Idx n = c.rows();
    ComplexMatrix out(n, n);
    for (Idx j = 0; j < n; j++) {
        const cplx wc = std::conj(w.val[static_cast<size_t>(j)]);
        const Idx cj = w.col[static_cast<size_t>(j)];
        for (Idx i = 0; i < n; i++) {
            out(i, j) = w.val[static_cast<size_t>(i)] * c(w.col[static_cast<size_t>(i)], cj) * wc;
        }
    }
    return out;
}

Monomial comb_pauli_frame(size_t n_qubits, std::span<const size_t> tooth_paulis) {
    ComplexMatrix w = ComplexMatrix::Ones(1, 1);
    for (size_t a : tooth_paulis) {
        ComplexMatrix g = pauli_matrix(a, n_qubits);
        // (in_m, out_m): the reference half picks up the transpose.
        w = tensor(w, tensor(ComplexMatrix(g.transpose()), g));
    }
    return to_monomial(w);
}

std::vector<size_t> split_index(size_t k, size_t teeth, size_t base) {
    std::vector<size_t> out(teeth);
    for (size_t m = teeth; m-- > 0;) {
        out[m] = k % base;
        k /= base;
    }
    return out;
}

}  // namespace

PauliDiagTable::PauliDiagTable(std::vector<double> probs, size_t teeth, size_t n_qubits)
    : probs_(std::move(probs)), teeth_(teeth), n_qubits_(n_qubits) {
    if (teeth == 0) {
        throw std::invalid_argument("a Pauli table needs at least one tooth");
    }
    if (probs_.size() != ipow(paulis_per_tooth(), teeth)) {
        throw std::invalid_argument("Pauli table needs 4^(n*M) entries");
    }
    double total = 0;
    for (double p : probs_) {
        if (!(p >= -1e-12)) {
            throw std::invalid_argument("Pauli table has a negative entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("Pauli table does not sum to 1 (sum " + std::to_string(total) + ")");
    }
    for (double &p : probs_) {
        p = std::max(p, 0.0);
    }
}

std::vector<size_t> PauliDiagTable::tooth_indices(size_t k) const {
    return split_index(k, teeth_, paulis_per_tooth());
}

size_t PauliDiagTable::flat_index(std::span<const size_t> tooth_indices) const {
    if (tooth_indices.size() != teeth_) {
        throw std::invalid_argument("need one Pauli index per tooth");
    }
    size_t k = 0;
    for (size_t a : tooth_indices) {
        if (a >= paulis_per_tooth()) {
            throw std::invalid_argument("Pauli index out of range");
        }
        k = k * paulis_per_tooth() + a;
    }
    return k;
}

std::vector<std::string> PauliDiagTable::labels(size_t k) const {
    std::vector<std::string> out;
    for (size_t a : tooth_indices(k)) {
        out.push_back(PauliString::from_index(a, n_qubits_).str());
    }
    return out;
}

std::vector<double> PauliDiagTable::marginal(size_t tooth) const {
    if (tooth >= teeth_) {
        throw std::invalid_argument("tooth index out of range");
    }
    std::vector<double> out(paulis_per_tooth(), 0.0);
    for (size_t k = 0; k < probs_.size(); k++) {
        out[tooth_indices(k)[tooth]] += probs_[k];
    }
    return out;
}

double PauliDiagTable::tv_from_product() const {
    std::vector<std::vector<double>> marg;
    for (size_t m = 0; m < teeth_; m++) {
        marg.push_back(marginal(m));
    }
    double tv = 0;
    for (size_t k = 0; k < probs_.size(); k++) {
        auto idx = tooth_indices(k);
        double prod = 1;
        for (size_t m = 0; m < teeth_; m++) {
            prod *= marg[m][idx[m]];
        }
        tv += std::abs(probs_[k] - prod);
    }
    return 0.5 * tv;
}

double PauliDiagTable::total_correlation() const {
    double h = 0;
    for (size_t m = 0; m < teeth_; m++) {
        h += entropy_bits(marginal(m));
    }
    return h - entropy_bits(probs_);
}

double PauliDiagTable::purity() const {
    double s = 0;
    for (double p : probs_) {
        s += p * p;
    }
    return s;
}

Channel twirl_channel(const Channel &c) {
    if (c.d_in() != c.d_out()) {
        throw std::invalid_argument("twirling needs equal input and output dimensions");
    }
    const size_t n = qubit_count(c.d_in());
    const size_t count = ipow(4, n);
    ComplexMatrix acc = ComplexMatrix::Zero(c.choi().rows(), c.choi().cols());
    for (size_t a = 0; a < count; a++) {
        ComplexMatrix g = pauli_matrix(a, n);
        // Choi of G o c o G in (output, input) order.
        Monomial w = to_monomial(tensor(g, ComplexMatrix(g.transpose())));
        acc += conjugate_monomial(w, c.choi());
    }
    return Channel(acc / static_cast<double>(count), c.d_in(), c.d_out());
}

Comb conjugate_comb_by_paulis(const Comb &c, std::span<const size_t> tooth_paulis) {
    if (tooth_paulis.size() != c.teeth()) {
        throw std::invalid_argument("need one Pauli per tooth");
    }
    const size_t n = qubit_count(c.d_sys());
    return Comb(conjugate_monomial(comb_pauli_frame(n, tooth_paulis), c.choi_op()), c.teeth(), c.d_sys());
}

Comb twirl_comb(const Comb &c) {
    const size_t n = qubit_count(c.d_sys());
    const size_t per_tooth = ipow(4, n);
    const size_t count = ipow(per_tooth, c.teeth());
    ComplexMatrix acc = ComplexMatrix::Zero(c.choi_op().rows(), c.choi_op().cols());
    for (size_t k = 0; k < count; k++) {
        auto tuple = split_index(k, c.teeth(), per_tooth);
        acc += conjugate_monomial(comb_pauli_frame(n, tuple), c.choi_op());
    }
    return Comb(acc / static_cast<double>(count), c.teeth(), c.d_sys());
}

Comb sampled_twirl(const Comb &c, size_t samples, uint64_t seed, bool stratified) {
    if (samples == 0) {
        throw std::invalid_argument("sampled twirl needs at least one sample");
    }
    const size_t n = qubit_count(c.d_sys());
    const size_t per_tooth = ipow(4, n);
    const size_t count = ipow(per_tooth, c.teeth());
    ComplexMatrix acc = ComplexMatrix::Zero(c.choi_op().rows(), c.choi_op().cols());
    for (size_t s = 0; s < samples; s++) {
        size_t k = stratified ? s % count
                              : std::min(count - 1, static_cast<size_t>(counter_uniform(seed, s) * static_cast<double>(count)));
        acc += conjugate_monomial(comb_pauli_frame(n, split_index(k, c.teeth(), per_tooth)), c.choi_op());
    }
    return Comb(acc / static_cast<double>(samples), c.teeth(), c.d_sys());
}

PauliDiagTable extract_pauli_diag(const Comb &c, double off_diagonal_tol) {
    ChiMatrix chi = comb_chi(c);
    double off = off_diagonal_mass(chi);
    if (off > off_diagonal_tol) {
        throw NumericalError(
            "comb is not Pauli-diagonal: off-diagonal chi mass " + std::to_string(off) + " exceeds tolerance");
    }
    std::vector<double> probs(static_cast<size_t>(chi.matrix.rows()));
    double negative = 0;
    for (Idx k = 0; k < chi.matrix.rows(); k++) {
        double p = chi.matrix(k, k).real();
        if (p < 0) {
            negative += -p;
            p = 0;
        }
        probs[static_cast<size_t>(k)] = p;
    }
    if (negative > 1e-10) {
        throw NumericalError("Pauli table has negative mass " + std::to_string(negative));
    }
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw NumericalError("Pauli table does not sum to 1 (sum " + std::to_string(total) + ")");
    }
    for (double &p : probs) {
        p /= total;
    }
    return PauliDiagTable(std::move(probs), c.teeth(), qubit_count(c.d_sys()));
}

Comb pauli_correlated_comb(const PauliDiagTable &table) {
    const size_t n = table.n_qubits();
    const size_t d = size_t{1} << n;
    const auto D = static_cast<Idx>(ipow(d, 2 * table.teeth()));
    ComplexMatrix op = ComplexMatrix::Zero(D, D);
    for (size_t k = 0; k < table.probs().size(); k++) {
        const double p = table.probs()[k];
        if (p == 0.0) {
            continue;
        }
        // A tensor product of per-tooth Choi vectors (in, out) = vec(G^T).
        ComplexVector v = ComplexVector::Ones(1);
        for (size_t a : table.tooth_indices(k)) {
            ComplexMatrix g = pauli_matrix(a, n);
            ComplexVector tooth(static_cast<Idx>(d * d));
            for (Idx i = 0; i < static_cast<Idx>(d); i++) {
                for (Idx o = 0; o < static_cast<Idx>(d); o++) {
                    tooth(i * static_cast<Idx>(d) + o) = g(o, i);
                }
            }
            ComplexVector next(v.size() * tooth.size());
            for (Idx x = 0; x < v.size(); x++) {
                next.segment(x * tooth.size(), tooth.size()) = v(x) * tooth;
            }
            v = std::move(next);
        }
        op += p * v * v.adjoint();
    }
    return Comb(std::move(op), table.teeth(), d);
}

EnvModel pauli_correlated_env_model(const PauliDiagTable &table) {
    std::vector<size_t> support;
    for (size_t k = 0; k < table.probs().size(); k++) {
        if (table.probs()[k] > 0) {
            support.push_back(k);
        }
    }
    const size_t n = table.n_qubits();
    const size_t d = size_t{1} << n;
    const size_t de = support.size();
    EnvModel m;
    m.d_sys = d;
    m.d_env = de;
    m.env_init = ComplexMatrix::Zero(static_cast<Idx>(de), static_cast<Idx>(de));
    for (size_t e = 0; e < de; e++) {
        m.env_init(static_cast<Idx>(e), static_cast<Idx>(e)) = table.probs()[support[e]];
    }
    for (size_t t = 0; t < table.teeth(); t++) {
        ComplexMatrix u = ComplexMatrix::Zero(static_cast<Idx>(d * de), static_cast<Idx>(d * de));
        for (size_t e = 0; e < de; e++) {
            ComplexMatrix proj = ComplexMatrix::Zero(static_cast<Idx>(de), static_cast<Idx>(de));
            proj(static_cast<Idx>(e), static_cast<Idx>(e)) = 1.0;
            u += tensor(pauli_matrix(table.tooth_indices(support[e])[t], n), proj);
        }
        m.interactions.push_back(std::move(u));
    }
    return m;
}

ComplexMatrix apply_pauli_table(const PauliDiagTable &table, std::span<const Channel> layers, const ComplexMatrix &input) {
    if (layers.size() + 1 != table.teeth()) {
        throw std::invalid_argument("wrong number of layers for this table");
    }
    const size_t n = table.n_qubits();
    ComplexMatrix out = ComplexMatrix::Zero(input.rows(), input.cols());
    for (size_t k = 0; k < table.probs().size(); k++) {
        const double p = table.probs()[k];
        if (p == 0.0) {
            continue;
        }
        auto idx = table.tooth_indices(k);
        ComplexMatrix g = pauli_matrix(idx[0], n);
        ComplexMatrix x = g * input * g;
        for (size_t t = 1; t < table.teeth(); t++) {
            x = apply_linear(layers[t - 1], x);
            g = pauli_matrix(idx[t], n);
            x = g * x * g;
        }
        out += p * x;
    }
    return out;
}

}  // namespace qcomb
