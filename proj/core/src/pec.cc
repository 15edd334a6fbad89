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

#include "qcomb/pec.h"

#include <algorithm>
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

// Coefficients below this are rounding noise from the solve.
constexpr double kAlphaChop = 1e-14;

// Columns: row-major vec of each op's PTM.
RealMatrix stacking_matrix(std::span<const BasisOp> ops, size_t n_qubits) {
    const size_t p = ipow(4, n_qubits);
    RealMatrix s(static_cast<Idx>(p * p), static_cast<Idx>(ops.size()));
    for (size_t i = 0; i < ops.size(); i++) {
        RealMatrix r = ptm_from_choi(ops[i].choi, n_qubits);
        for (Idx a = 0; a < r.rows(); a++) {
            for (Idx b = 0; b < r.cols(); b++) {
                s(a * r.cols() + b, static_cast<Idx>(i)) = r(a, b);
            }
        }
    }
    return s;
}

// Applies `op` along one mode of a flat tensor with `modes` modes of size
// `size` (mode 0 slowest).
RealVector apply_along_mode(const RealMatrix &op, const RealVector &t, size_t modes, size_t mode, size_t size) {
    const size_t right = ipow(size, modes - mode - 1);
    const size_t left = ipow(size, mode);
    RealVector out = RealVector::Zero(t.size());
    for (size_t l = 0; l < left; l++) {
        for (size_t r = 0; r < right; r++) {
            RealVector fiber(static_cast<Idx>(size));
            for (size_t k = 0; k < size; k++) {
                fiber(static_cast<Idx>(k)) = t(static_cast<Idx>((l * size + k) * right + r));
            }
            RealVector mapped = op * fiber;
            for (size_t k = 0; k < size; k++) {
                out(static_cast<Idx>((l * size + k) * right + r)) = mapped(static_cast<Idx>(k));
            }
        }
    }
    return out;
}

// R[(a_1..a_M),(b_1..b_M)] <-> T[(a_1 b_1), ..., (a_M b_M)].
RealVector interleave(const RealMatrix &r, size_t registers, size_t p) {
    const size_t n = ipow(p, registers);
    RealVector t(static_cast<Idx>(n * n));
    for (size_t row = 0; row < n; row++) {
        for (size_t col = 0; col < n; col++) {
            size_t idx = 0;
            for (size_t m = 0; m < registers; m++) {
                size_t div = ipow(p, registers - m - 1);
                size_t a = (row / div) % p;
                size_t b = (col / div) % p;
                idx = idx * p * p + a * p + b;
            }
            t(static_cast<Idx>(idx)) = r(static_cast<Idx>(row), static_cast<Idx>(col));
        }
    }
    return t;
}

RealMatrix deinterleave(const RealVector &t, size_t registers, size_t p) {
    const size_t n = ipow(p, registers);
    RealMatrix r(static_cast<Idx>(n), static_cast<Idx>(n));
    for (size_t row = 0; row < n; row++) {
        for (size_t col = 0; col < n; col++) {
            size_t idx = 0;
            for (size_t m = 0; m < registers; m++) {
                size_t div = ipow(p, registers - m - 1);
                idx = idx * p * p + ((row / div) % p) * p + (col / div) % p;
            }
            r(static_cast<Idx>(row), static_cast<Idx>(col)) = t(static_cast<Idx>(idx));
        }
    }
    return r;
}

std::vector<BasisOp> register_basis(const BasisOpSet &basis, size_t n_qubits) {
    std::vector<BasisOp> ops{BasisOp{"", ComplexMatrix::Ones(1, 1), 1}};
    for (size_t q = 0; q < n_qubits; q++) {
        std::vector<BasisOp> next;
        for (const auto &a : ops) {
            for (const auto &b : basis.ops) {
                next.push_back(BasisOp{a.name.empty() ? b.name : a.name + "*" + b.name,
                                       tensor_choi(a.choi, a.dim, a.dim, b.choi, b.dim, b.dim), a.dim * b.dim});
            }
        }
        ops = std::move(next);
    }
    return ops;
}

// Kraus K -> K^T swaps the two Choi wires.
ComplexMatrix transposed_op(const BasisOp &op) {
    return swap_choi_wires(op.choi, op.dim, op.dim);
}

struct TermOutputs {
    std::vector<size_t> terms;
    std::vector<ComplexMatrix> states;  // unnormalized outputs, one per term
};

TermOutputs term_outputs(const Comb &c, const QuasiProbDecomposition &dec, std::span<const Channel> layers,
                         const ComplexMatrix &input, PreGateConvention convention) {
    const size_t M = c.teeth();
    if (dec.registers != M) {
        throw std::invalid_argument("decomposition does not match the comb's number of teeth");
    }
    if (dec.register_ops.empty() || dec.register_ops[0].dim != c.d_sys()) {
        throw std::invalid_argument("decomposition basis does not match the comb's system dimension");
    }
    if (layers.size() + 1 != M) {
        throw std::invalid_argument("wrong number of layers for this comb");
    }
    require_density_matrix(input, c.d_sys());
    const size_t d = c.d_sys();
    const size_t nops = dec.register_ops.size();

    // slot_ops[m][i] = Choi of U_m o A_i.
    std::vector<std::vector<ComplexMatrix>> slot_ops(layers.size());
    for (size_t m = 0; m < layers.size(); m++) {
        if (layers[m].d_in() != d || layers[m].d_out() != d) {
            throw std::invalid_argument("layer dimension does not match the comb");
        }
        for (const auto &op : dec.register_ops) {
            ComplexMatrix a = convention == PreGateConvention::kTransposed ? transposed_op(op) : op.choi;
            slot_ops[m].push_back(compose_choi(layers[m].choi(), a, d, d, d));
        }
    }

    TermOutputs out;
    std::vector<ComplexMatrix> chosen(layers.size());
    for (size_t k = 0; k < dec.alpha.size(); k++) {
        if (dec.alpha[k] == 0.0) {
            continue;
        }
        auto idx = dec.register_indices(k);
        for (size_t m = 0; m + 1 < M; m++) {
            chosen[m] = slot_ops[m][idx[m]];
        }
        ComplexMatrix state = contract_comb(c.choi_op(), M, d, chosen, input);
        const BasisOp &last = dec.register_ops[idx[M - 1] % nops];
        out.terms.push_back(k);
        out.states.push_back(apply_choi(last.choi, d, d, state));
    }
    return out;
}

}  // namespace

BasisOp basis_op_from_kraus(std::string name, std::span<const ComplexMatrix> kraus) {
    BasisOp op;
    op.name = std::move(name);
    op.choi = choi_from_kraus(kraus);
    op.dim = static_cast<size_t>(kraus[0].cols());
    return op;
}

BasisOpSet default_basis() {
    const cplx i(0, 1);
    const ComplexMatrix id = identity(2);
    const ComplexMatrix x = pauli_matrix(Pauli::X);
    const ComplexMatrix y = pauli_matrix(Pauli::Y);
    const ComplexMatrix z = pauli_matrix(Pauli::Z);
    const double q = M_PI / 2;

    std::vector<std::pair<std::string, ComplexMatrix>> single{
        {"I", id},
        {"X", x},
        {"Y", y},
        {"Z", z},
        {"Rx", gates::rotation(1, 0, 0, q)},
        {"Ry", gates::rotation(0, 1, 0, q)},
        {"Rz", gates::rotation(0, 0, 1, q)},
        {"Ryz", gates::rotation(0, 1, 1, q)},
        {"Rzx", gates::rotation(1, 0, 1, q)},
        {"Rxy", gates::rotation(1, 1, 0, q)},
        {"Pi_x", (id + x) / 2.0},
        {"Pi_y", (id + y) / 2.0},
        {"Pi_z", (id + z) / 2.0},
        {"Pi_yz", (y + i * z) / 2.0},
        {"Pi_zx", (z + i * x) / 2.0},
        {"Pi_xy", (x + i * y) / 2.0},
    };
    BasisOpSet set;
    for (auto &[name, k] : single) {
        std::vector<ComplexMatrix> kraus{k};
        set.ops.push_back(basis_op_from_kraus(name, kraus));
    }
    return set;
}

BasisReport verify_basis_completeness(const BasisOpSet &basis, double tol) {
    if (basis.ops.empty()) {
        throw NumericalError("basis is empty");
    }
    const size_t d = basis.ops[0].dim;
    const size_t n = qubit_count(d);
    BasisReport report;
    for (const auto &op : basis.ops) {
        if (op.dim != d || op.choi.rows() != static_cast<Idx>(d * d)) {
            throw std::invalid_argument("basis ops have inconsistent dimensions");
        }
        bool ok = is_hermitian(op.choi, tol) && psd_check(op.choi, tol).is_psd;
        if (ok) {
            std::vector<size_t> dims{d, d};
            std::vector<size_t> keep{1};
            ComplexMatrix slack = identity(d) - partial_trace(op.choi, dims, keep);
            ok = psd_check(0.5 * (slack + slack.adjoint()), tol).is_psd;
        }
        if (!ok) {
            report.physical = false;
            report.unphysical_ops.push_back(op.name);
        }
    }
    RealMatrix s = stacking_matrix(basis.ops, n);
    Eigen::JacobiSVD<RealMatrix> svd(s);
    const auto &sv = svd.singularValues();
    const double smax = sv.maxCoeff();
    report.rank = 0;
    for (Idx k = 0; k < sv.size(); k++) {
        if (sv(k) > 1e-10 * smax) {
            report.rank++;
        }
    }
    const size_t full = static_cast<size_t>(s.rows());
    report.condition_number = report.rank == full && sv.size() == s.rows() ? smax / sv.minCoeff()
                                                                             : std::numeric_limits<double>::infinity();
    if (report.rank < full) {
        throw NumericalError(
            "basis spans rank " + std::to_string(report.rank) + " of the " + std::to_string(full) +
            "-dimensional PTM space");
    }
    return report;
}

std::vector<size_t> QuasiProbDecomposition::register_indices(size_t k) const {
    const size_t base = register_ops.size();
    std::vector<size_t> out(registers);
    for (size_t m = registers; m-- > 0;) {
        out[m] = k % base;
        k /= base;
    }
    return out;
}

QuasiProbDecomposition decompose_channel_inverse(const Channel &ch, size_t registers, const BasisOpSet &basis) {
    if (registers == 0) {
        throw std::invalid_argument("need at least one register");
    }
    auto report = verify_basis_completeness(basis);
    if (!report.physical) {
        throw NumericalError("basis contains operations that are not CP and trace non-increasing");
    }
    PTM r = to_ptm(ch);
    if (r.n_qubits % registers != 0) {
        throw std::invalid_argument("channel does not split into equal qubit registers");
    }
    const size_t n = r.n_qubits / registers;
    const size_t p = ipow(4, n);

    Eigen::JacobiSVD<RealMatrix> svd(r.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double cond = sv.minCoeff() > 0 ? sv.maxCoeff() / sv.minCoeff() : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxPtmCondition)) {
        throw NumericalError(
            "Choi channel PTM is singular or ill-conditioned (condition number " + std::to_string(cond) + ")");
    }
    RealMatrix inverse = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

    QuasiProbDecomposition dec;
    dec.registers = registers;
    dec.register_ops = register_basis(basis, n);
    dec.condition_number = cond;

    RealMatrix s = stacking_matrix(dec.register_ops, n);
    RealMatrix s_inv = s.partialPivLu().inverse();
    RealVector t = interleave(inverse, registers, p);
    for (size_t m = 0; m < registers; m++) {
        t = apply_along_mode(s_inv, t, registers, m, p * p);
    }
    const double scale = t.cwiseAbs().maxCoeff();
    dec.alpha.resize(static_cast<size_t>(t.size()));
    dec.gamma = 0;
    for (Idx k = 0; k < t.size(); k++) {
        double a = std::abs(t(k)) < kAlphaChop * scale ? 0.0 : t(k);
        dec.alpha[static_cast<size_t>(k)] = a;
        dec.gamma += std::abs(a);
    }

    RealVector check = Eigen::Map<const RealVector>(dec.alpha.data(), static_cast<Idx>(dec.alpha.size()));
    for (size_t m = 0; m < registers; m++) {
        check = apply_along_mode(s, check, registers, m, p * p);
    }
    dec.residual = (deinterleave(check, registers, p) - inverse).norm();
    return dec;
}

QuasiProbDecomposition decompose_inverse(const Comb &c, const BasisOpSet &basis) {
    return decompose_channel_inverse(choi_channel(c), c.teeth(), basis);
}

double expectation(const ComplexMatrix &observable, const ComplexMatrix &state) {
    if (observable.rows() != state.rows() || observable.cols() != state.cols()) {
        throw std::invalid_argument("observable and state dimensions differ");
    }
    return (observable.cwiseProduct(state.transpose())).sum().real();
}

double pec_correct_exact(const Comb &c, const QuasiProbDecomposition &decomposition, std::span<const Channel> layers,
                         const ComplexMatrix &input, const ComplexMatrix &observable, PreGateConvention convention) {
    if (!is_hermitian(observable)) {
        throw std::invalid_argument("observable must be Hermitian");
    }
    auto outputs = term_outputs(c, decomposition, layers, input, convention);
    double total = 0;
    for (size_t t = 0; t < outputs.terms.size(); t++) {
        total += decomposition.alpha[outputs.terms[t]] * expectation(observable, outputs.states[t]);
    }
    return total;
}

PecEstimate pec_sample(const Comb &c, const QuasiProbDecomposition &decomposition, std::span<const Channel> layers,
                       const ComplexMatrix &input, const ComplexMatrix &observable, size_t shots, uint64_t seed,
                       PreGateConvention convention) {
    if (shots == 0) {
        throw std::invalid_argument("pec_sample needs at least one shot");
    }
    if (!is_hermitian(observable)) {
        throw std::invalid_argument("observable must be Hermitian");
    }
    auto outputs = term_outputs(c, decomposition, layers, input, convention);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (observable + observable.adjoint()));
    const auto &evals = es.eigenvalues();
    const auto &evecs = es.eigenvectors();

    // Per term: cumulative outcome probabilities; the remainder is the
    // discarded branch of a projection and scores zero.
    const size_t nterms = outputs.terms.size();
    std::vector<std::vector<double>> outcome_cdf(nterms);
    std::vector<double> term_cdf(nterms);
    double acc = 0;
    for (size_t t = 0; t < nterms; t++) {
        double run = 0;
        for (Idx j = 0; j < evals.size(); j++) {
            double q = (evecs.col(j).adjoint() * outputs.states[t] * evecs.col(j))(0, 0).real();
            run += std::max(q, 0.0);
            outcome_cdf[t].push_back(run);
        }
        acc += std::abs(decomposition.alpha[outputs.terms[t]]);
        term_cdf[t] = acc;
    }
    const double gamma = acc;

    double sum = 0;
    double sum_sq = 0;
    for (size_t s = 0; s < shots; s++) {
        double u_term = counter_uniform(seed, s, 0) * gamma;
        size_t t = static_cast<size_t>(std::upper_bound(term_cdf.begin(), term_cdf.end(), u_term) - term_cdf.begin());
        t = std::min(t, nterms - 1);
        double u_out = counter_uniform(seed, s, 1);
        const auto &cdf = outcome_cdf[t];
        size_t j = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u_out) - cdf.begin());
        double outcome = j < cdf.size() ? evals(static_cast<Idx>(j)) : 0.0;
        double sign = decomposition.alpha[outputs.terms[t]] < 0 ? -1.0 : 1.0;
        double value = gamma * sign * outcome;
        sum += value;
        sum_sq += value * value;
    }
    const double n = static_cast<double>(shots);
    PecEstimate est;
    est.shots = shots;
    est.estimate = sum / n;
    double var = shots > 1 ? (sum_sq - n * est.estimate * est.estimate) / (n - 1) : 0.0;
    est.std_error = std::sqrt(std::max(var, 0.0) / n);
    return est;
}

}  // namespace qcomb
