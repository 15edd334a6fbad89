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

#include "qcomb/comb.h"

#include <cmath>
#include <numeric>
#include <sstream>

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

// Unitary U with U|x_0 .. x_{n-1}> = |x_{perm[0]} .. x_{perm[n-1]}>.
ComplexMatrix register_permutation_unitary(size_t registers, size_t d, std::span<const size_t> perm) {
    const size_t total = ipow(d, registers);
    ComplexMatrix u = ComplexMatrix::Zero(static_cast<Idx>(total), static_cast<Idx>(total));
    std::vector<size_t> digits(registers);
    for (size_t x = 0; x < total; x++) {
        size_t rem = x;
        for (size_t k = registers; k-- > 0;) {
            digits[k] = rem % d;
            rem /= d;
        }
        size_t y = 0;
        for (size_t k = 0; k < registers; k++) {
            y = y * d + digits[perm[k]];
        }
        u(static_cast<Idx>(y), static_cast<Idx>(x)) = 1.0;
    }
    return u;
}

void require_layers(size_t teeth, size_t d, std::span<const Channel> layers) {
    if (layers.size() + 1 != teeth) {
        throw std::invalid_argument(
            "a " + std::to_string(teeth) + "-tooth comb needs " + std::to_string(teeth - 1) + " layers, got " +
            std::to_string(layers.size()));
    }
    for (const auto &l : layers) {
        if (l.d_in() != d || l.d_out() != d) {
            throw std::invalid_argument("layer dimension does not match the comb's system dimension");
        }
    }
}

}  // namespace

Comb::Comb(ComplexMatrix choi_op, size_t teeth, size_t d_sys)
    : choi_op_(std::move(choi_op)), teeth_(teeth), d_sys_(d_sys) {
    if (teeth == 0) {
        throw std::invalid_argument("a comb needs at least one tooth");
    }
    if (d_sys < 2) {
        throw std::invalid_argument("system dimension must be at least 2");
    }
    const auto expected = static_cast<Idx>(ipow(d_sys, 2 * teeth));
    if (choi_op_.rows() != expected || choi_op_.cols() != expected) {
        throw std::invalid_argument("comb operator shape does not match teeth and system dimension");
    }
}

std::vector<size_t> Comb::wire_dims() const {
    return std::vector<size_t>(2 * teeth_, d_sys_);
}

WireLayout Comb::layout() const {
    std::vector<std::string> labels;
    for (size_t m = 1; m <= teeth_; m++) {
        labels.push_back("in" + std::to_string(m));
        labels.push_back("out" + std::to_string(m));
    }
    return WireLayout(wire_dims(), labels);
}

void EnvModel::validate(double tol) const {
    if (d_sys < 2) {
        throw std::invalid_argument("system dimension must be at least 2");
    }
    if (d_env < 1) {
        throw std::invalid_argument("environment dimension must be positive");
    }
    if (interactions.empty()) {
        throw std::invalid_argument("environment model needs at least one interaction");
    }
    require_density_matrix(env_init, d_env, tol);
    for (const auto &u : interactions) {
        if (u.rows() != static_cast<Idx>(d_sys * d_env) || !is_unitary(u, tol)) {
            throw std::invalid_argument("interactions must be unitaries on system (x) environment");
        }
    }
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix &h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    ComplexVector phases(es.eigenvalues().size());
    for (Idx k = 0; k < phases.size(); k++) {
        phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

EnvModel random_env_model(size_t d_sys, size_t d_env, size_t teeth, uint64_t seed) {
    EnvModel m;
    m.d_sys = d_sys;
    m.d_env = d_env;
    m.env_init = d_env == 1 ? ComplexMatrix::Ones(1, 1) : random_density(d_env, mix_seed(seed, 0, 1));
    for (size_t k = 0; k < teeth; k++) {
        m.interactions.push_back(random_unitary_dim(d_sys * d_env, mix_seed(seed, k + 1, 2)));
    }
    return m;
}

EnvModel weak_env_model(size_t d_sys, size_t d_env, size_t teeth, double strength, uint64_t seed) {
    EnvModel m;
    m.d_sys = d_sys;
    m.d_env = d_env;
    m.env_init = d_env == 1 ? ComplexMatrix::Ones(1, 1) : random_density(d_env, mix_seed(seed, 0, 1));
    for (size_t k = 0; k < teeth; k++) {
        ComplexMatrix h = random_hermitian(d_sys * d_env, mix_seed(seed, k + 1, 3));
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        h /= es.eigenvalues().cwiseAbs().maxCoeff();
        m.interactions.push_back(unitary_from_hamiltonian(strength * h));
    }
    return m;
}

Comb comb_from_env_model(const EnvModel &m) {
    m.validate();
    const size_t d = m.d_sys;
    ComplexMatrix phi = max_entangled_projector(d);
    ComplexMatrix state = m.env_init;
    std::vector<size_t> dims{m.d_env};
    for (size_t t = 0; t < m.teeth(); t++) {
        // [..., env] -> [..., env, in_t, sys] -> [..., in_t, sys, env]
        state = tensor(state, phi);
        dims.push_back(d);
        dims.push_back(d);
        const size_t n = dims.size();
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        perm[n - 3] = n - 2;
        perm[n - 2] = n - 1;
        perm[n - 1] = n - 3;
        state = permute_wires(state, dims, perm);
        dims = permuted_dims(dims, perm);
        std::vector<size_t> targets{n - 2, n - 1};
        state = apply_unitary_on_wires(m.interactions[t], state, dims, targets);
    }
    std::vector<size_t> keep(dims.size() - 1);
    std::iota(keep.begin(), keep.end(), 0);
    return Comb(partial_trace(state, dims, keep), m.teeth(), d);
}

Comb markovian_comb(std::span<const Channel> teeth) {
    if (teeth.empty()) {
        throw std::invalid_argument("a comb needs at least one tooth");
    }
    const size_t d = teeth[0].d_in();
    ComplexMatrix op = ComplexMatrix::Ones(1, 1);
    for (const auto &c : teeth) {
        if (c.d_in() != d || c.d_out() != d) {
            throw std::invalid_argument("all teeth must act on the same system dimension");
        }
        op = tensor(op, swap_choi_wires(c.choi(), d, d));
    }
    return Comb(std::move(op), teeth.size(), d);
}

Comb identity_comb(size_t teeth, size_t d_sys) {
    std::vector<Channel> ids(teeth, channels::identity(d_sys));
    return markovian_comb(ids);
}

CombReport validate_comb(const Comb &c, double tol) {
    CombReport report;
    const size_t d = c.d_sys();
    const size_t M = c.teeth();
    const double scale = static_cast<double>(ipow(d, M));
    const ComplexMatrix &op = c.choi_op();

    if (is_hermitian(op, tol)) {
        auto psd = psd_check(op, tol);
        report.psd = psd.is_psd;
        report.min_eigenvalue = psd.min_eigenvalue;
    } else {
        report.psd = false;
        report.min_eigenvalue = std::nan("");
    }
    report.trace_residual = std::abs(op.trace() - cplx(scale));

    report.level_residuals.assign(M, 0.0);
    ComplexMatrix level = op;
    for (size_t k = M; k >= 1; k--) {
        std::vector<size_t> dims(2 * k, d);
        std::vector<size_t> keep(2 * k - 1);
        std::iota(keep.begin(), keep.end(), 0);
        ComplexMatrix traced = partial_trace(level, dims, keep);  // drop out_k
        if (k == 1) {
            report.level_residuals[0] = trace_norm(traced - identity(d));
            break;
        }
        std::vector<size_t> dims_in(2 * k - 1, d);
        std::vector<size_t> keep_prev(2 * k - 2);
        std::iota(keep_prev.begin(), keep_prev.end(), 0);
        ComplexMatrix prev = partial_trace(traced, dims_in, keep_prev) / static_cast<double>(d);
        report.level_residuals[k - 1] = trace_norm(traced - tensor(prev, identity(d)));
        level = prev;
    }

    bool causal = true;
    for (double r : report.level_residuals) {
        causal = causal && r <= tol * scale;
    }
    report.passes = report.psd && causal && report.trace_residual <= tol * scale;
    return report;
}

void require_valid_comb(const Comb &c, double tol) {
    auto report = validate_comb(c, tol);
    if (report.passes) {
        return;
    }
    std::ostringstream msg;
    msg << "invalid comb: psd=" << (report.psd ? "true" : "false") << " min_eigenvalue=" << report.min_eigenvalue
        << " trace_residual=" << report.trace_residual << " level_residuals=[";
    for (size_t k = 0; k < report.level_residuals.size(); k++) {
        msg << (k ? ", " : "") << report.level_residuals[k];
    }
    msg << "]";
    throw NumericalError(msg.str());
}

Channel choi_channel(const Comb &c) {
    require_valid_comb(c);
    const size_t M = c.teeth();
    std::vector<size_t> perm;
    for (size_t m = 0; m < M; m++) {
        perm.push_back(2 * m + 1);
    }
    for (size_t m = 0; m < M; m++) {
        perm.push_back(2 * m);
    }
    auto dims = c.wire_dims();
    const size_t D = ipow(c.d_sys(), M);
    return Channel(permute_wires(c.choi_op(), dims, perm), D, D);
}

Channel slot_channel(const Comb &c) {
    Channel ch = choi_channel(c);
    const size_t M = c.teeth();
    std::vector<size_t> perm{M - 1};
    for (size_t m = 0; m + 1 < M; m++) {
        perm.push_back(m);
    }
    for (size_t m = 0; m < M; m++) {
        perm.push_back(M + m);
    }
    auto dims = std::vector<size_t>(2 * M, c.d_sys());
    return Channel(permute_wires(ch.choi(), dims, perm), ch.d_in(), ch.d_out());
}

Channel cyclic_register_permutation(size_t registers, size_t d, bool inverse) {
    std::vector<size_t> perm(registers);
    for (size_t k = 0; k < registers; k++) {
        perm[k] = inverse ? (k + registers - 1) % registers : (k + 1) % registers;
    }
    return channels::unitary(register_permutation_unitary(registers, d, perm));
}

ComplexMatrix contract_comb(const ComplexMatrix &choi_op, size_t teeth, size_t d,
                            std::span<const ComplexMatrix> layer_chois, const ComplexMatrix &input) {
    if (layer_chois.size() + 1 != teeth) {
        throw std::invalid_argument("wrong number of layers for this comb");
    }
    if (input.rows() != static_cast<Idx>(d) || input.cols() != static_cast<Idx>(d)) {
        throw std::invalid_argument("input dimension does not match the comb");
    }
    // Link product: out = Tr_{all but out_M}[C (input^T (x) L_1 (x) ... (x) I)],
    // where L_m is the transpose of the layer's Choi matrix in (out_m, in_{m+1})
    // wire order.
    ComplexMatrix link = input.transpose();
    for (const auto &j : layer_chois) {
        if (j.rows() != static_cast<Idx>(d * d) || j.cols() != j.rows()) {
            throw std::invalid_argument("layer Choi matrix does not match the comb");
        }
        link = tensor(link, ComplexMatrix(swap_choi_wires(j, d, d).transpose()));
    }
    link = tensor(link, identity(d));
    ComplexMatrix prod = choi_op * link;
    std::vector<size_t> dims(2 * teeth, d);
    std::vector<size_t> keep{2 * teeth - 1};
    return partial_trace(prod, dims, keep);
}

ComplexMatrix apply_comb(const Comb &c, std::span<const Channel> layers, const ComplexMatrix &input) {
    require_layers(c.teeth(), c.d_sys(), layers);
    require_density_matrix(input, c.d_sys());
    std::vector<ComplexMatrix> chois;
    chois.reserve(layers.size());
    for (const auto &l : layers) {
        chois.push_back(l.choi());
    }
    return contract_comb(c.choi_op(), c.teeth(), c.d_sys(), chois, input);
}

ComplexMatrix output_from_slot_channel(
    const Channel &slot, size_t teeth, std::span<const Channel> layers, const ComplexMatrix &input) {
    if (teeth == 0) {
        throw std::invalid_argument("a comb needs at least one tooth");
    }
    const size_t d = static_cast<size_t>(std::llround(std::pow(static_cast<double>(slot.d_in()), 1.0 / teeth)));
    if (ipow(d, teeth) != slot.d_in() || slot.d_in() != slot.d_out()) {
        throw std::invalid_argument("slot channel dimension does not match the number of teeth");
    }
    require_layers(teeth, d, layers);
    if (input.rows() != static_cast<Idx>(d) || input.cols() != static_cast<Idx>(d)) {
        throw std::invalid_argument("input dimension does not match the comb");
    }

    // Interleaved wire order: reg_1, (reg_2, ref_1), (reg_3, ref_2), ...
    ComplexMatrix x = input;
    for (const auto &l : layers) {
        x = tensor(x, l.choi());
    }
    const size_t wires = 2 * teeth - 1;
    std::vector<size_t> dims(wires, d);
    // Registers first: reg_1 = 0, reg_{m+1} = 2m - 1, ref_m = 2m.
    std::vector<size_t> to_grouped{0};
    for (size_t m = 1; m < teeth; m++) {
        to_grouped.push_back(2 * m - 1);
    }
    for (size_t m = 1; m < teeth; m++) {
        to_grouped.push_back(2 * m);
    }
    x = permute_wires(x, dims, to_grouped);
    std::vector<size_t> regs(teeth);
    std::iota(regs.begin(), regs.end(), 0);
    x = apply_choi_on_wires(slot.choi(), x, dims, regs);
    x = permute_wires(x, dims, inverse_permutation(to_grouped));

    // Bell projection <Phi+| on each (reg_m, ref_{m-1}) pair.
    ComplexMatrix proj = identity(d);
    ComplexMatrix bra = max_entangled(d).adjoint();
    for (size_t m = 1; m < teeth; m++) {
        proj = tensor(proj, bra);
    }
    return proj * x * proj.adjoint();
}

ComplexMatrix output_from_choi_channel(
    const Channel &choi, size_t teeth, std::span<const Channel> layers, const ComplexMatrix &input) {
    const size_t d = static_cast<size_t>(std::llround(std::pow(static_cast<double>(choi.d_in()), 1.0 / teeth)));
    Channel slot = compose(cyclic_register_permutation(teeth, d, /*inverse=*/true), choi);
    return output_from_slot_channel(slot, teeth, layers, input);
}

ComplexMatrix comb_choi_state(const Comb &c) {
    return choi_channel(c).choi();
}

ChiMatrix comb_chi(const Comb &c) {
    size_t n = qubit_count(c.d_sys());
    return chi_from_choi(choi_channel(c).choi(), n * c.teeth());
}

ComplexMatrix simulate_env_model(const EnvModel &m, std::span<const Channel> layers, const ComplexMatrix &input) {
    m.validate();
    require_layers(m.teeth(), m.d_sys, layers);
    require_density_matrix(input, m.d_sys);
    std::vector<size_t> dims{m.d_sys, m.d_env};
    std::vector<size_t> sys{0};
    ComplexMatrix state = tensor(input, m.env_init);
    for (size_t t = 0; t < m.teeth(); t++) {
        state = m.interactions[t] * state * m.interactions[t].adjoint();
        if (t < layers.size()) {
            state = apply_choi_on_wires(layers[t].choi(), state, dims, sys);
        }
    }
    return partial_trace(state, dims, sys);
}

}  // namespace qcomb
