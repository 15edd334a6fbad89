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

#include "qcomb/vcp.h"

#include <array>
#include <cmath>

namespace qcomb {

namespace {

using Idx = Eigen::Index;

bool is_power_of_two(size_t d) {
    return d >= 2 && (d & (d - 1)) == 0;
}

// |0><0| (x) I + |1><1| (x) SWAP on control (x) a (x) b.
ComplexMatrix controlled_swap(size_t d) {
    const size_t n = 2 * d * d;
    ComplexMatrix u = ComplexMatrix::Zero(static_cast<Idx>(n), static_cast<Idx>(n));
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            u(static_cast<Idx>(a * d + b), static_cast<Idx>(a * d + b)) = 1;
            u(static_cast<Idx>(d * d + b * d + a), static_cast<Idx>(d * d + a * d + b)) = 1;
        }
    }
    return u;
}

ComplexMatrix plus_state() {
    return ComplexMatrix::Constant(2, 2, 0.5);
}

// Reads out the control (wire 0) in the X basis; `state` is control (x) main.
VcpResult read_out(const ComplexMatrix &state, size_t d) {
    const Idx n = static_cast<Idx>(d);
    ComplexMatrix r00 = state.block(0, 0, n, n);
    ComplexMatrix r11 = state.block(n, n, n, n);
    ComplexMatrix cross = state.block(0, n, n, n) + state.block(n, 0, n, n);
    ComplexMatrix plus = 0.5 * (r00 + r11 + cross);
    ComplexMatrix minus = 0.5 * (r00 + r11 - cross);
    VcpResult out;
    out.p_plus = plus.trace().real();
    out.p_minus = minus.trace().real();
    const double diff = out.p_plus - out.p_minus;
    // The signal is an overlap of the two copies and may be negative for
    // generic noise; only its vanishing is fatal.
    if (std::abs(diff) <= 1e-12) {
        throw NumericalError("purification signal p_+ - p_- vanishes");
    }
    out.virtual_state = (plus - minus) / diff;
    out.physical_state = plus / out.p_plus;
    return out;
}

std::optional<double> pauli_purity(const ChiMatrix &chi) {
    if (off_diagonal_mass(chi) > kPauliDiagonalTol) {
        return std::nullopt;
    }
    double p2 = 0;
    for (Idx i = 0; i < chi.matrix.rows(); i++) {
        double p = chi.matrix(i, i).real();
        p2 += p * p;
    }
    return p2;
}

PauliDiagTable reweighted(const PauliDiagTable &table, double linear) {
    std::vector<double> p = table.probs();
    double norm = 0;
    for (double &x : p) {
        x = linear * x + x * x;
        norm += x;
    }
    for (double &x : p) {
        x /= norm;
    }
    return PauliDiagTable(std::move(p), table.teeth(), table.n_qubits());
}

}  // namespace

VcpResult vcp_channel(const Channel &noise, const ComplexMatrix &input, size_t copies) {
    if (copies != 2) {
        throw std::invalid_argument("only two-copy purification is supported");
    }
    const size_t d = noise.d_in();
    if (noise.d_out() != d) {
        throw std::invalid_argument("purification needs a channel with equal input and output dimensions");
    }
    require_density_matrix(input, d);
    std::array<size_t, 3> dims{2, d, d};
    std::array<size_t, 3> all{0, 1, 2};
    const ComplexMatrix cswap = controlled_swap(d);

    ComplexMatrix state = tensor(tensor(plus_state(), input), identity(d) / static_cast<double>(d));
    state = apply_unitary_on_wires(cswap, state, dims, all);
    std::array<size_t, 1> main{1};
    std::array<size_t, 1> anc{2};
    state = apply_choi_on_wires(noise.choi(), state, dims, main);
    state = apply_choi_on_wires(noise.choi(), state, dims, anc);
    state = apply_unitary_on_wires(cswap, state, dims, all);
    std::array<size_t, 2> keep{0, 1};
    VcpResult out = read_out(partial_trace(state, dims, keep), d);
    if (is_power_of_two(d)) {
        out.p2 = pauli_purity(to_chi(noise));
    }
    return out;
}

VcpResult vcp_comb(const EnvModel &copy1, const EnvModel &copy2, const Channel &layer, const ComplexMatrix &input) {
    copy1.validate();
    copy2.validate();
    if (copy1.teeth() != 2 || copy2.teeth() != 2) {
        throw std::invalid_argument("comb purification is implemented for two teeth");
    }
    if (copy1.d_sys != copy2.d_sys) {
        throw std::invalid_argument("copies act on systems of different dimension");
    }
    const size_t d = copy1.d_sys;
    if (layer.d_in() != d || layer.d_out() != d) {
        throw std::invalid_argument("layer dimension does not match the comb");
    }
    require_density_matrix(input, d);

    // control, main, ancilla, env1, env2
    std::array<size_t, 5> dims{2, d, d, copy1.d_env, copy2.d_env};
    std::array<size_t, 3> swap_wires{0, 1, 2};
    std::array<size_t, 2> copy1_wires{1, 3};
    std::array<size_t, 2> copy2_wires{2, 4};
    std::array<size_t, 1> main{1};
    std::array<size_t, 1> anc{2};
    const ComplexMatrix cswap = controlled_swap(d);

    ComplexMatrix state = tensor(tensor(tensor(plus_state(), input), identity(d) / static_cast<double>(d)),
                                 tensor(copy1.env_init, copy2.env_init));
    for (size_t t = 0; t < 2; t++) {
        if (t == 1) {
            state = apply_choi_on_wires(layer.choi(), state, dims, main);
            state = apply_choi_on_wires(channels::completely_depolarizing(d).choi(), state, dims, anc);
        }
        state = apply_unitary_on_wires(cswap, state, dims, swap_wires);
        state = apply_unitary_on_wires(copy1.interactions[t], state, dims, copy1_wires);
        state = apply_unitary_on_wires(copy2.interactions[t], state, dims, copy2_wires);
        state = apply_unitary_on_wires(cswap, state, dims, swap_wires);
    }
    std::array<size_t, 2> keep{0, 1};
    VcpResult out = read_out(partial_trace(state, dims, keep), d);

    if (is_power_of_two(d)) {
        Comb c1 = comb_from_env_model(copy1);
        Comb c2 = comb_from_env_model(copy2);
        if ((c1.choi_op() - c2.choi_op()).norm() <= 1e-10) {
            out.p2 = pauli_purity(comb_chi(c1));
        }
    }
    return out;
}

VcpResult vcp_comb(const PauliDiagTable &table, const Channel &layer, const ComplexMatrix &input) {
    if (table.teeth() != 2) {
        throw std::invalid_argument("comb purification is implemented for two teeth");
    }
    EnvModel m = pauli_correlated_env_model(table);
    VcpResult out = vcp_comb(m, m, layer, input);
    out.p2 = table.purity();
    return out;
}

PauliDiagTable purified_table(const PauliDiagTable &table) {
    return reweighted(table, 0.0);
}

PauliDiagTable physical_table(const PauliDiagTable &table) {
    return reweighted(table, 1.0);
}

}  // namespace qcomb
