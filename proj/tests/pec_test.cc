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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qcomb/random.h"
#include "qcomb/twirl.h"

using namespace qcomb;

namespace {

using Idx = Eigen::Index;

// PTM of a map given by its Choi matrix, R(a, b) = Tr[G_a map(G_b)] / d,
// evaluating map(G_b) by the Choi index sum.
RealMatrix ptm_oracle(const ComplexMatrix &choi, size_t n_qubits) {
    const size_t d = size_t{1} << n_qubits;
    const size_t n = d * d;
    RealMatrix r(static_cast<Idx>(n), static_cast<Idx>(n));
    for (size_t b = 0; b < n; b++) {
        ComplexMatrix gb = oracle::pauli(b, n_qubits);
        ComplexMatrix out = ComplexMatrix::Zero(static_cast<Idx>(d), static_cast<Idx>(d));
        for (size_t i = 0; i < d; i++) {
            for (size_t j = 0; j < d; j++) {
                for (size_t x = 0; x < d; x++) {
                    for (size_t y = 0; y < d; y++) {
                        out(static_cast<Idx>(i), static_cast<Idx>(j)) +=
                            choi(static_cast<Idx>(i * d + x), static_cast<Idx>(j * d + y)) *
                            gb(static_cast<Idx>(x), static_cast<Idx>(y));
                    }
                }
            }
        }
        for (size_t a = 0; a < n; a++) {
            r(static_cast<Idx>(a), static_cast<Idx>(b)) =
                (oracle::pauli(a, n_qubits) * out).trace().real() / static_cast<double>(d);
        }
    }
    return r;
}

std::vector<ComplexMatrix> default_kraus() {
    const cplx i(0, 1);
    ComplexMatrix id = oracle::pauli(0, 1);
    ComplexMatrix x = oracle::pauli(1, 1);
    ComplexMatrix y = oracle::pauli(2, 1);
    ComplexMatrix z = oracle::pauli(3, 1);
    auto rot = [&](double nx, double ny, double nz) {
        double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
        ComplexMatrix n = (nx * x + ny * y + nz * z) / norm;
        return ComplexMatrix(std::cos(M_PI / 4) * id - i * std::sin(M_PI / 4) * n);
    };
    return {id, x, y, z, rot(1, 0, 0), rot(0, 1, 0), rot(0, 0, 1), rot(0, 1, 1), rot(1, 0, 1), rot(1, 1, 0),
            (id + x) / 2.0, (id + y) / 2.0, (id + z) / 2.0, (y + i * z) / 2.0, (z + i * x) / 2.0, (x + i * y) / 2.0};
}

Comb weak_comb(uint64_t seed, double strength = 0.3) {
    return comb_from_env_model(weak_env_model(2, 2, 2, strength, seed));
}

}  // namespace

TEST(pec, default_basis_matches_literal_operations) {
    BasisOpSet basis = default_basis();
    auto kraus = default_kraus();
    ASSERT_EQ(basis.ops.size(), 16u);
    RealMatrix stack(16, 16);
    for (size_t k = 0; k < 16; k++) {
        std::vector<ComplexMatrix> one{kraus[k]};
        ComplexMatrix j = ComplexMatrix::Zero(4, 4);
        for (size_t a = 0; a < 2; a++) {
            for (size_t b = 0; b < 2; b++) {
                ComplexMatrix e = ComplexMatrix::Zero(2, 2);
                e(static_cast<Idx>(a), static_cast<Idx>(b)) = 1;
                j += oracle::kron(oracle::apply_kraus(one, e), e);
            }
        }
        EXPECT_LT((basis.ops[k].choi - j).norm(), 1e-14) << basis.ops[k].name;
        RealMatrix r = ptm_oracle(j, 1);
        for (Idx a = 0; a < 4; a++) {
            for (Idx b = 0; b < 4; b++) {
                stack(a * 4 + b, static_cast<Idx>(k)) = r(a, b);
            }
        }
    }
    Eigen::JacobiSVD<RealMatrix> svd(stack);
    double cond = svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();

    BasisReport rep = verify_basis_completeness(basis);
    EXPECT_EQ(rep.rank, 16u);
    EXPECT_TRUE(rep.physical);
    EXPECT_NEAR(rep.condition_number, cond, 1e-9);
    EXPECT_LT(rep.condition_number, 20.0);
}

TEST(pec, unitaries_and_resets_alone_are_not_complete) {
    // Trace-preserving operations cannot reach PTM rows with a nonzero
    // first-row tail, so no CPTP set spans the full space.
    BasisOpSet basis = default_basis();
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    zero(0, 0) = 1;
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(0, 1) = 1;
    for (size_t k = 10; k < 16; k++) {
        std::vector<ComplexMatrix> reset{zero, lower};
        basis.ops[k] = basis_op_from_kraus("reset", reset);
    }
    EXPECT_THROW(verify_basis_completeness(basis), NumericalError);
}

TEST(pec, unphysical_basis_is_reported) {
    BasisOpSet basis = default_basis();
    basis.ops[4].choi += 0.3 * oracle::swap_wires({2, 2}, 0, 1);
    basis.ops[4].choi(0, 0) -= 0.6;
    BasisReport rep = verify_basis_completeness(basis);
    EXPECT_FALSE(rep.physical);
    ASSERT_EQ(rep.unphysical_ops.size(), 1u);
    EXPECT_EQ(rep.unphysical_ops[0], "Rx");
    EXPECT_THROW(decompose_inverse(identity_comb(2, 2), basis), NumericalError);
}

TEST(pec, identity_comb_has_unit_cost) {
    auto dec = decompose_inverse(identity_comb(2, 2), default_basis());
    EXPECT_EQ(dec.gamma, 1.0);
    EXPECT_EQ(dec.alpha[0], 1.0);
    size_t nonzero = 0;
    for (double a : dec.alpha) {
        nonzero += a != 0.0;
    }
    EXPECT_EQ(nonzero, 1u);
}

TEST(pec, pauli_teeth_have_unit_cost) {
    std::vector<Channel> teeth{channels::unitary(oracle::pauli(1, 1)), channels::unitary(oracle::pauli(3, 1))};
    auto dec = decompose_inverse(markovian_comb(teeth), default_basis());
    EXPECT_NEAR(dec.gamma, 1.0, 1e-14);
    EXPECT_NEAR(dec.alpha[1 * 16 + 3], 1.0, 1e-14);
}

TEST(pec, decomposition_inverts_the_choi_channel) {
    BasisOpSet basis = default_basis();
    Comb c = weak_comb(1);
    auto dec = decompose_inverse(c, basis);
    EXPECT_LT(dec.residual, 1e-9);
    EXPECT_GE(dec.gamma, 1.0);

    std::vector<RealMatrix> ptms;
    for (const auto &op : basis.ops) {
        ptms.push_back(ptm_oracle(op.choi, 1));
    }
    RealMatrix inv_sum = RealMatrix::Zero(16, 16);
    for (size_t a = 0; a < 16; a++) {
        for (size_t b = 0; b < 16; b++) {
            // PTM of a (x) b in the 2-qubit Pauli basis is the Kronecker product.
            RealMatrix kr(16, 16);
            for (Idx i = 0; i < 4; i++) {
                for (Idx j = 0; j < 4; j++) {
                    kr.block(i * 4, j * 4, 4, 4) = ptms[a](i, j) * ptms[b];
                }
            }
            inv_sum += dec.alpha[a * 16 + b] * kr;
        }
    }
    RealMatrix r = ptm_oracle(choi_channel(c).choi(), 2);
    EXPECT_LT((inv_sum * r - RealMatrix::Identity(16, 16)).norm(), 1e-10);
}

TEST(pec, exact_correction_recovers_ideal_expectations) {
    BasisOpSet basis = default_basis();
    for (uint64_t seed = 0; seed < 8; seed++) {
        Comb c = weak_comb(100 + seed);
        auto dec = decompose_inverse(c, basis);
        std::vector<Channel> layers{channels::unitary(random_unitary(1, 200 + seed))};
        ComplexMatrix rho = random_density(2, 300 + seed);
        ComplexMatrix ideal = qcomb::apply(layers[0], rho);
        for (size_t p = 1; p < 4; p++) {
            ComplexMatrix o = oracle::pauli(p, 1);
            double want = (o * ideal).trace().real();
            EXPECT_NEAR(pec_correct_exact(c, dec, layers, rho, o), want, 1e-10);
        }
    }
}

TEST(pec, transposed_convention_does_not_correct) {
    Comb c = weak_comb(7, 0.5);
    auto dec = decompose_inverse(c, default_basis());
    std::vector<Channel> layers{channels::unitary(random_unitary(1, 8))};
    ComplexMatrix rho = random_density(2, 9);
    ComplexMatrix o = oracle::pauli(2, 1);
    double ideal = (o * qcomb::apply(layers[0], rho)).trace().real();
    double direct = pec_correct_exact(c, dec, layers, rho, o, PreGateConvention::kDirect);
    double transposed = pec_correct_exact(c, dec, layers, rho, o, PreGateConvention::kTransposed);
    EXPECT_NEAR(direct, ideal, 1e-10);
    EXPECT_GT(std::abs(transposed - ideal), 1e-4);
}

TEST(pec, singular_noise_is_rejected) {
    std::vector<Channel> teeth{channels::completely_depolarizing(2), channels::identity(2)};
    EXPECT_THROW(decompose_inverse(markovian_comb(teeth), default_basis()), NumericalError);
}

TEST(pec, two_qubit_register) {
    Channel noise = compose(channels::depolarizing(0.1, 2), channels::unitary(random_unitary(2, 10)));
    auto dec = decompose_channel_inverse(noise, 1, default_basis());
    EXPECT_EQ(dec.register_ops.size(), 256u);
    EXPECT_LT(dec.residual, 1e-9);
    RealMatrix sum = RealMatrix::Zero(16, 16);
    for (size_t k = 0; k < 256; k++) {
        if (dec.alpha[k] != 0.0) {
            sum += dec.alpha[k] * ptm_oracle(dec.register_ops[k].choi, 2);
        }
    }
    EXPECT_LT((sum * ptm_oracle(noise.choi(), 2) - RealMatrix::Identity(16, 16)).norm(), 1e-10);
}

TEST(pec, twirled_noise_needs_only_the_pauli_table) {
    Comb c = weak_comb(11);
    Comb t = twirl_comb(c);
    auto from_comb = decompose_inverse(t, default_basis());
    auto from_table = decompose_inverse(pauli_correlated_comb(extract_pauli_diag(t)), default_basis());
    for (size_t k = 0; k < from_comb.alpha.size(); k++) {
        EXPECT_NEAR(from_comb.alpha[k], from_table.alpha[k], 1e-12);
    }
}

TEST(pec, sampling_is_seeded_and_unbiased) {
    Comb c = weak_comb(12);
    auto dec = decompose_inverse(c, default_basis());
    std::vector<Channel> layers{channels::unitary(gates::hadamard())};
    ComplexMatrix rho = random_density(2, 13);
    ComplexMatrix o = oracle::pauli(1, 1);
    double exact = pec_correct_exact(c, dec, layers, rho, o);
    PecEstimate a = pec_sample(c, dec, layers, rho, o, 20000, 5);
    PecEstimate b = pec_sample(c, dec, layers, rho, o, 20000, 5);
    PecEstimate other = pec_sample(c, dec, layers, rho, o, 20000, 6);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_NE(a.estimate, other.estimate);
    EXPECT_LT(std::abs(a.estimate - exact), 5 * a.std_error);
    // Single-shot variance is bounded by gamma^2.
    EXPECT_LE(a.std_error, dec.gamma / std::sqrt(20000.0) * 1.01);
    EXPECT_THROW(pec_sample(c, dec, layers, rho, o, 0, 1), std::invalid_argument);
}

TEST(pec, mismatched_inputs) {
    Comb c = weak_comb(14);
    auto dec = decompose_inverse(c, default_basis());
    std::vector<Channel> none;
    ComplexMatrix rho = random_density(2, 15);
    EXPECT_THROW(pec_correct_exact(c, dec, none, rho, oracle::pauli(3, 1)), std::invalid_argument);
    std::vector<Channel> layers{channels::identity(2)};
    EXPECT_THROW(pec_correct_exact(c, dec, layers, rho, random_complex(2, 2, 1)), std::invalid_argument);
    Comb three = comb_from_env_model(weak_env_model(2, 2, 3, 0.2, 16));
    std::vector<Channel> two_layers{channels::identity(2), channels::identity(2)};
    EXPECT_THROW(pec_correct_exact(three, dec, two_layers, rho, oracle::pauli(3, 1)), std::invalid_argument);
}
