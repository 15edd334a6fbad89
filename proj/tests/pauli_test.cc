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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qcomb/channel.h"
#include "qcomb/random.h"

using namespace qcomb;

TEST(pauli, string_indexing) {
    EXPECT_EQ(PauliString::parse("XZ").index(), 7u);
    EXPECT_EQ(PauliString::parse("iyz").str(), "IYZ");
    EXPECT_EQ(PauliString::from_index(27, 3).str(), "XYZ");
    for (size_t k = 0; k < 64; k++) {
        EXPECT_EQ(PauliString::from_index(k, 3).index(), k);
    }
    EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
    auto labels = pauli_labels(2);
    ASSERT_EQ(labels.size(), 16u);
    EXPECT_EQ(labels[7], "XZ");
}

TEST(pauli, matrices_match_literals) {
    for (size_t n = 1; n <= 2; n++) {
        auto basis = pauli_basis(n);
        for (size_t k = 0; k < basis.size(); k++) {
            EXPECT_LT((basis[k] - oracle::pauli(k, n)).norm(), 1e-15);
        }
    }
}

TEST(pauli, basis_is_orthogonal) {
    auto basis = pauli_basis(2);
    for (size_t a = 0; a < basis.size(); a++) {
        for (size_t b = 0; b < basis.size(); b++) {
            cplx ip = (basis[a].adjoint() * basis[b]).trace();
            EXPECT_NEAR(std::abs(ip - cplx(a == b ? 4.0 : 0.0)), 0.0, 1e-14);
        }
    }
}

TEST(pauli, qubit_count) {
    EXPECT_EQ(qubit_count(8), 3u);
    EXPECT_THROW(qubit_count(6), std::invalid_argument);
}

TEST(pauli, chi_choi_ptm_round_trips) {
    Channel c = random_channel(2, 3, 31);
    ChiMatrix chi = chi_from_choi(c.choi(), 2);
    EXPECT_LT((chi.matrix - oracle::chi_of_choi(c.choi(), 2)).norm(), 1e-13);
    EXPECT_LT((choi_from_chi(chi) - c.choi()).norm(), 1e-12);
    RealMatrix ptm = ptm_from_choi(c.choi(), 2);
    EXPECT_LT((choi_from_ptm(ptm, 2) - c.choi()).norm(), 1e-12);
    EXPECT_LT((chi_from_ptm(ptm, 2).matrix - chi.matrix).norm(), 1e-12);
}

TEST(pauli, chi_expansion_reproduces_channel) {
    Channel c = random_channel(1, 2, 32);
    ChiMatrix chi = chi_from_choi(c.choi(), 1);
    ComplexMatrix rho = random_density(2, 33);
    ComplexMatrix want = qcomb::apply(c, rho);
    ComplexMatrix got = ComplexMatrix::Zero(2, 2);
    for (size_t i = 0; i < 4; i++) {
        for (size_t k = 0; k < 4; k++) {
            got += chi.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * oracle::pauli(i, 1) * rho *
                   oracle::pauli(k, 1);
        }
    }
    EXPECT_LT((got - want).norm(), 1e-13);
}

TEST(pauli, ptm_definition) {
    Channel c = random_channel(1, 2, 34);
    RealMatrix r = ptm_from_choi(c.choi(), 1);
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            double want = (oracle::pauli(a, 1) * apply_choi(c.choi(), 2, 2, oracle::pauli(b, 1))).trace().real() / 2;
            EXPECT_NEAR(r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), want, 1e-13);
        }
    }
    // Trace preservation: first row is (1, 0, 0, 0).
    EXPECT_NEAR(r(0, 0), 1.0, 1e-13);
    EXPECT_NEAR(r.row(0).tail(3).norm(), 0.0, 1e-13);
}

TEST(pauli, off_diagonal_mass) {
    ChiMatrix chi{ComplexMatrix::Zero(4, 4), 1};
    chi.matrix(0, 0) = 0.5;
    chi.matrix(1, 2) = cplx(0.1, 0.1);
    chi.matrix(2, 1) = cplx(0.1, -0.1);
    EXPECT_NEAR(off_diagonal_mass(chi), 2 * std::sqrt(0.02), 1e-15);
}
