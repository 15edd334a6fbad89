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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qcomb/random.h"

using namespace qcomb;

namespace {

std::vector<ComplexMatrix> random_kraus(size_t d, size_t rank, uint64_t seed) {
    // Isometry columns of a Haar unitary split into rank blocks.
    ComplexMatrix u = random_unitary_dim(d * rank, seed);
    std::vector<ComplexMatrix> ks;
    for (size_t k = 0; k < rank; k++) {
        ComplexMatrix kk(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (size_t o = 0; o < d; o++) {
            for (size_t i = 0; i < d; i++) {
                kk(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) =
                    u(static_cast<Eigen::Index>(o * rank + k), static_cast<Eigen::Index>(i));
            }
        }
        ks.push_back(kk);
    }
    return ks;
}

}  // namespace

TEST(channel, kraus_application_matches_oracle) {
    for (uint64_t seed = 0; seed < 10; seed++) {
        auto ks = random_kraus(3, 2, 100 + seed);
        Channel c = Channel::from_kraus(ks);
        ComplexMatrix rho = random_density(3, 200 + seed);
        EXPECT_LT((qcomb::apply(c, rho) - oracle::apply_kraus(ks, rho)).norm(), 1e-13);
        EXPECT_NEAR(c.choi().trace().real(), 3.0, 1e-12);

        // Choi matrix from its definition.
        ComplexMatrix j = ComplexMatrix::Zero(9, 9);
        for (size_t a = 0; a < 3; a++) {
            for (size_t b = 0; b < 3; b++) {
                ComplexMatrix e = ComplexMatrix::Zero(3, 3);
                e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1;
                j += oracle::kron(oracle::apply_kraus(ks, e), e);
            }
        }
        EXPECT_LT((c.choi() - j).norm(), 1e-13);
    }
}

TEST(channel, kraus_extraction_round_trip) {
    Channel c = random_channel(1, 3, 41);
    auto ks = c.kraus();
    EXPECT_LE(ks.size(), 4u);
    EXPECT_LT((choi_from_kraus(ks) - c.choi()).norm(), 1e-12);
}

TEST(channel, rejects_non_cptp) {
    ComplexMatrix k = ComplexMatrix::Identity(2, 2) * 1.1;
    std::vector<ComplexMatrix> ks{k};
    EXPECT_THROW(Channel::from_kraus(ks), std::invalid_argument);
    // Transpose map: TP but not CP.
    ComplexMatrix swap = oracle::swap_wires({2, 2}, 0, 1);
    EXPECT_THROW(Channel(swap, 2, 2), std::invalid_argument);
    EXPECT_THROW(Channel(ComplexMatrix::Identity(4, 4), 2, 3), std::invalid_argument);
}

TEST(channel, compose_and_tensor) {
    Channel a = random_channel(1, 2, 42);
    Channel b = random_channel(1, 3, 43);
    ComplexMatrix rho = random_density(2, 44);
    EXPECT_LT((qcomb::apply(compose(b, a), rho) - qcomb::apply(b, qcomb::apply(a, rho))).norm(), 1e-13);

    ComplexMatrix sigma = random_density(2, 45);
    Channel ab = tensor(a, b);
    EXPECT_LT(
        (qcomb::apply(ab, oracle::kron(rho, sigma)) - oracle::kron(qcomb::apply(a, rho), qcomb::apply(b, sigma)))
            .norm(),
        1e-13);
}

TEST(channel, apply_on_wires) {
    Channel c = random_channel(1, 2, 46);
    ComplexMatrix state = random_density(8, 47);
    std::vector<size_t> dims{2, 2, 2};
    std::vector<size_t> wires{1};
    auto ks = c.kraus();
    std::vector<ComplexMatrix> lifted;
    for (const auto &k : ks) {
        lifted.push_back(oracle::embed(k, dims, {1}));
    }
    EXPECT_LT((apply_choi_on_wires(c.choi(), state, dims, wires) - oracle::apply_kraus(lifted, state)).norm(), 1e-13);
}

TEST(channel, swap_choi_wires) {
    Channel c = random_channel(1, 2, 48);
    ComplexMatrix s = oracle::swap_wires({2, 2}, 0, 1);
    EXPECT_LT((swap_choi_wires(c.choi(), 2, 2) - s * c.choi() * s).norm(), 1e-14);
}

TEST(channel, named_channels) {
    ComplexMatrix rho = random_density(2, 49);
    ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    EXPECT_LT((qcomb::apply(channels::depolarizing(0.3), rho) - (0.7 * rho + 0.3 * id / 2.0)).norm(), 1e-14);
    EXPECT_LT((qcomb::apply(channels::completely_depolarizing(2), rho) - id / 2.0).norm(), 1e-14);
    EXPECT_LT((qcomb::apply(channels::identity(2), rho) - rho).norm(), 1e-15);

    std::map<std::string, double> probs{{"I", 0.6}, {"X", 0.3}, {"Z", 0.1}};
    ComplexMatrix want = 0.6 * rho + 0.3 * oracle::pauli(1, 1) * rho * oracle::pauli(1, 1) +
                         0.1 * oracle::pauli(3, 1) * rho * oracle::pauli(3, 1);
    EXPECT_LT((qcomb::apply(channels::pauli_channel(probs), rho) - want).norm(), 1e-14);

    Channel ad = channels::amplitude_damping(0.25);
    ComplexMatrix one = ComplexMatrix::Zero(2, 2);
    one(1, 1) = 1;
    ComplexMatrix out = qcomb::apply(ad, one);
    EXPECT_NEAR(out(0, 0).real(), 0.25, 1e-15);
    EXPECT_NEAR(out(1, 1).real(), 0.75, 1e-15);

    EXPECT_THROW(channels::depolarizing(1.5), std::invalid_argument);
    std::map<std::string, double> bad{{"I", 0.5}, {"X", 0.2}};
    EXPECT_THROW(channels::pauli_channel(bad), std::invalid_argument);
}

TEST(channel, gates) {
    EXPECT_TRUE(is_unitary(gates::hadamard()));
    ComplexMatrix s = gates::phase();
    EXPECT_LT((s * s - oracle::pauli(3, 1)).norm(), 1e-15);
    ComplexMatrix t = gates::t_gate();
    EXPECT_LT((t * t - s).norm(), 1e-15);
    ComplexMatrix rx = gates::rotation(1, 0, 0, M_PI);
    EXPECT_LT((rx - cplx(0, -1) * oracle::pauli(1, 1)).norm(), 1e-15);
    EXPECT_LT((gates::swap(2) - oracle::swap_wires({2, 2}, 0, 1)).norm(), 1e-15);
}

TEST(channel, chi_trace_is_one) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        Channel c = random_channel(1 + seed % 2, 1 + seed % 4, 300 + seed);
        ChiMatrix chi = to_chi(c);
        EXPECT_NEAR(std::abs(chi.matrix.trace() - cplx(1.0)), 0.0, 1e-10);
        EXPECT_TRUE(psd_check(chi.matrix).is_psd);
        EXPECT_LT(choi_distance(from_chi(chi), c), 1e-12);
    }
}

TEST(channel, from_chi_rejects_unphysical) {
    ChiMatrix chi{ComplexMatrix::Zero(4, 4), 1};
    chi.matrix(0, 0) = 1.2;
    chi.matrix(1, 1) = -0.2;
    EXPECT_THROW(from_chi(chi), std::invalid_argument);
    chi.matrix(1, 1) = 0.2;
    EXPECT_THROW(from_chi(chi), std::invalid_argument);
}

TEST(channel, ptm_round_trip) {
    Channel c = random_channel(2, 2, 50);
    PTM r = to_ptm(c);
    EXPECT_LT(choi_distance(from_ptm(r), c), 1e-12);
    EXPECT_EQ(r.n_qubits, 2u);
}
