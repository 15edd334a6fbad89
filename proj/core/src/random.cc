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

#include "qcomb/random.h"

#include <cmath>
#include <random>

namespace qcomb {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t mix_seed(uint64_t seed, uint64_t index, uint64_t stream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (stream * 0xD1B54A32D192ED03ULL));
}

double counter_uniform(uint64_t seed, uint64_t index, uint64_t stream) {
    return static_cast<double>(mix_seed(seed, index, stream) >> 11) * 0x1.0p-53;
}

ComplexMatrix random_complex(size_t rows, size_t cols, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            double re = normal(rng);
            double im = normal(rng);
            m(r, c) = cplx(re, im);
        }
    }
    return m;
}

ComplexMatrix random_unitary_dim(size_t d, uint64_t seed) {
    ComplexMatrix g = random_complex(d, d, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); k++) {
        cplx diag = r(k, k);
        cplx phase = std::abs(diag) > 0 ? diag / std::abs(diag) : cplx(1.0);
        q.col(k) *= phase;
    }
    return q;
}

ComplexMatrix random_unitary(size_t n_qubits, uint64_t seed) {
    return random_unitary_dim(size_t{1} << n_qubits, seed);
}

Channel random_channel(size_t n_qubits, size_t kraus_rank, uint64_t seed) {
    if (kraus_rank == 0) {
        throw std::invalid_argument("Kraus rank must be at least 1");
    }
    const size_t d = size_t{1} << n_qubits;
    ComplexMatrix u = random_unitary_dim(d * kraus_rank, seed);
    // Isometry V = U[:, 0:d], rows indexed (output, env).
    std::vector<ComplexMatrix> kraus;
    for (size_t k = 0; k < kraus_rank; k++) {
        ComplexMatrix op(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (size_t o = 0; o < d; o++) {
            for (size_t i = 0; i < d; i++) {
                op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) =
                    u(static_cast<Eigen::Index>(o * kraus_rank + k), static_cast<Eigen::Index>(i));
            }
        }
        kraus.push_back(std::move(op));
    }
    return Channel::from_kraus(kraus);
}

ComplexMatrix random_density(size_t d, uint64_t seed, size_t rank) {
    if (rank == 0) {
        rank = d;
    }
    ComplexMatrix g = random_complex(d, rank, seed);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix random_hermitian(size_t d, uint64_t seed) {
    ComplexMatrix g = random_complex(d, d, seed);
    return 0.5 * (g + g.adjoint());
}

}  // namespace qcomb
