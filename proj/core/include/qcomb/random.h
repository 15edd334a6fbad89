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

#ifndef QCOMB_RANDOM_H
#define QCOMB_RANDOM_H

#include <cstdint>

#include "qcomb/channel.h"

namespace qcomb {

/// Counter-based uniform in [0, 1): a pure function of (seed, index, stream),
/// so sampled averages can be evaluated in any order.
double counter_uniform(uint64_t seed, uint64_t index, uint64_t stream = 0);
uint64_t mix_seed(uint64_t seed, uint64_t index, uint64_t stream = 0);

/// Haar unitary from the QR decomposition of a seeded complex Gaussian matrix
/// (with the R-diagonal phase fix).
ComplexMatrix random_unitary_dim(size_t d, uint64_t seed);
ComplexMatrix random_unitary(size_t n_qubits, uint64_t seed);

/// Channel from the Stinespring isometry given by the first d columns of a
/// random (d * rank)-dimensional unitary.
Channel random_channel(size_t n_qubits, size_t kraus_rank, uint64_t seed);

/// Mixed state of the given rank (rank = d gives a full-rank state).
ComplexMatrix random_density(size_t d, uint64_t seed, size_t rank = 0);
ComplexMatrix random_hermitian(size_t d, uint64_t seed);
ComplexMatrix random_complex(size_t rows, size_t cols, uint64_t seed);

}  // namespace qcomb

#endif
