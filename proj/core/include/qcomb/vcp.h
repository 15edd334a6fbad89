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

#ifndef QCOMB_VCP_H
#define QCOMB_VCP_H

#include <optional>

#include "qcomb/twirl.h"

/// Virtual channel purification with two noisy copies, simulated on full
/// density matrices. A control qubit in |+> drives controlled-SWAPs between
/// the main register and an ancilla register around each noisy step, and is
/// finally read out in the X basis.
namespace qcomb {

struct VcpResult {
    /// (rho_+ - rho_-) / (p_+ - p_-).
    ComplexMatrix virtual_state;
    /// rho_+ / p_+.
    ComplexMatrix physical_state;
    double p_plus = 0;
    double p_minus = 0;
    /// Purity of the noise's Pauli distribution, when the noise is
    /// Pauli-diagonal.
    std::optional<double> p2;
};

/// Ancilla starts maximally mixed. Only copies == 2 is supported.
VcpResult vcp_channel(const Channel &noise, const ComplexMatrix &input, size_t copies = 2);

/// Two-tooth version: CSWAP, tooth 1 on both copies, CSWAP, `layer` on the
/// main register while the ancilla is reset to maximally mixed, CSWAP,
/// tooth 2 on both copies, CSWAP. Copy 1 acts on main (x) env1 and copy 2 on
/// ancilla (x) env2. Throws std::invalid_argument unless both models have
/// two teeth and the same system dimension.
VcpResult vcp_comb(const EnvModel &copy1, const EnvModel &copy2, const Channel &layer, const ComplexMatrix &input);
/// Both copies given by the dilation of a Pauli-diagonal table.
VcpResult vcp_comb(const PauliDiagTable &table, const Channel &layer, const ComplexMatrix &input);

/// p^2 / P_2.
PauliDiagTable purified_table(const PauliDiagTable &table);
/// (p + p^2) / (1 + P_2).
PauliDiagTable physical_table(const PauliDiagTable &table);

}  // namespace qcomb

#endif
