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

#ifndef QCOMB_CLI_SPEC_H
#define QCOMB_CLI_SPEC_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcomb/comb.h"
#include "qcomb/twirl.h"

namespace qcomb::cli {

/// Malformed input: bad JSON, unknown fields values, missing keys. Distinct
/// from physically invalid models, which surface as library exceptions.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed noise-model file. See docs/noise_model_spec.md for the format.
struct NoiseModelSpec {
    std::string kind;
    size_t teeth = 0;
    size_t d_sys = 2;
    uint64_t seed = 0;
    std::string description;

    std::optional<EnvModel> env_model;
    std::vector<Channel> tooth_channels;
    std::optional<PauliDiagTable> table;
    std::optional<Comb> explicit_comb;

    Comb comb() const;
    /// Environment dilation, when the model has one.
    std::optional<EnvModel> dilation() const;
};

NoiseModelSpec parse_spec(const nlohmann::json &j);
NoiseModelSpec load_spec(const std::string &path);

/// Entries are numbers or [re, im] pairs; rows are arrays.
ComplexMatrix parse_matrix(const nlohmann::json &j);
nlohmann::json matrix_to_json(const ComplexMatrix &m);

Channel parse_channel(const nlohmann::json &j, size_t d);

/// "0", "1", "+", "-", "+i", "-i" per qubit (e.g. "0+"), or "mixed".
ComplexMatrix parse_state(const std::string &s, size_t d);
/// Gates I X Y Z H S T, rx:theta ry:theta rz:theta; qubits separated by ','
/// for multi-qubit systems, or "swap" / "cx" on two qubits.
Channel parse_layer(const std::string &s, size_t d);
/// Pauli string such as "Z" or "XZ", optionally with a leading sign.
ComplexMatrix parse_observable(const std::string &s, size_t d);

}  // namespace qcomb::cli

#endif
