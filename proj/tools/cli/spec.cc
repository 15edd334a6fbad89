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

#include "cli/spec.h"

#include <fstream>
#include <map>

#include "qcomb/random.h"

namespace qcomb::cli {

namespace {

using json = nlohmann::json;
using Idx = Eigen::Index;

const json &require(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SpecError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const json &j, const char *what) {
    if (!j.is_number()) {
        throw SpecError(std::string("'") + what + "' must be a number");
    }
    return j.get<double>();
}

size_t count(const json &j, const char *what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw SpecError(std::string("'") + what + "' must be a non-negative integer");
    }
    return j.get<size_t>();
}

size_t dim_from_qubits(const json &j) {
    size_t n = j.contains("n_qubits") ? count(j.at("n_qubits"), "n_qubits") : 1;
    if (n == 0 || n > 4) {
        throw SpecError("'n_qubits' must be between 1 and 4");
    }
    return size_t{1} << n;
}

size_t qubits_of(size_t d) {
    size_t n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    return n;
}

cplx parse_entry(const json &e) {
    if (e.is_number()) {
        return {e.get<double>(), 0.0};
    }
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    throw SpecError("matrix entries must be numbers or [re, im] pairs");
}

PauliDiagTable parse_table(const json &j, size_t n_qubits, std::optional<size_t> teeth) {
    const json &probs = require(j, "probs");
    const size_t per = size_t{1} << (2 * n_qubits);
    if (probs.is_array()) {
        size_t m = 0;
        size_t total = 1;
        while (total < probs.size()) {
            total *= per;
            m++;
        }
        if (total != probs.size() || m == 0) {
            throw SpecError("flat 'probs' length must be a power of 4^n_qubits");
        }
        if (teeth && *teeth != m) {
            throw SpecError("'probs' length does not match 'teeth'");
        }
        std::vector<double> p;
        for (const auto &x : probs) {
            p.push_back(number(x, "probs"));
        }
        return PauliDiagTable(std::move(p), m, n_qubits);
    }
    if (!probs.is_object() || probs.empty()) {
        throw SpecError("'probs' must be an object keyed by Pauli strings or a flat array");
    }
    std::map<std::string, double> entries;
    size_t letters = 0;
    for (const auto &[key, value] : probs.items()) {
        std::string clean;
        for (char ch : key) {
            if (ch != ',' && ch != ' ') {
                clean.push_back(ch);
            }
        }
        if (letters == 0) {
            letters = clean.size();
        } else if (clean.size() != letters) {
            throw SpecError("Pauli keys in 'probs' have different lengths");
        }
        entries[clean] += number(value, "probs");
    }
    if (letters == 0 || letters % n_qubits != 0) {
        throw SpecError("Pauli keys must have n_qubits letters per tooth");
    }
    const size_t m = letters / n_qubits;
    if (teeth && *teeth != m) {
        throw SpecError("Pauli key length does not match 'teeth'");
    }
    size_t total = 1;
    for (size_t t = 0; t < m; t++) {
        total *= per;
    }
    std::vector<double> p(total, 0.0);
    for (const auto &[key, value] : entries) {
        PauliString s;
        try {
            s = PauliString::parse(key);
        } catch (const std::invalid_argument &e) {
            throw SpecError("bad Pauli key '" + key + "'");
        }
        p[s.index()] = value;
    }
    return PauliDiagTable(std::move(p), m, n_qubits);
}

EnvModel parse_env_model(const json &j, uint64_t seed, bool has_seed) {
    if (j.contains("random")) {
        const json &r = j.at("random");
        if (!has_seed) {
            throw SpecError("random env_model needs metadata.seed");
        }
        size_t d_sys = dim_from_qubits(j);
        size_t d_env = r.contains("d_env") ? count(r.at("d_env"), "d_env") : 2;
        size_t teeth = count(require(j, "teeth"), "teeth");
        if (d_env == 0 || teeth == 0) {
            throw SpecError("'d_env' and 'teeth' must be positive");
        }
        if (r.contains("strength")) {
            return weak_env_model(d_sys, d_env, teeth, number(r.at("strength"), "strength"), seed);
        }
        return random_env_model(d_sys, d_env, teeth, seed);
    }
    EnvModel m;
    m.env_init = parse_matrix(require(j, "env_init"));
    m.d_env = static_cast<size_t>(m.env_init.rows());
    const json &ints = require(j, "interactions");
    if (!ints.is_array() || ints.empty()) {
        throw SpecError("'interactions' must be a non-empty array of matrices");
    }
    for (const auto &u : ints) {
        m.interactions.push_back(parse_matrix(u));
    }
    const size_t joint = static_cast<size_t>(m.interactions[0].rows());
    if (m.d_env == 0 || joint % m.d_env != 0) {
        throw SpecError("interaction dimension is not a multiple of the environment dimension");
    }
    m.d_sys = joint / m.d_env;
    if (j.contains("teeth") && count(j.at("teeth"), "teeth") != m.interactions.size()) {
        throw SpecError("'teeth' does not match the number of interactions");
    }
    m.validate();
    return m;
}

}  // namespace

ComplexMatrix parse_matrix(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw SpecError("matrix must be a non-empty array of rows");
    }
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Idx>(rows), static_cast<Idx>(cols));
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw SpecError("matrix rows have different lengths");
        }
        for (size_t c = 0; c < cols; c++) {
            m(static_cast<Idx>(r), static_cast<Idx>(c)) = parse_entry(j[r][c]);
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Idx r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Idx c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Channel parse_channel(const json &j, size_t d) {
    const json &type_field = require(j, "type");
    if (!type_field.is_string()) {
        throw SpecError("channel 'type' must be a string");
    }
    const std::string type = type_field.get<std::string>();
    if (type == "identity") {
        return channels::identity(d);
    }
    if (type == "depolarizing") {
        return channels::depolarizing(number(require(j, "p"), "p"), qubits_of(d));
    }
    if (type == "completely_depolarizing") {
        return channels::completely_depolarizing(d);
    }
    if (type == "amplitude_damping") {
        if (d != 2) {
            throw SpecError("amplitude_damping is a single-qubit channel");
        }
        return channels::amplitude_damping(number(require(j, "gamma"), "gamma"));
    }
    if (type == "pauli") {
        PauliDiagTable t = parse_table(j, qubits_of(d), 1);
        return channels::pauli_channel(t.probs());
    }
    if (type == "unitary") {
        ComplexMatrix u = parse_matrix(require(j, "matrix"));
        if (u.rows() != static_cast<Idx>(d) || u.cols() != static_cast<Idx>(d)) {
            throw SpecError("unitary has the wrong dimension");
        }
        return channels::unitary(u);
    }
    if (type == "kraus") {
        const json &ops = require(j, "operators");
        if (!ops.is_array() || ops.empty()) {
            throw SpecError("'operators' must be a non-empty array of matrices");
        }
        std::vector<ComplexMatrix> kraus;
        for (const auto &k : ops) {
            kraus.push_back(parse_matrix(k));
            if (kraus.back().rows() != static_cast<Idx>(d) || kraus.back().cols() != static_cast<Idx>(d)) {
                throw SpecError("Kraus operator has the wrong dimension");
            }
        }
        return Channel::from_kraus(kraus);
    }
    throw SpecError("unknown channel type '" + type + "'");
}

ComplexMatrix parse_state(const std::string &s, size_t d) {
    if (s == "mixed") {
        return identity(d) / static_cast<double>(d);
    }
    ComplexVector psi = ComplexVector::Ones(1);
    const cplx i(0, 1);
    const double r = 1 / std::sqrt(2.0);
    for (size_t k = 0; k < s.size(); k++) {
        ComplexVector q(2);
        char ch = s[k];
        bool imag = k + 1 < s.size() && s[k + 1] == 'i';
        if (ch == '0') {
            q << 1, 0;
        } else if (ch == '1') {
            q << 0, 1;
        } else if (ch == '+') {
            q << r, imag ? r * i : cplx(r);
        } else if (ch == '-') {
            q << r, imag ? -r * i : cplx(-r);
        } else {
            throw SpecError("bad input state '" + s + "'");
        }
        if (imag) {
            k++;
        }
        ComplexVector next(psi.size() * 2);
        for (Idx a = 0; a < psi.size(); a++) {
            next.segment(2 * a, 2) = psi(a) * q;
        }
        psi = std::move(next);
    }
    if (psi.size() != static_cast<Idx>(d)) {
        throw SpecError("input state '" + s + "' does not match the system dimension");
    }
    return psi * psi.adjoint();
}

namespace {

ComplexMatrix single_gate(const std::string &g) {
    auto colon = g.find(':');
    if (colon != std::string::npos) {
        std::string axis = g.substr(0, colon);
        double theta;
        try {
            size_t used = 0;
            theta = std::stod(g.substr(colon + 1), &used);
            if (used != g.size() - colon - 1) {
                throw std::invalid_argument("trailing");
            }
        } catch (const std::exception &) {
            throw SpecError("bad rotation angle in '" + g + "'");
        }
        if (axis == "rx") {
            return gates::rotation(1, 0, 0, theta);
        }
        if (axis == "ry") {
            return gates::rotation(0, 1, 0, theta);
        }
        if (axis == "rz") {
            return gates::rotation(0, 0, 1, theta);
        }
        throw SpecError("unknown rotation '" + g + "'");
    }
    if (g == "I") {
        return identity(2);
    }
    if (g == "X") {
        return pauli_matrix(Pauli::X);
    }
    if (g == "Y") {
        return pauli_matrix(Pauli::Y);
    }
    if (g == "Z") {
        return pauli_matrix(Pauli::Z);
    }
    if (g == "H") {
        return gates::hadamard();
    }
    if (g == "S") {
        return gates::phase();
    }
    if (g == "T") {
        return gates::t_gate();
    }
    throw SpecError("unknown gate '" + g + "'");
}

}  // namespace

Channel parse_layer(const std::string &s, size_t d) {
    if (d == 4 && (s == "swap" || s == "cx")) {
        if (s == "swap") {
            return channels::unitary(gates::swap(2));
        }
        ComplexMatrix cx = ComplexMatrix::Zero(4, 4);
        cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
        return channels::unitary(cx);
    }
    ComplexMatrix u = ComplexMatrix::Ones(1, 1);
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        u = tensor(u, single_gate(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (u.rows() != static_cast<Idx>(d)) {
        throw SpecError("layer '" + s + "' does not match the system dimension");
    }
    return channels::unitary(u);
}

ComplexMatrix parse_observable(const std::string &s, size_t d) {
    double sign = 1;
    std::string body = s;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        sign = body[0] == '-' ? -1 : 1;
        body = body.substr(1);
    }
    PauliString p;
    try {
        p = PauliString::parse(body);
    } catch (const std::invalid_argument &) {
        throw SpecError("bad observable '" + s + "'");
    }
    if (p.n_qubits() == 0 || (size_t{1} << p.n_qubits()) != d) {
        throw SpecError("observable '" + s + "' does not match the system dimension");
    }
    return sign * pauli_matrix(p);
}

NoiseModelSpec parse_spec(const json &j) {
    if (!j.is_object()) {
        throw SpecError("noise model must be a JSON object");
    }
    NoiseModelSpec spec;
    const json &kind = require(j, "kind");
    if (!kind.is_string()) {
        throw SpecError("'kind' must be a string");
    }
    spec.kind = kind.get<std::string>();
    bool has_seed = false;
    if (j.contains("metadata")) {
        const json &meta = j.at("metadata");
        if (!meta.is_object()) {
            throw SpecError("'metadata' must be an object");
        }
        if (meta.contains("seed")) {
            spec.seed = static_cast<uint64_t>(count(meta.at("seed"), "seed"));
            has_seed = true;
        }
        if (meta.contains("description") && meta.at("description").is_string()) {
            spec.description = meta.at("description").get<std::string>();
        }
    }

    if (spec.kind == "env_model") {
        spec.env_model = parse_env_model(j, spec.seed, has_seed);
        spec.teeth = spec.env_model->teeth();
        spec.d_sys = spec.env_model->d_sys;
    } else if (spec.kind == "markovian") {
        spec.d_sys = dim_from_qubits(j);
        if (j.contains("channels")) {
            const json &chs = j.at("channels");
            if (!chs.is_array() || chs.empty()) {
                throw SpecError("'channels' must be a non-empty array");
            }
            for (const auto &c : chs) {
                spec.tooth_channels.push_back(parse_channel(c, spec.d_sys));
            }
            if (j.contains("teeth") && count(j.at("teeth"), "teeth") != spec.tooth_channels.size()) {
                throw SpecError("'teeth' does not match the number of channels");
            }
        } else {
            size_t teeth = count(require(j, "teeth"), "teeth");
            if (teeth == 0) {
                throw SpecError("'teeth' must be positive");
            }
            Channel c = parse_channel(require(j, "channel"), spec.d_sys);
            spec.tooth_channels.assign(teeth, c);
        }
        spec.teeth = spec.tooth_channels.size();
    } else if (spec.kind == "pauli_correlated") {
        spec.d_sys = dim_from_qubits(j);
        std::optional<size_t> teeth;
        if (j.contains("teeth")) {
            teeth = count(j.at("teeth"), "teeth");
        }
        spec.table = parse_table(j, qubits_of(spec.d_sys), teeth);
        spec.teeth = spec.table->teeth();
    } else if (spec.kind == "choi_explicit") {
        spec.teeth = count(require(j, "teeth"), "teeth");
        spec.d_sys = j.contains("d_sys") ? count(j.at("d_sys"), "d_sys") : dim_from_qubits(j);
        ComplexMatrix choi = parse_matrix(require(j, "choi"));
        size_t expected = 1;
        for (size_t t = 0; t < 2 * spec.teeth; t++) {
            expected *= spec.d_sys;
        }
        if (spec.teeth == 0 || choi.rows() != static_cast<Idx>(expected) || choi.cols() != choi.rows()) {
            throw SpecError("'choi' must be d_sys^(2 teeth) square");
        }
        spec.explicit_comb.emplace(choi, spec.teeth, spec.d_sys);
    } else {
        throw SpecError("unknown kind '" + spec.kind + "'");
    }
    return spec;
}

NoiseModelSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw SpecError("'" + path + "' is not valid JSON: " + e.what());
    }
    return parse_spec(j);
}

Comb NoiseModelSpec::comb() const {
    if (env_model) {
        return comb_from_env_model(*env_model);
    }
    if (table) {
        return pauli_correlated_comb(*table);
    }
    if (explicit_comb) {
        return *explicit_comb;
    }
    return markovian_comb(tooth_channels);
}

std::optional<EnvModel> NoiseModelSpec::dilation() const {
    if (env_model) {
        return env_model;
    }
    if (table) {
        return pauli_correlated_env_model(*table);
    }
    return std::nullopt;
}

}  // namespace qcomb::cli
