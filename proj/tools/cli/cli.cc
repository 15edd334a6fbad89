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

#include "cli/cli.h"

#include <algorithm>
#include <limits>

#include <CLI11.hpp>

#include "cli/spec.h"
#include "qcomb/pec.h"
#include "qcomb/vcp.h"

namespace qcomb::cli {

namespace {

using json = nlohmann::json;

struct Options {
    std::vector<std::string> specs;
    double tol = kChannelTol;
    uint64_t seed = 0;
    size_t samples = 0;
    size_t shots = 10000;
    bool slot = false;
    bool csv = false;
    std::vector<std::string> layers;
    std::string input = "0";
    std::string observable;
};

struct Outcome {
    json result;
    int code = kExitOk;
};

std::vector<Channel> build_layers(const Options &o, size_t teeth, size_t d) {
    std::vector<Channel> out;
    for (size_t m = 0; m + 1 < teeth; m++) {
        if (o.layers.empty()) {
            out.push_back(channels::identity(d));
        } else {
            out.push_back(parse_layer(o.layers[std::min(m, o.layers.size() - 1)], d));
        }
    }
    return out;
}

ComplexMatrix build_observable(const Options &o, size_t d) {
    if (!o.observable.empty()) {
        return parse_observable(o.observable, d);
    }
    size_t n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    return parse_observable(std::string(n, 'Z'), d);
}

ComplexMatrix ideal_output(std::span<const Channel> layers, const ComplexMatrix &input) {
    ComplexMatrix rho = input;
    for (const auto &l : layers) {
        rho = qcomb::apply(l, rho);
    }
    return rho;
}

json table_json(const PauliDiagTable &t) {
    json p = json::object();
    for (size_t k = 0; k < t.probs().size(); k++) {
        std::string label;
        for (const auto &s : t.labels(k)) {
            label += s;
        }
        p[label] = t.probs()[k];
    }
    return p;
}

json table_summary(const PauliDiagTable &t) {
    json r;
    r["p_table"] = table_json(t);
    json marginals = json::array();
    for (size_t m = 0; m < t.teeth(); m++) {
        json mj = json::object();
        auto marg = t.marginal(m);
        for (size_t a = 0; a < marg.size(); a++) {
            mj[PauliString::from_index(a, t.n_qubits()).str()] = marg[a];
        }
        marginals.push_back(std::move(mj));
    }
    r["marginals"] = std::move(marginals);
    r["tv_from_product"] = t.tv_from_product();
    r["total_correlation_bits"] = t.total_correlation();
    r["purity"] = t.purity();
    return r;
}

json header(const std::string &command, const NoiseModelSpec &spec) {
    json r;
    r["command"] = command;
    r["kind"] = spec.kind;
    r["teeth"] = spec.teeth;
    r["d_sys"] = spec.d_sys;
    return r;
}

Comb valid_comb(const NoiseModelSpec &spec, double tol) {
    Comb c = spec.comb();
    require_valid_comb(c, tol);
    return c;
}

Outcome cmd_validate(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = spec.comb();
    CombReport rep = validate_comb(c, o.tol);
    json r = header("validate", spec);
    r["valid"] = rep.passes;
    r["psd"] = rep.psd;
    r["min_eigenvalue"] = rep.min_eigenvalue;
    r["level_residuals"] = rep.level_residuals;
    r["trace_residual"] = rep.trace_residual;
    r["tol"] = o.tol;
    return {r, rep.passes ? kExitOk : kExitInvalid};
}

Outcome cmd_choi(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = valid_comb(spec, o.tol);
    Channel ch = o.slot ? slot_channel(c) : choi_channel(c);
    json r = header("choi", spec);
    r["representation"] = o.slot ? "slot_channel" : "choi_channel";
    r["dim"] = ch.d_in();
    r["matrix"] = matrix_to_json(ch.choi());
    return {r};
}

Outcome cmd_chi(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = valid_comb(spec, o.tol);
    ChiMatrix chi = comb_chi(c);
    auto labels = chi.basis_labels();
    json r = header("chi", spec);
    json diag = json::object();
    double trace = 0;
    for (size_t i = 0; i < labels.size(); i++) {
        double v = chi.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        diag[labels[i]] = v;
        trace += v;
    }
    r["labels"] = labels;
    r["diagonal"] = std::move(diag);
    r["trace"] = trace;
    r["off_diagonal_mass"] = off_diagonal_mass(chi);
    r["matrix"] = matrix_to_json(chi.matrix);
    return {r};
}

Outcome cmd_twirl(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = valid_comb(spec, o.tol);
    Comb tw = o.samples > 0 ? sampled_twirl(c, o.samples, o.seed) : twirl_comb(c);
    double before = off_diagonal_mass(comb_chi(c));
    double after = off_diagonal_mass(comb_chi(tw));
    // A finite sample leaves residual coherences; report them and read the
    // diagonal regardless.
    PauliDiagTable t = extract_pauli_diag(tw, o.samples > 0 ? std::numeric_limits<double>::infinity() : kPauliDiagonalTol);
    json r = header("twirl", spec);
    r.update(table_summary(t));
    r["samples"] = o.samples;
    r["seed"] = o.seed;
    r["off_diagonal_mass_before"] = before;
    r["off_diagonal_mass_after"] = after;
    return {r};
}

Outcome cmd_pec(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = valid_comb(spec, o.tol);
    auto layers = build_layers(o, spec.teeth, spec.d_sys);
    ComplexMatrix rho = parse_state(o.input, spec.d_sys);
    ComplexMatrix obs = build_observable(o, spec.d_sys);
    BasisOpSet basis = default_basis();
    BasisReport br = verify_basis_completeness(basis);
    QuasiProbDecomposition dec = decompose_inverse(c, basis);
    size_t terms = 0;
    for (double a : dec.alpha) {
        terms += a != 0.0;
    }
    json r = header("pec", spec);
    r["gamma"] = dec.gamma;
    r["condition_number"] = dec.condition_number;
    r["basis_condition_number"] = br.condition_number;
    r["residual"] = dec.residual;
    r["nonzero_terms"] = terms;
    r["convention"] = "direct";
    r["ideal"] = expectation(obs, ideal_output(layers, rho));
    r["noisy"] = expectation(obs, apply_comb(c, layers, rho));
    r["corrected_exact"] = pec_correct_exact(c, dec, layers, rho, obs);
    if (o.shots > 0) {
        PecEstimate est = pec_sample(c, dec, layers, rho, obs, o.shots, o.seed);
        r["sampled"] = {{"estimate", est.estimate}, {"std_error", est.std_error}, {"shots", est.shots}, {"seed", o.seed}};
    }
    return {r};
}

std::optional<PauliDiagTable> pauli_table_of(const Comb &c) {
    try {
        return extract_pauli_diag(c);
    } catch (const NumericalError &) {
        return std::nullopt;
    }
}

Outcome cmd_vcp(const Options &o) {
    if (o.specs.size() > 2) {
        throw SpecError("vcp takes one or two noise models");
    }
    NoiseModelSpec spec = load_spec(o.specs[0]);
    std::optional<NoiseModelSpec> spec2;
    if (o.specs.size() == 2) {
        spec2 = load_spec(o.specs[1]);
        if (spec2->teeth != spec.teeth || spec2->d_sys != spec.d_sys) {
            throw SpecError("the two copies have different shapes");
        }
    }
    Comb c = valid_comb(spec, o.tol);
    auto layers = build_layers(o, spec.teeth, spec.d_sys);
    ComplexMatrix rho = parse_state(o.input, spec.d_sys);
    ComplexMatrix obs = build_observable(o, spec.d_sys);

    VcpResult res;
    if (spec.teeth == 1) {
        if (spec2) {
            throw SpecError("single-tooth purification uses one noise model");
        }
        res = vcp_channel(choi_channel(c), rho);
    } else {
        auto d1 = spec.dilation();
        auto d2 = spec2 ? spec2->dilation() : d1;
        if (!d1 || !d2) {
            throw SpecError("comb purification needs env_model or pauli_correlated models");
        }
        if (spec2) {
            valid_comb(*spec2, o.tol);
        }
        if (layers.size() != 1) {
            throw std::invalid_argument("comb purification is implemented for two teeth");
        }
        res = vcp_comb(*d1, *d2, layers[0], rho);
    }

    json r = header("vcp", spec);
    r["virtual_state"] = matrix_to_json(res.virtual_state);
    r["physical_state"] = matrix_to_json(res.physical_state);
    r["p_plus"] = res.p_plus;
    r["p_minus"] = res.p_minus;
    r["p2"] = res.p2 ? json(*res.p2) : json(nullptr);
    ComplexMatrix ideal = ideal_output(layers, rho);
    r["expectation"] = {{"ideal", expectation(obs, ideal)},
                        {"noisy", expectation(obs, apply_comb(c, layers, rho))},
                        {"virtual", expectation(obs, res.virtual_state)},
                        {"physical", expectation(obs, res.physical_state)}};
    if (!spec2) {
        if (auto t = pauli_table_of(c)) {
            r["reference_virtual_distance"] =
                trace_distance(res.virtual_state, apply_pauli_table(purified_table(*t), layers, rho));
            r["reference_physical_distance"] =
                trace_distance(res.physical_state, apply_pauli_table(physical_table(*t), layers, rho));
        }
    }
    return {r};
}

Outcome cmd_oracle(const Options &o) {
    NoiseModelSpec spec = load_spec(o.specs[0]);
    Comb c = valid_comb(spec, o.tol);
    auto layers = build_layers(o, spec.teeth, spec.d_sys);
    ComplexMatrix rho = parse_state(o.input, spec.d_sys);
    ComplexMatrix oracle;
    std::string route;
    if (auto m = spec.dilation()) {
        oracle = simulate_env_model(*m, layers, rho);
        route = "environment_simulation";
    } else if (!spec.tooth_channels.empty()) {
        oracle = qcomb::apply(spec.tooth_channels[0], rho);
        for (size_t t = 1; t < spec.teeth; t++) {
            oracle = qcomb::apply(spec.tooth_channels[t], qcomb::apply(layers[t - 1], oracle));
        }
        route = "sequential_channels";
    } else {
        throw SpecError("oracle needs a model with an environment or per-tooth channels");
    }
    ComplexMatrix out = apply_comb(c, layers, rho);
    double dist = trace_distance(out, oracle);
    bool agree = dist <= o.tol;
    json r = header("oracle", spec);
    r["route"] = route;
    r["comb_output"] = matrix_to_json(out);
    r["oracle_output"] = matrix_to_json(oracle);
    r["trace_distance"] = dist;
    r["agree"] = agree;
    r["tol"] = o.tol;
    return {r, agree ? kExitOk : kExitInvalid};
}

void flatten(const json &j, const std::string &prefix, std::ostream &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); i++) {
            flatten(j[i], prefix + "." + std::to_string(i), out);
        }
    } else {
        out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum comb noise analysis: Choi/slot channels, Pauli twirling, PEC and VCP."};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub, size_t max_specs) {
        sub->add_option("spec", o.specs, "Noise model JSON file")->required()->expected(1, static_cast<int>(max_specs));
        sub->add_option("--tol", o.tol, "Validation tolerance")->capture_default_str();
        sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        sub->add_flag("--csv", o.csv, "Emit key,value lines instead of JSON");
    };
    auto circuit = [&](CLI::App *sub) {
        sub->add_option("--layer", o.layers, "Ideal layer between teeth (repeatable; the last is reused)");
        sub->add_option("--input", o.input, "Input state: 0 1 + - +i -i per qubit, or mixed")->capture_default_str();
        sub->add_option("--observable", o.observable, "Pauli observable (default Z on every qubit)");
    };

    auto *validate = app.add_subcommand("validate", "Check positivity and causality of a comb");
    common(validate, 1);
    auto *choi = app.add_subcommand("choi", "Print the Choi channel (or slot channel) matrix");
    common(choi, 1);
    choi->add_flag("--slot", o.slot, "Print the slot channel instead");
    auto *chi = app.add_subcommand("chi", "Print the chi matrix in the Pauli basis");
    common(chi, 1);
    auto *twirl = app.add_subcommand("twirl", "Pauli-twirl a comb and report its correlated Pauli table");
    common(twirl, 1);
    twirl->add_option("--samples", o.samples, "Sampled twirl with this many Pauli tuples (0 = exact)")
        ->capture_default_str();
    auto *pec = app.add_subcommand("pec", "Quasi-probability inverse and error-cancelled expectation values");
    common(pec, 1);
    circuit(pec);
    pec->add_option("--shots", o.shots, "Monte Carlo shots (0 = exact only)")->capture_default_str();
    auto *vcp = app.add_subcommand("vcp", "Two-copy virtual channel purification");
    common(vcp, 2);
    circuit(vcp);
    auto *oracle = app.add_subcommand("oracle", "Compare the comb output against direct simulation");
    common(oracle, 1);
    circuit(oracle);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Outcome result;
        if (*validate) {
            result = cmd_validate(o);
        } else if (*choi) {
            result = cmd_choi(o);
        } else if (*chi) {
            result = cmd_chi(o);
        } else if (*twirl) {
            result = cmd_twirl(o);
        } else if (*pec) {
            result = cmd_pec(o);
        } else if (*vcp) {
            result = cmd_vcp(o);
        } else {
            result = cmd_oracle(o);
        }
        if (o.csv) {
            flatten(result.result, "", out);
        } else {
            out << result.result.dump(2) << "\n";
        }
        return result.code;
    } catch (const SpecError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception &e) {
        err << "error: malformed noise model: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace qcomb::cli
