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

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/spec.h"

using namespace qcomb;
using namespace qcomb::cli;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run_in_process(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string &name) {
    return std::string(QCOMB_FIXTURE_DIR) + "/" + name;
}

Invocation run_binary(const std::string &args) {
    std::string cmd = std::string(QCOMB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST(cli, validate_fixtures) {
    for (const char *name : {"identity.json", "depolarizing_weak.json", "depolarizing_strong.json", "random_env.json",
                             "weak_env.json", "correlated_env.json", "pauli_xz.json", "pauli_channel.json",
                             "choi_identity.json"}) {
        Invocation r = run_in_process({"validate", fixture(name)});
        EXPECT_EQ(r.code, kExitOk) << name << r.err;
        auto j = nlohmann::json::parse(r.out);
        EXPECT_TRUE(j["valid"].get<bool>()) << name;
    }
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run_in_process({"validate", fixture("malformed.json")}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"validate", fixture("unknown_kind.json")}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"validate", fixture("missing.json")}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"validate", fixture("non_stochastic.json")}).code, kExitInvalid);
    EXPECT_EQ(run_in_process({"validate", fixture("non_tp_kraus.json")}).code, kExitInvalid);
    EXPECT_EQ(run_in_process({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run_in_process({}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"pec", fixture("identity.json"), "--layer", "Q"}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"pec", fixture("identity.json"), "--input", "2"}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"pec", fixture("identity.json"), "--shots", "many"}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"oracle", fixture("choi_identity.json")}).code, kExitUsage);
    EXPECT_EQ(run_in_process({"--help"}).code, kExitOk);
}

TEST(cli, singular_noise_fails_pec) {
    // Completely depolarizing teeth have no inverse.
    nlohmann::json spec = {{"kind", "markovian"}, {"teeth", 2}, {"channel", {{"type", "completely_depolarizing"}}}};
    std::string path = testing::TempDir() + "/cd.json";
    {
        std::ofstream f(path);
        f << spec.dump();
    }
    Invocation r = run_in_process({"pec", path});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_NE(r.err.find("condition"), std::string::npos);
}

TEST(cli, twirl_reports_correlations) {
    Invocation r = run_in_process({"twirl", fixture("correlated_env.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_GT(j["tv_from_product"].get<double>(), 0.05);
    EXPECT_LT(j["off_diagonal_mass_after"].get<double>(), 1e-10);

    Invocation m = run_in_process({"twirl", fixture("depolarizing_strong.json")});
    auto jm = nlohmann::json::parse(m.out);
    EXPECT_LT(jm["tv_from_product"].get<double>(), 1e-12);
}

TEST(cli, pec_corrects_weak_noise) {
    Invocation r = run_in_process(
        {"pec", fixture("weak_env.json"), "--layer", "H", "--input", "+", "--observable", "X", "--shots", "2000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["corrected_exact"].get<double>(), j["ideal"].get<double>(), 1e-9);
    EXPECT_GE(j["gamma"].get<double>(), 1.0);
    EXPECT_EQ(j["sampled"]["shots"].get<size_t>(), 2000u);

    Invocation id = run_in_process({"pec", fixture("identity.json"), "--shots", "0"});
    auto ji = nlohmann::json::parse(id.out);
    EXPECT_EQ(ji["gamma"].get<double>(), 1.0);
    EXPECT_FALSE(ji.contains("sampled"));
}

TEST(cli, vcp_reference_tables) {
    Invocation r = run_in_process({"vcp", fixture("pauli_xz.json"), "--layer", "H", "--input", "+i"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["p2"].get<double>(), 0.82, 1e-12);
    EXPECT_NEAR(j["p_plus"].get<double>() - j["p_minus"].get<double>(), 0.82, 1e-12);
    EXPECT_LT(j["reference_virtual_distance"].get<double>(), 1e-10);
    EXPECT_LT(j["reference_physical_distance"].get<double>(), 1e-10);

    Invocation ch = run_in_process({"vcp", fixture("pauli_channel.json")});
    ASSERT_EQ(ch.code, kExitOk) << ch.err;
    EXPECT_LT(nlohmann::json::parse(ch.out)["reference_virtual_distance"].get<double>(), 1e-10);

    Invocation two = run_in_process({"vcp", fixture("random_env.json"), fixture("weak_env.json"), "--layer", "S"});
    ASSERT_EQ(two.code, kExitOk) << two.err;
    EXPECT_TRUE(nlohmann::json::parse(two.out)["p2"].is_null());

    EXPECT_EQ(run_in_process({"vcp", fixture("depolarizing_weak.json")}).code, kExitUsage);
}

TEST(cli, oracle_agrees) {
    for (const char *name : {"random_env.json", "correlated_env.json", "pauli_xz.json", "depolarizing_strong.json"}) {
        Invocation r = run_in_process({"oracle", fixture(name), "--layer", "rx:0.3", "--input", "-"});
        EXPECT_EQ(r.code, kExitOk) << name << r.err;
        EXPECT_LT(nlohmann::json::parse(r.out)["trace_distance"].get<double>(), 1e-10);
    }
}

TEST(cli, choi_and_chi) {
    Invocation c = run_in_process({"choi", fixture("identity.json")});
    ASSERT_EQ(c.code, kExitOk);
    auto j = nlohmann::json::parse(c.out);
    EXPECT_EQ(j["dim"].get<size_t>(), 4u);
    ComplexMatrix m = parse_matrix(j["matrix"]);
    EXPECT_NEAR(m.trace().real(), 4.0, 1e-12);

    Invocation s = run_in_process({"choi", fixture("identity.json"), "--slot"});
    EXPECT_EQ(nlohmann::json::parse(s.out)["representation"], "slot_channel");

    Invocation x = run_in_process({"chi", fixture("pauli_xz.json")});
    auto jx = nlohmann::json::parse(x.out);
    EXPECT_NEAR(jx["diagonal"]["XZ"].get<double>(), 0.1, 1e-12);
    EXPECT_NEAR(jx["trace"].get<double>(), 1.0, 1e-12);
}

TEST(cli, csv_output) {
    Invocation r = run_in_process({"twirl", fixture("pauli_xz.json"), "--csv"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("p_table.XZ,0.09999"), std::string::npos);
    EXPECT_NE(r.out.find("p_table.II,0.9"), std::string::npos);
    EXPECT_NE(r.out.find("command,twirl"), std::string::npos);
}

TEST(cli, spec_parsing) {
    EXPECT_LT((parse_state("+", 2) - ComplexMatrix::Constant(2, 2, 0.5)).norm(), 1e-15);
    ComplexMatrix pi = parse_state("+i", 2);
    EXPECT_NEAR(pi(1, 0).imag(), 0.5, 1e-15);
    EXPECT_EQ(parse_state("01", 4)(1, 1), cplx(1.0));
    EXPECT_LT((parse_state("mixed", 2) - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
    EXPECT_THROW(parse_state("0", 4), SpecError);
    EXPECT_THROW(parse_layer("H,X", 2), SpecError);
    EXPECT_NO_THROW(parse_layer("H,X", 4));
    EXPECT_NO_THROW(parse_layer("cx", 4));
    EXPECT_THROW(parse_layer("rx:abc", 2), SpecError);
    EXPECT_LT((parse_observable("-Z", 2) + pauli_matrix(Pauli::Z)).norm(), 1e-15);
    EXPECT_THROW(parse_observable("ZZ", 2), SpecError);

    nlohmann::json flat = {{"kind", "pauli_correlated"}, {"probs", std::vector<double>(16, 1.0 / 16)}};
    NoiseModelSpec s = parse_spec(flat);
    EXPECT_EQ(s.teeth, 2u);
    nlohmann::json bad_key = {{"kind", "pauli_correlated"}, {"probs", {{"XQ", 1.0}}}};
    EXPECT_THROW(parse_spec(bad_key), SpecError);
    nlohmann::json no_seed = {{"kind", "env_model"}, {"teeth", 2}, {"random", {{"d_env", 2}}}};
    EXPECT_THROW(parse_spec(no_seed), SpecError);
}

TEST(cli, binary_output_is_deterministic) {
    std::vector<std::string> commands{
        "validate " + fixture("random_env.json"),
        "choi " + fixture("random_env.json"),
        "choi --slot " + fixture("correlated_env.json"),
        "chi " + fixture("weak_env.json"),
        "twirl " + fixture("correlated_env.json"),
        "twirl --samples 50 --seed 4 " + fixture("random_env.json"),
        "pec --shots 5000 --seed 9 --layer H " + fixture("weak_env.json"),
        "vcp --layer T " + fixture("pauli_xz.json"),
        "oracle --layer S --input 1 " + fixture("random_env.json"),
    };
    for (const auto &c : commands) {
        Invocation a = run_binary(c);
        Invocation b = run_binary(c);
        EXPECT_EQ(a.code, 0) << c;
        EXPECT_FALSE(a.out.empty()) << c;
        EXPECT_EQ(a.out, b.out) << c;
    }
    EXPECT_EQ(run_binary("validate " + fixture("malformed.json")).code, 2);
    EXPECT_EQ(run_binary("validate " + fixture("non_stochastic.json")).code, 1);
}
