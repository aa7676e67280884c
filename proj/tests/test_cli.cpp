// Copyright 2026 The entangle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run(const std::string &args) {
    const std::string cmd = std::string(ENTANGLE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
        out += buf.data();
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string &name) { return std::string(ENTANGLE_SAMPLES_DIR) + "/" + name; }

json result(const json &report, const std::string &name) {
    for (const auto &r : report.at("results")) {
        if (r.at("name") == name) {
            return r;
        }
    }
    ADD_FAILURE() << "no result named " << name;
    return json{};
}

} // namespace

TEST(Cli, ClassicalHalf) {
    const CliRun r = run("classical " + sample("measure_half.json"));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("command"), "classical");
    EXPECT_EQ(j.at("inputs_digest").get<std::string>().size(), 64U);
    EXPECT_TRUE(j.at("ok").get<bool>());
    EXPECT_EQ(result(j, "e").at("value").get<double>(), 0.7071067811865476);
    EXPECT_NE(r.out.find("0.7071067811865476"), std::string::npos);
    EXPECT_EQ(result(j, "support").at("value"), json::parse("[1, 2]"));
}

TEST(Cli, ClassicalProductVerdict) {
    const CliRun r = run("classical " + sample("measure_product_entangled.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(result(json::parse(r.out), "verdict").at("value"), "entangled");
}

TEST(Cli, ClassicalPoint) {
    const CliRun r = run("classical " + sample("measure_point.json"));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_EQ(result(j, "e").at("value").get<double>(), 0.0);
    EXPECT_TRUE(result(j, "point").at("value").get<bool>());
}

TEST(Cli, ErrorExitCodes) {
    EXPECT_EQ(run("classical " + sample("malformed.json")).code, 2);
    EXPECT_EQ(run("classical " + sample("no_such_file.json")).code, 2);
    EXPECT_EQ(run("classical " + sample("measure_unnormalized.json")).code, 3);
    EXPECT_EQ(run("schmidt " + sample("short_vector.json") + " --dims 2 2").code, 4);
    EXPECT_EQ(run("schmidt " + sample("measure_half.json") + " --dims 1 2").code, 2);
    EXPECT_EQ(run("context-coeff " + sample("pauli_x.json") + " " + sample("standard3.json")).code, 4);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("schmidt " + sample("bell.json")).code, 2);
}

TEST(Cli, SchmidtBell) {
    const CliRun r = run("schmidt " + sample("bell.json") + " --dims 2 2");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_NEAR(result(j, "lambda").at("value")[0].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(result(j, "lambda").at("value")[1].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(result(j, "e").at("value").get<double>(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_FALSE(result(j, "factorized").at("value").get<bool>());
}

TEST(Cli, SchmidtProductAndGamma) {
    const CliRun p = run("schmidt " + sample("product_e1e1.json") + " --dims 2 2");
    ASSERT_EQ(p.code, 0);
    const json jp = json::parse(p.out);
    EXPECT_TRUE(result(jp, "factorized").at("value").get<bool>());
    EXPECT_EQ(result(jp, "lambda").at("value"), json::parse("[1.0, 0.0]"));

    const CliRun g = run("schmidt " + sample("gamma.json") + " --dims 3 3");
    ASSERT_EQ(g.code, 0);
    EXPECT_NEAR(result(json::parse(g.out), "e").at("value").get<double>(), 0.7817359599705717, 1e-15);
}

TEST(Cli, ContextCoefficient) {
    const CliRun x = run("context-coeff " + sample("pauli_x.json") + " " + sample("standard2.json"));
    ASSERT_EQ(x.code, 0);
    const json jx = json::parse(x.out);
    EXPECT_NEAR(result(jx, "c").at("value").get<double>(), std::sqrt(2.0), 1e-15);
    EXPECT_FALSE(result(jx, "measurable").at("value").get<bool>());
    EXPECT_TRUE(result(jx, "c_equals_residual_norm").at("pass").get<bool>());

    const CliRun d = run("context-coeff " + sample("diag3.json") + " " + sample("standard3.json"));
    ASSERT_EQ(d.code, 0);
    const json jd = json::parse(d.out);
    EXPECT_EQ(result(jd, "c").at("value").get<double>(), 0.0);
    EXPECT_TRUE(result(jd, "measurable").at("value").get<bool>());
}

TEST(Cli, MixedSeparableWritesCertificate) {
    const auto out = std::filesystem::temp_directory_path() / "entangle_cli_cert.json";
    std::filesystem::remove(out);
    const CliRun r = run("mixed " + sample("separable_rho.json") + " --dims 2 2 --out " + out.string());
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_LE(result(j, "e").at("value").get<double>(), 1e-3);
    EXPECT_TRUE(result(j, "certificate").at("value").get<bool>());
    std::ifstream in(out);
    const json cert = json::parse(in);
    EXPECT_EQ(cert.at("weights").size(), cert.at("vectors").size());
}

TEST(Cli, MixedBellHasNoCertificate) {
    const CliRun r = run("mixed " + sample("bell_rho.json") + " --dims 2 2 --restarts 20");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_NEAR(result(j, "e").at("value").get<double>(), 1.0 / std::sqrt(2.0), 1e-6);
    EXPECT_FALSE(result(j, "certificate").at("value").get<bool>());
}

TEST(Cli, MixedMaximallyMixed) {
    const CliRun r = run("mixed " + sample("maximally_mixed4.json") + " --dims 2 2 --restarts 20 --seed 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_LE(result(json::parse(r.out), "e").at("value").get<double>(), 1e-3);
    EXPECT_EQ(run("mixed " + sample("maximally_mixed4.json") + " --dims 2 3").code, 4);
    EXPECT_EQ(run("mixed " + sample("pauli_x.json") + " --dims 1 2").code, 3);
}

TEST(Cli, MixedBudgetExit) {
    const std::string args = "mixed " + sample("maximally_mixed4.json") + " --dims 2 2 --opts " +
                             sample("quick_opts.json");
    EXPECT_EQ(run(args).code, 0);
    EXPECT_EQ(run(args + " --require-converged").code, 5);
}

TEST(Cli, ReportsAreByteStable) {
    const std::string args = "mixed " + sample("bell_rho.json") + " --dims 2 2 --restarts 6 --seed 11";
    const CliRun a = run(args);
    const CliRun b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(run("mixed " + sample("bell_rho.json") + " --dims 2 2 --restarts 6 --seed 12").out, "");
}

TEST(Cli, VerifyPaperSubsets) {
    const CliRun five = run("verify-paper --only example5");
    ASSERT_EQ(five.code, 0);
    int rows = 0;
    std::size_t pos = 0;
    while ((pos = five.out.find("\nexample5 ", pos)) != std::string::npos) {
        ++rows;
        ++pos;
    }
    EXPECT_EQ(rows, 2);

    const CliRun t = run("verify-paper --seed 42 --only thm23");
    ASSERT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("100 checks, 0 failed"), std::string::npos);
    EXPECT_EQ(run("verify-paper --only nothing").code, 2);
}
