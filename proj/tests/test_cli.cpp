// Copyright 2026 The logicaltensor Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Usage: test_cli <path-to-logicaltensor-cli>

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

std::string g_cli;
const std::string kSamples = LOGICALTENSOR_SAMPLES_DIR;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args) {
    const std::string command = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        r.out.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string &name) { return kSamples + "/" + name; }

std::string temp_path(const std::string &name) {
    return ::testing::TempDir() + "logicaltensor_cli_" + name;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST(Cli, NoSubcommandIsAnInputError) { EXPECT_EQ(run("").code, 2); }

TEST(Cli, MissingFileIsAnInputError) {
    const auto r = run("check-local --op " + sample("no_such_file.json") + " --restriction " +
                       sample("fig5.json"));
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, FlipIsLocalButNotStrict) {
    const auto r =
        run("check-local --op " + sample("flip.json") + " --restriction " + sample("fig5.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("local: yes, strict: no"), std::string::npos) << r.out;
}

TEST(Cli, BellLikeStateCarriesOneBit) {
    const auto r = run("entropy --ket " + sample("bell-like.json") + " --restriction " +
                       sample("zeta_u.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("entropy: 1 bits"), std::string::npos) << r.out;
}

TEST(Cli, ProductStateCarriesNothing) {
    const auto r = run("entropy --ket " + sample("product.json") + " --restriction " +
                       sample("zeta_u.json") + " --universe " + sample("u2s2.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("entropy: 0 bits"), std::string::npos) << r.out;
}

TEST(Cli, LineDynamicsIsCausal) {
    for (const char *v : {"v1", "v2", "v3"}) {
        const std::string vertex = v;
        const auto r = run("check-causal --op " + sample("line3_MC.json") + " --chi " +
                           sample("line3_chi_" + vertex + ".json") + " --zeta " +
                           sample("line3_zeta_" + vertex + ".json"));
        EXPECT_EQ(r.code, 0) << vertex;
        EXPECT_NE(r.out.find("causal: yes"), std::string::npos) << r.out;
    }
}

TEST(Cli, SwapIsNotCausal) {
    const auto r = run("check-causal --op " + sample("line3_swap.json") + " --chi " +
                       sample("line3_chi_v1.json") + " --zeta " + sample("line3_zeta_v1.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("causal: no"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("counterexample"), std::string::npos) << r.out;
}

TEST(Cli, BrokenRestrictionIsRejected) {
    const auto r = run("validate-restriction --restriction " + sample("broken_restriction.json") +
                       " --universe " + sample("u2s2.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("valid: no"), std::string::npos) << r.out;
}

TEST(Cli, StandardRestrictionIsAccepted) {
    const auto r = run("validate-restriction --restriction " + sample("fig5.json") +
                       " --universe " + sample("u2s2.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("valid: yes"), std::string::npos) << r.out;
}

TEST(Cli, TraceWritesTheReducedState) {
    const auto path = temp_path("rho.json");
    const auto r = run("trace --state " + sample("bell-like.json") + " --restriction " +
                       sample("zeta_u.json") + " --output " + path);
    ASSERT_EQ(r.code, 0);
    const auto rho = nlohmann::json::parse(slurp(path));
    ASSERT_EQ(rho.size(), 2U);
    for (const auto &e : rho) {
        EXPECT_EQ(e.at("bra"), e.at("ket"));
        EXPECT_NEAR(e.at("re").get<double>(), 0.5, 1e-12);
    }
}

TEST(Cli, TensorOfKetsRoundTrips) {
    const auto left = temp_path("left.json");
    const auto right = temp_path("right.json");
    {
        std::ofstream(left) << R"([{"re": 1, "im": 0, "graph": ["w.u"]}])";
        std::ofstream(right) << R"([{"re": 1, "im": 0, "graph": ["b.v"]}])";
    }
    const auto r = run("tensor --left " + left + " --right " + right + " --restriction " +
                       sample("zeta_u.json") + " --universe " + sample("u2s2.json"));
    ASSERT_EQ(r.code, 0);
    const auto psi = nlohmann::json::parse(r.out);
    ASSERT_EQ(psi.size(), 1U);
    auto tokens = psi[0].at("graph").get<std::vector<std::string>>();
    std::sort(tokens.begin(), tokens.end());
    EXPECT_EQ(tokens, (std::vector<std::string>{"b.v", "w.u"}));
    EXPECT_DOUBLE_EQ(psi[0].at("re").get<double>(), 1.0);
}

TEST(Cli, EvolveBouncesAtTheBorder) {
    const auto path = temp_path("trajectory.json");
    const auto r = run("evolve --line-length 3 --steps 4 --emit-trajectory " + path);
    ASSERT_EQ(r.code, 0);
    const auto trajectory = nlohmann::json::parse(slurp(path));
    ASSERT_EQ(trajectory.size(), 5U);
    const std::array<std::string, 5> expected{"R.v1", "R.v2", "R.v3", "L.v3", "L.v2"};
    for (std::size_t step = 0; step < expected.size(); ++step) {
        const auto &ket = trajectory[step];
        ASSERT_EQ(ket.size(), 1U) << step;
        const auto tokens = ket[0].at("graph").get<std::vector<std::string>>();
        EXPECT_NE(std::find(tokens.begin(), tokens.end(), expected[step]), tokens.end())
            << step;
    }
}

TEST(Cli, DecomposeLineDynamics) {
    const auto r = run("decompose --line-length 3 --theta 0.785398163397");
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, VerifyIsDeterministic) {
    const std::string args =
        "verify --universe " + sample("u2s2.json") + " --suite toolbox --samples 10 --seed 7";
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto report = nlohmann::json::parse(a.out);
    EXPECT_EQ(report.at("seed"), 7);
    EXPECT_TRUE(report.at("passed").get<bool>());
}

int main(int argc, char **argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <logicaltensor-cli>\n");
        return 2;
    }
    g_cli = argv[1];
    return RUN_ALL_TESTS();
}
