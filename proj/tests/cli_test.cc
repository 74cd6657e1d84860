// Copyright 2026 The rieszlab Authors
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


#include "rieszlab/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rieszlab_cli_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return rieszlab::run_cli(args, out_, err_);
  }

  std::string Read(const std::string& name) const {
    std::ifstream f(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  json ReadJson(const std::string& name) const { return json::parse(Read(name)); }
  std::string Out() const { return (dir_ / "out").string(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, AxiomsOnHeisenberg) {
  const auto cfg = Write("heis.json", R"({ "group": { "law": "heisenberg", "n": 1 },
                                           "samples": 2000 })");
  ASSERT_EQ(Run({"axioms", "--config", cfg, "--out", Out()}), rieszlab::kExitPass)
      << err_.str();
  const json r = ReadJson("out/axioms.json");
  EXPECT_TRUE(r["passed"].get<bool>());
  EXPECT_EQ(r["subcommand"], "axioms");
  EXPECT_EQ(r["config"]["group"]["law"], "heisenberg");
  EXPECT_EQ(r["config"]["output"]["dir"], Out());
  bool found = false;
  for (const auto& q : r["report"]["quantities"]) {
    found |= q["name"] == "symmetry_max_rel_violation";
  }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, DefaultsWithoutConfig) {
  EXPECT_EQ(Run({"sphere-measure", "--out", Out()}), rieszlab::kExitPass) << err_.str();
  EXPECT_NE(out_.str().find("sphere-measure: PASS"), std::string::npos);
}

TEST_F(CliTest, CheckFailureExitsOne) {
  const auto cfg = Write("s.json", R"({ "group": { "weights": [1, 1, 1] },
      "quadrature": { "method": "qmc", "samples": 256 }, "tolerance": 1e-9 })");
  EXPECT_EQ(Run({"sphere-measure", "--config", cfg, "--out", Out()}),
            rieszlab::kExitCheckFailed);
  EXPECT_FALSE(ReadJson("out/sphere-measure.json")["passed"].get<bool>());
  // Loosening every tolerance by the flag turns it green.
  EXPECT_EQ(Run({"sphere-measure", "--config", cfg, "--out", Out(),
                 "--tolerance-scale", "1e8"}),
            rieszlab::kExitPass);
}

TEST_F(CliTest, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(Run({}), rieszlab::kExitConfigError);
  EXPECT_EQ(Run({"frobnicate"}), rieszlab::kExitConfigError);
  EXPECT_EQ(Run({"axioms", "--threads", "0"}), rieszlab::kExitConfigError);
  EXPECT_EQ(Run({"axioms", "--config", (dir_ / "missing.json").string()}),
            rieszlab::kExitConfigError);

  const auto bad = Write("bad.json", "{\n  \"quadrature\": {\n    \"angular\": \"many\"\n  }\n}");
  EXPECT_EQ(Run({"axioms", "--config", bad}), rieszlab::kExitConfigError);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("/quadrature/angular"), std::string::npos) << err_.str();

  const auto unknown = Write("unknown.json", R"({ "norm": { "kind": "max", "c": 1 } })");
  EXPECT_EQ(Run({"axioms", "--config", unknown}), rieszlab::kExitConfigError);
  EXPECT_NE(err_.str().find("/norm/c: unknown key"), std::string::npos) << err_.str();

  const auto syntax = Write("syntax.json", "{\n\n  \"seed\": ,\n}");
  EXPECT_EQ(Run({"axioms", "--config", syntax}), rieszlab::kExitConfigError);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();

  // Operation-level preconditions.
  EXPECT_EQ(Run({"norm-equiv", "--out", Out()}), rieszlab::kExitConfigError);
  EXPECT_EQ(Run({"hardy-check", "--out", Out()}), rieszlab::kExitConfigError);
  const auto sw = Write("sw.json", R"({ "exponents": { "p": 2, "lambda": 1, "alpha": 0.25,
                                                       "beta": 0.25 } })");
  EXPECT_EQ(Run({"verify-hls", "--config", sw, "--out", Out()}),
            rieszlab::kExitConfigError);
  const auto dy = Write("dy.json", R"({ "exponents": { "p": 2, "q": 4, "lambda": 1 } })");
  EXPECT_EQ(Run({"dyadic", "--config", dy, "--out", Out()}), rieszlab::kExitConfigError);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(Run({"--help"}), rieszlab::kExitPass);
  EXPECT_NE(out_.str().find("verify-stein-weiss"), std::string::npos);
}

TEST_F(CliTest, NormEquivalence) {
  const auto cfg = Write("ne.json", R"({ "group": { "law": "heisenberg" },
      "norm2": { "kind": "max" }, "samples": 500 })");
  ASSERT_EQ(Run({"norm-equiv", "--config", cfg, "--out", Out()}), rieszlab::kExitPass)
      << err_.str();
  EXPECT_EQ(ReadJson("out/norm-equiv.json")["norms"].size(), 2u);
}

TEST_F(CliTest, DivergentHardyFactorIsAVerdict) {
  // W = |x|^-4 on Q = 4 is not integrable at infinity.
  const auto cfg = Write("bad_weights.json", R"({
    "group": { "law": "heisenberg", "n": 1 },
    "exponents": { "p": 2, "q": 4, "lambda": 3 },
    "weights": { "W": { "form": "power", "w": -4.0 }, "U": { "form": "power", "w": 0 },
                 "samples": 3 } })");
  ASSERT_EQ(Run({"hardy-check", "--config", cfg, "--out", Out()}), rieszlab::kExitPass)
      << err_.str();
  const json r = ReadJson("out/hardy-check.json");
  EXPECT_FALSE(r["verdict"]["finite"].get<bool>());
  EXPECT_NE(r["verdict"]["reason"].get<std::string>().find("W factor diverges"),
            std::string::npos);
  EXPECT_EQ(Read("out/hardy-check.csv").substr(0, 21), "R,A,w_factor,u_factor");
}

TEST_F(CliTest, AdmissibleHardyPair) {
  const auto cfg = Write("w.json", R"({
    "group": { "law": "heisenberg", "n": 1 },
    "exponents": { "p": 2, "q": 4, "lambda": 3 },
    "weights": { "W": { "w": -12 }, "U": { "w": 0 }, "samples": 4 } })");
  ASSERT_EQ(Run({"hardy-check", "--config", cfg, "--out", Out()}), rieszlab::kExitPass)
      << err_.str() << out_.str();
  EXPECT_TRUE(ReadJson("out/hardy-check.json")["verdict"]["finite"].get<bool>());
}

TEST_F(CliTest, SteinWeissCsvIsReproducible) {
  const auto cfg = Write("sw_q4.json", R"({
    "exponents": { "p": 2, "lambda": 1, "alpha": 0.25, "beta": 0.25 },
    "quadrature": { "angular": 8 },
    "family": { "functions": [ { "kind": "gaussian", "sigma": 1 },
                               { "kind": "conformal", "gamma": 1.5, "center": [0.5, 0] } ],
                "t": [0.5, 2] } })");
  ASSERT_EQ(Run({"verify-stein-weiss", "--config", cfg, "--seed", "7", "--out", Out()}),
            rieszlab::kExitPass)
      << err_.str() << out_.str();
  const std::string a = Read("out/verify-stein-weiss.csv");
  ASSERT_EQ(Run({"verify-stein-weiss", "--config", cfg, "--seed", "7", "--out", Out(),
                 "--threads", "1"}),
            rieszlab::kExitPass);
  const std::string b = Read("out/verify-stein-weiss.csv");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "id,function,t,quotient,error");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 5);
  const json r = ReadJson("out/verify-stein-weiss.json");
  EXPECT_EQ(r["config"]["seed"], 7);
  EXPECT_EQ(r["config"]["exponents"]["q"], 4.0);
  EXPECT_TRUE(r["exponents"]["admissible"].get<bool>());

  // The echoed config reproduces the table.
  const auto echo = Write("echo.json", r["config"].dump(2));
  ASSERT_EQ(Run({"verify-stein-weiss", "--config", echo}), rieszlab::kExitPass);
  EXPECT_EQ(Read("out/verify-stein-weiss.csv"), a);
}

TEST_F(CliTest, InadmissibleExponentsFail) {
  // alpha + beta < 0, q = 20/3.
  const auto cfg = Write("x.json", R"({
    "exponents": { "p": 2, "lambda": 1.5, "alpha": -0.1, "beta": -0.1 },
    "family": { "functions": [ { "kind": "gaussian" } ] } })");
  EXPECT_EQ(Run({"verify-stein-weiss", "--config", cfg, "--out", Out()}),
            rieszlab::kExitCheckFailed);
}

TEST_F(CliTest, WeakTypeDyadicAndExtremize) {
  const auto weak = Write("weak.json", R"({
    "quadrature": { "angular": 8 },
    "weak_type": { "zetas": [0.2, 0.5, 1, 2], "points_per_shell": 256 },
    "fitted_tolerance": 1.0 })");
  ASSERT_EQ(Run({"weak-type", "--config", weak, "--out", Out()}), rieszlab::kExitPass)
      << err_.str() << out_.str();
  EXPECT_EQ(Read("out/weak-type.csv").substr(0, 10), "zeta,ratio");

  const auto dy = Write("dy.json", R"({
    "exponents": { "p": 2, "lambda": 1.5, "alpha": 0.25, "beta": 0.25 },
    "quadrature": { "angular": 8 }, "dyadic": { "k_lo": -1, "k_hi": 1 } })");
  ASSERT_EQ(Run({"dyadic", "--config", dy, "--out", Out()}), rieszlab::kExitPass)
      << err_.str() << out_.str();
  const std::string csv = Read("out/dyadic.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

  const auto ex = Write("ex.json", R"({
    "quadrature": { "angular": 8 },
    "extremize": { "restarts": 1, "max_iter": 4, "spread_tolerance": 1 } })");
  ASSERT_EQ(Run({"extremize", "--config", ex, "--out", Out()}), rieszlab::kExitPass)
      << err_.str() << out_.str();
  const json r = ReadJson("out/extremize.json");
  EXPECT_GT(r["result"]["best_quotient"].get<double>(), 3.0);
  EXPECT_EQ(Read("out/extremize.csv").substr(0, 7), "restart");
}

}  // namespace
