// Copyright 2026 The qrtour Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

namespace qrtour::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qrtour");
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qrtour_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& contents) const {
    write_file(path(name), contents);
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenTransitive) {
  const Outcome o = run_cli({"gen", "--type", "transitive", "--n", "3", "--out", path("tt3.trn")});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(read_file(path("tt3.trn")), "TRN1 3\n111\n");
  EXPECT_EQ(o.json()["results"]["output_digest"], digest("TRN1 3\n111\n"));
}

TEST_F(CliTest, GenRejectsBadPaley) {
  const Outcome o = run_cli({"gen", "--type", "paley", "--p", "6", "--out", path("p.trn")});
  EXPECT_EQ(o.code, kUsage);
  EXPECT_NE(o.err.find("p must be prime ≡ 3 (mod 4)"), std::string::npos) << o.err;
  EXPECT_EQ(run_cli({"gen", "--type", "rotational", "--n", "4", "--out", path("r.trn")}).code, kUsage);
  EXPECT_EQ(run_cli({"gen", "--type", "bogus", "--n", "4", "--out", path("r.trn")}).code, kUsage);
}

TEST_F(CliTest, GenRandomIsReproducible) {
  const Outcome a = run_cli({"gen", "--type", "random", "--n", "10", "--seed", "42", "--out", path("a.trn")});
  const Outcome b = run_cli({"gen", "--type", "random", "--n", "10", "--seed", "42", "--out", path("b.trn")});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.json()["results"]["output_digest"], b.json()["results"]["output_digest"]);
  EXPECT_EQ(read_file(path("a.trn")), read_file(path("b.trn")));
}

TEST_F(CliTest, GenIoFailure) {
  const Outcome o = run_cli({"gen", "--type", "transitive", "--n", "3", "--out", path("missing/dir/x.trn")});
  EXPECT_EQ(o.code, kIo);
}

TEST_F(CliTest, CountBothAgrees) {
  const std::string c3 = write("c3.trn", "TRN1 3\n101\n");
  const Outcome o = run_cli({"count", c3, "--k", "4", "--method", "both"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const Json r = o.json()["results"];
  EXPECT_EQ(r["even"], "18");
  EXPECT_EQ(r["total"], "18");
  EXPECT_EQ(r["agreement"], true);
  EXPECT_EQ(r["brute_even"], 18);
  EXPECT_EQ(o.json()["input_digest"], digest("TRN1 3\n101\n"));
}

TEST_F(CliTest, CountOddK) {
  const std::string c3 = write("c3.trn", "TRN1 3\n101\n");
  const Json r = run_cli({"count", c3, "--k", "5"}).json()["results"];
  EXPECT_EQ(r["even"], "15");
  EXPECT_EQ(r["trace"], "0");
  EXPECT_EQ(r["even_fraction"], "1/2");
}

TEST_F(CliTest, CountBruteGuard) {
  ASSERT_EQ(run_cli({"gen", "--type", "random", "--n", "30", "--seed", "1", "--out", path("r30.trn")}).code, kOk);
  EXPECT_EQ(run_cli({"count", path("r30.trn"), "--k", "8", "--method", "brute"}).code, kResource);
  EXPECT_EQ(run_cli({"count", path("r30.trn"), "--k", "8", "--method", "both"}).code, kResource);
  EXPECT_EQ(run_cli({"count", path("r30.trn"), "--k", "1"}).code, kUsage);
}

TEST_F(CliTest, CountBruteOnly) {
  const std::string c3 = write("c3.trn", "TRN1 3\n101\n");
  const Json r = run_cli({"count", c3, "--k", "6", "--method", "brute"}).json()["results"];
  EXPECT_EQ(r["even"], "6");
  EXPECT_EQ(r["odd"], "60");
  EXPECT_EQ(r["total"], "66");
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(run_cli({"count", path("nope.trn"), "--k", "4"}).code, kIo);
  const std::string bad = write("bad.trn", "TRN1 3\n10\n");
  const Outcome o = run_cli({"count", bad, "--k", "4"});
  EXPECT_EQ(o.code, kUsage);
  EXPECT_NE(o.err.find("byte"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"count"}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST_F(CliTest, SpectrumPaley) {
  ASSERT_EQ(run_cli({"gen", "--type", "paley", "--p", "7", "--out", path("p7.trn")}).code, kOk);
  const Outcome o = run_cli({"spectrum", path("p7.trn"), "--full", "--threshold", "0.3"});
  ASSERT_EQ(o.code, kOk) << o.err;
  const Json r = o.json()["results"];
  EXPECT_NEAR(r["lambda1_abs"].get<double>(), std::sqrt(7.0), 1e-7);
  EXPECT_EQ(r["full"]["singular_values"].size(), 7u);
  EXPECT_EQ(r["certificate"]["status"], "refused");
  EXPECT_EQ(run_cli({"spectrum", path("p7.trn"), "--full", "--guard", "5"}).code, kResource);
}

TEST_F(CliTest, DiscExhaustiveAndLocal) {
  const std::string c3 = write("c3.trn", "TRN1 3\n101\n");
  const Json r = run_cli({"disc", c3, "--method", "exhaustive"}).json()["results"];
  EXPECT_EQ(r["value"], 2);
  EXPECT_NEAR(r["spectral_bound"].get<double>(), 5.196152422706632, 1e-9);

  ASSERT_EQ(run_cli({"gen", "--type", "transitive", "--n", "4", "--out", path("tt4.trn")}).code, kOk);
  const Json l = run_cli({"disc", path("tt4.trn"), "--method", "local", "--restarts", "8", "--seed", "1"})
                     .json()["results"];
  EXPECT_GE(l["value"].get<int>(), 8);
  const Json s = run_cli({"disc", path("tt4.trn"), "--method", "sample", "--samples", "20"}).json()["results"];
  EXPECT_EQ(s["method"], "sample");

  ASSERT_EQ(run_cli({"gen", "--type", "random", "--n", "30", "--out", path("r30.trn")}).code, kOk);
  EXPECT_EQ(run_cli({"disc", path("r30.trn")}).code, kResource);
}

TEST_F(CliTest, ReportToFile) {
  const std::string c3 = write("c3.trn", "TRN1 3\n101\n");
  const Outcome o = run_cli({"count", c3, "--k", "4", "--out", path("report.json")});
  ASSERT_EQ(o.code, kOk);
  EXPECT_TRUE(o.out.empty());
  const Json j = Json::parse(read_file(path("report.json")));
  EXPECT_EQ(j["command"], "count");
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_TRUE(j["timings"].contains("trace"));
}

TEST_F(CliTest, VerifySuites) {
  const Outcome claims = run_cli({"verify", "--suite", "claims", "--trials", "100", "--nmax", "40", "--seed", "7"});
  EXPECT_EQ(claims.code, kOk) << claims.out;
  EXPECT_EQ(claims.json()["results"]["all_passed"], true);

  const Outcome cross = run_cli({"verify", "--suite", "crosscheck", "--nmax", "6", "--trials", "5"});
  EXPECT_EQ(cross.code, kOk) << cross.out;
  for (const Json& c : cross.json()["results"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();

  const Outcome bounds = run_cli({"verify", "--suite", "bounds", "--trials", "50"});
  EXPECT_EQ(bounds.code, kOk) << bounds.out;

  EXPECT_EQ(run_cli({"verify", "--trials", "0"}).code, kUsage);
}

TEST_F(CliTest, Bench) {
  const Outcome three = run_cli({"bench", "--sizes", "50,100,200", "--k", "8"});
  ASSERT_EQ(three.code, kOk) << three.err;
  EXPECT_EQ(three.json()["results"]["rows"].size(), 3u);

  const Outcome repeat = run_cli({"bench", "--sizes", "100", "--k", "4", "--repeat", "3"});
  const Json row = repeat.json()["results"]["rows"][0];
  EXPECT_LE(row["count_ms"]["min"].get<double>(), row["count_ms"]["median"].get<double>());
  EXPECT_LE(row["count_ms"]["median"].get<double>(), row["count_ms"]["max"].get<double>());

  EXPECT_EQ(run_cli({"bench", "--k", "8"}).code, kUsage);
}

}  // namespace
}  // namespace qrtour::cli
