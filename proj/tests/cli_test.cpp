// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qincompat/io.hpp"

namespace qincompat {
namespace {

const std::string kFixtures = QINCOMPAT_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "qincompat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("qincompat_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(CliIncompat, DirectionFiles) {
  auto r = run({"incompat", "--dirs", fixture("example1.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("incompatibility  0.94955"), std::string::npos) << r.out;

  r = run({"incompat", "--dirs", fixture("xyz.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("incompatibility  2.00000"), std::string::npos) << r.out;
}

TEST(CliIncompat, Angles) {
  auto r = run({"incompat", "--angles", "pi/3", "pi/3", "pi/3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("incompatibility  1.00000"), std::string::npos) << r.out;

  // No three unit vectors have these pairwise angles.
  r = run({"incompat", "--angles", "pi/9", "pi/9", "pi/3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not realizable"), std::string::npos) << r.err;
}

TEST(CliIncompat, JsonRoundTrip) {
  const auto r = run({"incompat", "--dirs", fixture("example1.json"), "--json"});
  ASSERT_EQ(r.code, 0);
  const auto res = json::parse(r.out).get<IncompatibilityResult>();
  EXPECT_NEAR(res.value, 0.949545245155239, 1e-12);
  EXPECT_EQ(res.method, Method::closed_form);

  const auto a = run({"incompat", "--angles", "pi/2", "pi/2", "pi/2", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NEAR(json::parse(a.out).get<IncompatibilityResult>().value, 2.0, 1e-12);
}

TEST(CliIncompat, InputErrors) {
  EXPECT_EQ(run({"incompat"}).code, 1);
  EXPECT_EQ(run({"incompat", "--dirs", fixture("xyz.json"), "--angles", "1", "1", "1"}).code, 1);
  EXPECT_EQ(run({"incompat", "--dirs", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(run({"incompat", "--angles", "pi/", "1", "1"}).code, 1);
  EXPECT_EQ(run({"incompat", "--angles", "1", "1"}).code, 1);
  EXPECT_EQ(run({"incompat", "--dirs", temp_file("zero.json", R"({"directions": [[0,0,0]]})")}).code, 1);
  EXPECT_EQ(run({"incompat", "--dirs", temp_file("broken.json", "{not json")}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nosuch"}).code, 1);
}

TEST(CliTable, DefaultGrid) {
  const auto r = run({"table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.39956"), std::string::npos);
  EXPECT_NE(r.out.find("n/a[1]"), std::string::npos);
  EXPECT_NE(r.out.find("Gram eigenvalue -0.10224"), std::string::npos) << r.out;

  const auto csv = run({"table", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  std::istringstream lines(csv.out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "theta2\\theta1,pi/9,2*pi/9,pi/3,4*pi/9,5*pi/9");
  std::getline(lines, row);
  EXPECT_EQ(row, "pi/9,n/a[1],0.51519,0.68118,0.85721,n/a[2]");
}

TEST(CliTable, SingleCellAndSymmetry) {
  auto r = run({"table", "--theta3", "pi/2", "--grid", "pi/2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pi/2,2.00000"), std::string::npos) << r.out;

  r = run({"table", "--json", "--grid", "pi/5,0.9,2*pi/5,1.7", "--theta3", "1.1"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  std::map<std::pair<std::string, std::string>, json> cells;
  for (const auto& c : j["cells"]) cells[{c["theta1"], c["theta2"]}] = c;
  for (const auto& [key, c] : cells) {
    const auto& mirror = cells.at({key.second, key.first});
    ASSERT_EQ(c["realizable"], mirror["realizable"]);
    if (c["realizable"]) {
      EXPECT_NEAR(c["value"].get<double>(), mirror["value"].get<double>(), 1e-12);
    }
  }
}

TEST(CliTable, InputErrors) {
  EXPECT_EQ(run({"table", "--grid", "pi/9,,pi/3"}).code, 1);
  EXPECT_EQ(run({"table", "--theta3", "x"}).code, 1);
  EXPECT_EQ(run({"table", "--format", "xml"}).code, 1);
}

TEST(CliVerify, PassingSets) {
  auto r = run({"verify", "--dirs", fixture("example1.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);

  r = run({"verify", "--dirs", fixture("pair.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NEAR(j["closed_form"].get<IncompatibilityResult>().value, 1 - 0.168, 1e-12);
  EXPECT_EQ(j["jacobi"].get<IncompatibilityResult>().method, Method::jacobi);
  EXPECT_GT(j["oracle"].get<OracleResult>().points_evaluated, 20000);

  r = run({"verify", "--dirs", fixture("xyz.json"), "--grid-points", "500", "--samples", "50", "--seed", "9"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(CliVerify, Thresholds) {
  // A tiny lattice cannot meet the 1e-5 threshold; with fewer than 20000
  // points the looser lattice bound applies instead.
  EXPECT_EQ(run({"verify", "--dirs", fixture("example1.json"), "--grid-points", "12"}).code, 0);
  EXPECT_EQ(run({"verify", "--dirs", fixture("example1.json"), "--grid-points", "11"}).code, 1);
  EXPECT_EQ(run({"verify", "--dirs", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(run({"verify"}).code, 1);
}

TEST(CliWitness, BuiltinStates) {
  const auto xyz = fixture("xyz.json");
  auto r = run({"witness", "--state", "singlet", "--alice", xyz, "--bob", xyz, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto w = json::parse(r.out).get<WitnessReport>();
  EXPECT_TRUE(w.violated);
  EXPECT_NEAR(w.margin, 4.0, 1e-10);

  r = run({"witness", "--state", "werner:0.5", "--alice", xyz, "--bob", xyz, "--assert-violation"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("margin        1.00000"), std::string::npos) << r.out;

  r = run({"witness", "--state", "product:0,0,1:0,0,1", "--alice", xyz, "--bob", xyz, "--json"});
  ASSERT_EQ(r.code, 0);
  w = json::parse(r.out).get<WitnessReport>();
  EXPECT_FALSE(w.violated);
  EXPECT_NEAR(w.margin, 0.0, 1e-10);

  EXPECT_EQ(run({"witness", "--state", "product:0,0,1:0,0,1", "--alice", xyz, "--bob", xyz, "--assert-violation"}).code,
            4);
}

TEST(CliWitness, StateFiles) {
  const auto xyz = fixture("xyz.json");
  auto r = run({"witness", "--state", fixture("werner_half.json"), "--alice", xyz, "--bob", xyz, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out).get<WitnessReport>().variance_sum, 3.0, 1e-10);

  EXPECT_EQ(run({"witness", "--state", fixture("not_psd.json"), "--alice", xyz, "--bob", xyz}).code, 1);
  EXPECT_EQ(run({"witness", "--state", "werner:2", "--alice", xyz, "--bob", xyz}).code, 1);
  EXPECT_EQ(run({"witness", "--state", "singlet", "--alice", xyz, "--bob", fixture("pair.json")}).code, 1);
  const auto qubit = temp_file("qubit.json", R"({"dim": 2, "re": [[1,0],[0,0]], "im": [[0,0],[0,0]]})");
  EXPECT_EQ(run({"witness", "--state", qubit, "--alice", xyz, "--bob", xyz}).code, 1);
  EXPECT_EQ(run({"witness", "--state", "singlet", "--alice", xyz}).code, 1);
}

TEST(CliSteer, Fixtures) {
  const auto settings = fixture("settings_xyz.json");
  auto r = run({"steer", "--state", "singlet", "--settings", settings, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto s = json::parse(r.out).get<SteeringReport>();
  EXPECT_NEAR(s.total, 0.0, 1e-12);
  EXPECT_NEAR(s.bound, 2.0, 1e-12);
  EXPECT_TRUE(s.violated);

  r = run({"steer", "--state", "werner:0.8", "--settings", settings});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total        1.08000"), std::string::npos) << r.out;

  r = run({"steer", "--state", "werner:0.5", "--settings", settings, "--json"});
  s = json::parse(r.out).get<SteeringReport>();
  EXPECT_NEAR(s.total, 2.25, 1e-10);
  EXPECT_FALSE(s.violated);

  EXPECT_EQ(run({"steer", "--state", "werner:0.5", "--settings", settings, "--assert-violation"}).code, 4);
  EXPECT_EQ(run({"steer", "--state", "werner:0.8", "--settings", settings, "--assert-violation"}).code, 0);
  EXPECT_EQ(run({"steer", "--state", "singlet", "--settings", fixture("xyz.json")}).code, 1);
  EXPECT_EQ(run({"steer", "--state", "singlet"}).code, 1);
}

TEST(CliHelp, ExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("incompat"), std::string::npos);
}

}  // namespace
}  // namespace qincompat
