// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "lptest/harness/cli.hpp"
#include "support/test_support.hpp"

namespace lptest {
namespace {

namespace fs = std::filesystem;
using harness::Json;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lptest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = harness::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Harness : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lptest_harness_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const ProblemInstance& inst) const {
    const auto p = path(name);
    harness::write_instance(harness::InstanceFile{inst, Json::object()}, p);
    return p;
  }

  fs::path dir_;
};

std::vector<ProblemInstance> one_of_each_kind() {
  Rng rng(501);
  std::vector<ProblemInstance> out;
  out.emplace_back(testing::point_set(testing::random_points(5, 2, rng)), ProblemKind::MEB, 0.75);
  out.emplace_back(testing::point_set(testing::random_points(5, 3, rng)), ProblemKind::Annulus, 0.1);
  out.emplace_back(ConstraintSet({Ball{{0.1, 0.2}, 0.3}, Ball{{-1.0 / 3.0, 1e-17}, 0.0}}, {2, 5}, 2),
                   ProblemKind::IntersectingBall, 1.0);
  out.emplace_back(testing::halfspace_set(testing::random_halfspaces(4, 3, rng, -1, 1)),
                   ProblemKind::LinearFeasibility);
  out.emplace_back(ConstraintSet({LabeledPoint{{0.1, 0.7}, 1}, LabeledPoint{{-0.3, 0.2}, -1}}, {3, 4}, 2),
                   ProblemKind::Separability, std::nullopt, std::nullopt, 2);
  return out;
}

TEST_F(Harness, RoundTripAllKinds) {
  for (const auto& inst : one_of_each_kind()) {
    harness::InstanceFile f{inst, Json{{"seed", 3}, {"note", "x"}}};
    const auto text = harness::serialize(f);
    const auto back = harness::parse(text);
    EXPECT_TRUE(back == f) << to_string(inst.kind());
    EXPECT_EQ(harness::serialize(back), text);
  }
}

TEST_F(Harness, GeneratedMetadataRoundTrips) {
  generators::FamilySpec spec;
  spec.family = generators::Family::SimplexFar;
  spec.d = 1;
  spec.n = 40;
  spec.epsilon = 0.5;
  const auto f = harness::to_instance_file(generators::generate(spec));
  EXPECT_TRUE(harness::parse(harness::serialize(f)) == f);
  EXPECT_TRUE(f.metadata.contains("certification"));
  EXPECT_TRUE(f.metadata.contains("epsilon_effective"));
}

TEST_F(Harness, MalformedInputIsParseError) {
  EXPECT_THROW(harness::parse("{"), ParseError);
  EXPECT_THROW(harness::parse(R"({"format":"other"})"), ParseError);
  EXPECT_THROW(harness::parse(R"({"format":"lptest-instance/1","kind":"meb","dim":2,"items":[{"coords":[1]}]})"),
               ParseError);
}

TEST_F(Harness, NormalizationIsRecordedAndScalesK) {
  const ProblemInstance inst(testing::point_set({{10, 10}, {14, 10}, {12, 13}}), ProblemKind::MEB, 3.0);
  const auto n = harness::normalize(harness::InstanceFile{inst, Json::object()});
  const auto& nm = n.metadata.at("normalization");
  const double scale = nm.at("scale").get<double>();
  EXPECT_NEAR(scale, 0.5, 1e-15);
  EXPECT_NEAR(*n.instance.k(), 1.5, 1e-15);
  for (const auto& c : n.instance.constraints().items())
    for (const double x : std::get<Point>(c).coords) EXPECT_LE(std::abs(x), 1.0 + 1e-15);
  const auto a = phi(inst, SubsetView::all(inst.constraints()));
  const auto b = phi(n.instance, SubsetView::all(n.instance.constraints()));
  EXPECT_NEAR(b.value, a.value * scale, 1e-12);
}

TEST_F(Harness, GenMomentFar) {
  const auto p = path("f2.json");
  const auto r = cli({"gen", "--family", "moment-far", "--d", "2", "--n", "700", "--epsilon", "0.3", "--seed", "7",
                      "-o", p});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = harness::read_instance(p);
  EXPECT_EQ(f.instance.constraints().item_count(), 7U);
  EXPECT_EQ(f.instance.size(), 700U);
  const auto& cert = f.metadata.at("certification");
  EXPECT_TRUE(cert.at("certified").get<bool>());
  EXPECT_NEAR(cert.at("far_fraction").get<double>(), 0.1, 1e-12);
}

TEST_F(Harness, GenSimplexNearRadius) {
  const auto p = path("f1.json");
  const auto r = cli({"gen", "--family", "simplex-near", "--d", "3", "--n", "1000", "--epsilon", "0.2", "--k", "1.0",
                      "--seed", "1", "-o", p});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = harness::read_instance(p);
  std::vector<Vector> pts;
  for (const auto& c : f.instance.constraints().items()) pts.push_back(std::get<Point>(c).coords);
  EXPECT_NEAR(geometry::min_enclosing_ball(pts).radius, 1.0, 1e-9);
}

TEST_F(Harness, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"gen", "--family", "moment-far", "--n", "700"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"test", path("missing.json")}).code, 2);
  EXPECT_EQ(cli({"gen", "--family", "moment-far", "--d", "2", "--n", "5", "--epsilon", "0.3"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Harness, TestCompletenessAndSoundness) {
  const auto near = path("near.json");
  const auto far = path("far.json");
  ASSERT_EQ(cli({"gen", "--family", "simplex-near", "--d", "3", "--n", "10000", "--epsilon", "0.2", "-o", near}).code,
            0);
  ASSERT_EQ(cli({"gen", "--family", "simplex-far", "--d", "3", "--n", "10000", "--epsilon", "0.2", "-o", far}).code, 0);
  const auto a = cli({"test", near, "--epsilon", "0.2", "--trials", "200", "--seed", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto ja = Json::parse(a.out);
  EXPECT_GE(ja.at("accept_rate").get<double>(), 2.0 / 3.0);
  EXPECT_LE(ja.at("max_queries").get<std::size_t>(), testing::query_ceiling(11, 0.2));

  const double eps = harness::read_instance(far).metadata.at("certification").at("far_fraction").get<double>();
  const auto b = cli({"test", far, "--epsilon", harness::format_double(eps), "--trials", "200", "--seed", "2"});
  ASSERT_EQ(b.code, 1) << b.err;
  const auto jb = Json::parse(b.out);
  EXPECT_LE(jb.at("accept_rate").get<double>(), 1.0 / 3.0);
  EXPECT_LE(jb.at("max_queries").get<std::size_t>(), testing::query_ceiling(11, eps));
  EXPECT_FALSE(jb.contains("wall_clock_seconds"));
}

TEST_F(Harness, ReportsAreReproducible) {
  const auto p = path("near.json");
  ASSERT_EQ(cli({"gen", "--family", "simplex-near", "--d", "2", "--n", "2000", "--epsilon", "0.2", "-o", p}).code, 0);
  for (const char* fmt : {"json", "csv"}) {
    const auto a = cli({"test", p, "--trials", "1", "--seed", "42", "--format", fmt});
    const auto b = cli({"test", p, "--trials", "1", "--seed", "42", "--format", fmt});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
  const auto csv = cli({"test", p, "--trials", "3", "--seed", "1", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "trial,decision,queries_used,cause,witness_index,accept_rate,mean_queries,ci95");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 4);
  const auto timed = cli({"test", p, "--trials", "1", "--timing"});
  EXPECT_TRUE(Json::parse(timed.out).contains("wall_clock_seconds"));
}

TEST_F(Harness, TolerantOnMebIsError) {
  const auto p = path("near.json");
  ASSERT_EQ(cli({"gen", "--family", "simplex-near", "--d", "1", "--n", "100", "--epsilon", "0.2", "-o", p}).code, 0);
  EXPECT_EQ(cli({"test", p, "--tolerant"}).code, 2);
}

TEST_F(Harness, VerifySmallInstance) {
  Rng rng(502);
  const auto p = write("six.json", ProblemInstance(testing::point_set(testing::random_points(6, 2, rng)),
                                                   ProblemKind::MEB, 1.0));
  const auto lemma = cli({"verify", p, "--check", "sampling-lemma", "--r", "2"});
  EXPECT_EQ(lemma.code, 0) << lemma.out;
  EXPECT_TRUE(Json::parse(lemma.out).at("results").at(0).at("equal").get<bool>());
  EXPECT_EQ(cli({"verify", p, "--check", "axioms"}).code, 0);
  EXPECT_EQ(cli({"verify", p, "--check", "oracle"}).code, 0);
}

TEST_F(Harness, VerifyGuardExitsTwo) {
  Rng rng(503);
  const auto p = write("thirty.json", ProblemInstance(testing::point_set(testing::random_points(30, 2, rng)),
                                                      ProblemKind::MEB, 1.0));
  const auto r = cli({"verify", p, "--check", "sampling-lemma", "--r", "15"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("guard"), std::string::npos);
}

TEST_F(Harness, ScalingGrid) {
  const auto empty = cli({"scaling", "--family", "moment-far"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "d,epsilon,epsilon_effective,mean_queries,ci95,closed_form\n");

  const auto r = cli({"scaling", "--family", "moment-far", "--d-list", "1,2,4", "--epsilon-list", "0.5", "--trials",
                      "2000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::vector<double> means;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 6U);
    means.push_back(std::stod(cols[3]));
  }
  ASSERT_EQ(means.size(), 3U);
  EXPECT_LT(means[0], means[1]);
  EXPECT_LT(means[1], means[2]);
}

TEST_F(Harness, SolvePrintsCertificate) {
  const auto p = write("two.json", ProblemInstance(testing::point_set({{0, 0}, {2, 0}}), ProblemKind::MEB, 1.0));
  const auto r = cli({"solve", p, "--no-normalize"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "meb");
  EXPECT_NE(r.out.find("center"), std::string::npos);
}

}  // namespace
}  // namespace lptest
