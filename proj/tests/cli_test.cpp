#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "porth/cli.hpp"

using namespace porth;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "porth");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("porth_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kL1 = R"({"dim":3,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":1},"p_class":1})";
const char* kSup = R"({"dim":4,"cone":{"kind":"nonneg"},"norm":{"kind":"sup"},"p_class":"inf"})";

}  // namespace

TEST(SpaceIo, Examples) {
  const auto s = parse_space_spec(R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":2.0},"p_class":2.0})");
  EXPECT_EQ(s, lp_space(2, 2.0));
  try {
    parse_space_spec(R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":0.5},"p_class":2})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("invalid exponent"), std::string::npos);
  }
  try {
    parse_space_spec(R"({"dim":2,"cone":{"kind":"rays","generators":[[1,0],[-1,0]]},"norm":{"kind":"sup"},"p_class":"inf"})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("cone not proper"), std::string::npos);
  }
  try {
    parse_space_spec(R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"order_unit","unit":[1,0]},"p_class":"inf"})");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("order unit not interior"), std::string::npos);
  }
}

TEST(SpaceIo, Rejections) {
  const std::vector<std::string> bad{
      "not json",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"sup"},"p_class":"inf","extra":1})",
      R"({"dim":2,"cone":{"kind":"nonneg","side":2},"norm":{"kind":"sup"},"p_class":"inf"})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"sup","p":2},"p_class":"inf"})",
      R"({"dim":0,"cone":{"kind":"nonneg"},"norm":{"kind":"sup"},"p_class":"inf"})",
      R"({"dim":2.5,"cone":{"kind":"nonneg"},"norm":{"kind":"sup"},"p_class":"inf"})",
      R"({"dim":3,"cone":{"kind":"psd"},"norm":{"kind":"spectral"},"p_class":"inf"})",
      R"({"dim":2,"cone":{"kind":"cube"},"norm":{"kind":"sup"},"p_class":"inf"})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":"infinity"},"p_class":2})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":2}})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":2,"weights":[1,-1]},"p_class":2})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"base","phi":[1,0]},"p_class":1})",
      R"({"dim":2,"cone":{"kind":"nonneg"},"norm":{"kind":"spectral"},"p_class":"inf"})",
  };
  for (const auto& text : bad) EXPECT_THROW(parse_space_spec(text), InputError) << text;
}

TEST(SpaceIo, RoundTrip) {
  std::vector<SpaceSpec> specs;
  for (const auto& fam : default_families()) specs.push_back(fam.space);
  specs.push_back(lp_space(3, Exponent::infinity(), {1, 2, 0.5}));
  specs.push_back(lp_space(2, 1.25, {0.1, 3}));
  specs.push_back(order_unit_space(ConeSpec::orthant(3), {1, 2, 3}));
  specs.push_back(order_unit_space(ConeSpec::psd(2), {2, 0.5, 0.5, 1}));
  specs.push_back(base_space(ConeSpec::psd(2), {1, 0, 0, 1}));
  specs.push_back(base_space(ConeSpec::rays({{1, 1}, {1, -1}}), {1, 0}));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int t = 0; t < 50; ++t) {
    Vector w(4);
    for (auto& x : w) x = u(rng);
    specs.push_back(lp_space(4, 1.0 + u(rng), w));
  }
  for (const auto& s : specs) {
    const std::string text = serialize_space(s);
    EXPECT_EQ(parse_space_spec(text), s) << text;
    EXPECT_EQ(serialize_space(parse_space_spec(text)), text);
  }
}

TEST(SpaceIo, CsvAndExponent) {
  EXPECT_EQ(parse_csv("1,1,0"), (Vector{1, 1, 0}));
  EXPECT_EQ(parse_csv("-2.5,1e-3,+4"), (Vector{-2.5, 1e-3, 4}));
  for (const char* bad : {"", "1,,2", "1, 2", "1,2,", "a", "1;2", "nan", "1e999"})
    EXPECT_THROW(parse_csv(bad), InputError) << bad;
  EXPECT_TRUE(parse_exponent("inf").is_infinite());
  EXPECT_EQ(parse_exponent("1.5"), Exponent(1.5));
  for (const char* bad : {"0.5", "x", "", "2x", "-inf"}) EXPECT_THROW(parse_exponent(bad), InputError) << bad;
}

TEST(SpaceIo, ReportFields) {
  const auto r = run_suite(SuiteId::def22_Op1, sup_space(3), 5, 1e-8, 2);
  const Json j = report_to_json(r);
  for (const char* k : {"suite", "space", "samples", "passes", "counterexamples", "seed", "tolerance", "elapsed_ms",
                        "version", "status"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["suite"], "def22_Op1");
  EXPECT_EQ(space_from_json(j["space"]), sup_space(3));
}

// Doubles in reports re-parse to the same bits.
TEST(SpaceIo, CounterexamplesReproduce) {
  auto s = lp_space(4, 1.0);
  s.p_class = Exponent::infinity();
  const auto r = run_suite(SuiteId::def22_Op1, s, 100, 1e-8, 5);
  ASSERT_FALSE(r.counterexamples.empty());
  const Json j = Json::parse(report_to_json(r).dump());
  const auto& first = j["counterexamples"][0];
  for (const auto& [name, v] : r.counterexamples.front().input) EXPECT_EQ(first["input"][name].get<Vector>(), v);
  EXPECT_EQ(first["residual"].get<double>(), r.counterexamples.front().residual);
}

TEST(Cli, OrthoExample) {
  const auto space = write_temp("l1_3.json", kL1);
  const auto r = run({"ortho", "--space", space, "--x", "1,1,0", "--y", "0,1,1", "--p", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "not_orthogonal");
  EXPECT_EQ(j["witness_k"].get<double>(), -1.0);
  EXPECT_EQ(j["exact"], false);
}

TEST(Cli, VerifyExample46) {
  const auto r = run({"verify", "ex46_nonuniqueness", "--n", "2049"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  const auto& rep = j["reports"][0];
  EXPECT_EQ(rep["passes"], rep["samples"]);
  EXPECT_NEAR(rep["metrics"]["max_gap"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, VerifyAllOnSpace) {
  const auto space = write_temp("sup4.json", kSup);
  const auto out = (std::filesystem::temp_directory_path() / "porth_cli_test_report.json").string();
  const auto r = run({"verify", "all", "--space", space, "--samples", "50", "--seed", "7", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  const Json j = Json::parse(in);
  EXPECT_GT(j["reports"].size(), 10u);
  for (const auto& rep : j["reports"]) EXPECT_TRUE(rep["counterexamples"].empty()) << rep["suite"];
}

TEST(Cli, ExitCodes) {
  const auto space = write_temp("l1_3b.json", kL1);
  const auto bad_class = write_temp("l1_inf.json",
                                    R"({"dim":4,"cone":{"kind":"nonneg"},"norm":{"kind":"lp","p":1},"p_class":"inf"})");
  EXPECT_EQ(run({"verify", "def22_Op1", "--space", bad_class, "--samples", "100"}).code, 1);
  EXPECT_EQ(run({"verify", "cor38_order_unit", "--space", space}).code, 2);
  EXPECT_EQ(run({"verify", "no_such_suite"}).code, 2);
  EXPECT_EQ(run({"verify", "all", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"ortho", "--space", space, "--x", "1,1", "--y", "0,1,1", "--p", "1"}).code, 2);
  EXPECT_EQ(run({"ortho", "--space", space, "--x", "1,1,0", "--y", "0,1,1", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"ortho", "--space", "/nonexistent.json", "--x", "1", "--y", "1", "--p", "1"}).code, 2);
  EXPECT_EQ(run({"crust", "--space", space, "--u", "1,0,0"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, QueryCommands) {
  const auto sup = write_temp("sup4b.json", kSup);
  auto r = run({"decompose", "--space", sup, "--v", "1,-2,0,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_LE(j["norm_aggregate"].get<double>(), 3.0 + 1e-6);

  r = run({"support", "--space", sup, "--v", "1,2,0,0", "--positive"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_EQ(j["is_positive"], true);
  EXPECT_NEAR(j["attained_value"].get<double>(), 2.0, 1e-12);

  r = run({"crust", "--space", sup, "--u", "1,0.5,0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_FALSE(j["crust"].is_null());
  EXPECT_EQ(j["partner_orthogonal"], true);
  EXPECT_EQ(j["partner"].get<Vector>(), (Vector{0, 0.5, 1, 1}));

  r = run({"crust", "--space", sup, "--u", "1,1,1,0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["crust"].is_null());

  r = run({"example46", "--n", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_EQ(j["g1"].size(), 9u);
  EXPECT_EQ(j["report"]["status"], "ok");
}
