#include "commfam/cli/config.hpp"
#include "commfam/cli/report.hpp"
#include "commfam/cli/scenario.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace commfam;
using namespace commfam::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("commfam_test_" + name)).string();
}

Report run_config(std::string_view text) { return run_scenario(Scenario::from_config(Config::parse(text))); }

void expect_config_error_naming(std::string_view text, const std::string& field) {
  try {
    (void)run_config(text);
    ADD_FAILURE() << "no ConfigError for: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Config, ParsesCommentsQuotesAndLists) {
  const Config c = Config::parse("# header\nkind = weyl-rational  # trailing\nT = \"z*d + 1 # not a comment\"\n"
                                 "points = [0, 1/2, -3]\n\nseed = 42\n");
  EXPECT_EQ(c.get_string("kind"), "weyl-rational");
  EXPECT_EQ(c.get_string("T"), "z*d + 1 # not a comment");
  EXPECT_EQ(c.get_u64("seed"), 42u);
  const std::vector<Rat> pts = c.get_rat_list("points");
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[1], Rat(1, 2));
  EXPECT_EQ(pts[2], Rat(-3));
}

TEST(Config, MalformedInputNamesTheField) {
  EXPECT_THROW(Config::parse("just words"), ConfigError);
  EXPECT_THROW(Config::parse("a = 1\na = 2"), ConfigError);
  EXPECT_THROW(Config::parse("= 3"), ConfigError);
  const Config c = Config::parse("n = two\npoints = [1, x]\nflag = maybe");
  try {
    (void)c.get_int("n");
    ADD_FAILURE();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("n"), std::string::npos);
  }
  EXPECT_THROW((void)c.get_rat_list("points"), ConfigError);
  EXPECT_THROW((void)c.get_bool("flag", false), ConfigError);
  EXPECT_THROW((void)c.get_int("missing"), ConfigError);
  EXPECT_EQ(c.get_int("missing", 5), 5);
}

TEST(Config, OutOfRangeAndUnknownFieldsAreRejected) {
  expect_config_error_naming("kind = skew-matrix\nseed = 1\nn = 0", "n");
  expect_config_error_naming("kind = skew-matrix\nseed = 1\nwidth = 3", "width");
  expect_config_error_naming("kind = no-such-kind\nseed = 1", "no-such-kind");
  expect_config_error_naming("kind = grassmann\narity = 2", "seed");
  expect_config_error_naming("seed = 1", "kind");
  expect_config_error_naming("kind = weyl-rational\nseed = 1\nN = 2\npoints = [0, 0]", "points");
}

TEST(Scenario, EveryKindIsListedWithDefaults) {
  std::set<std::string> names;
  for (const auto& k : scenario_kinds()) {
    names.insert(k.kind);
    EXPECT_FALSE(k.summary.empty()) << k.kind;
  }
  EXPECT_EQ(names.size(), scenario_kinds().size());
  for (const char* k : {"skew-matrix", "identity-suite", "poisson-classical", "grassmann", "hyperplane", "cone-p1",
                        "dual-number", "weyl-rational", "weyl-basis", "hbar-localization"})
    EXPECT_TRUE(names.count(k)) << k;
}

TEST(Report, RoundTripsThroughJson) {
  Report r;
  r.kind = "grassmann";
  r.params = {{"arity", "4"}, {"dim", "6"}};
  r.seed = 18446744073709551615ull;
  r.checks = {{"trial 0: pluecker", "sum = 0", Status::pass, "", ""},
              {"trial 1: pluecker", "sum = 0", Status::fail, "value=3/7 at (0,1)", ""},
              {"trial 2: pluecker", "sum = 0", Status::skipped, "draw exhausted", "resampled 20 draws"}};
  r.duration_ms = 12;
  r.version = "1.0.0";
  EXPECT_EQ(report_from_text(report_to_text(r)), r);
  EXPECT_FALSE(r.passed());
}

TEST(Report, EmptyCheckListIsValid) {
  Report r;
  r.kind = "cone-p1";
  r.version = "1.0.0";
  const Report back = report_from_text(report_to_text(r));
  EXPECT_TRUE(back.checks.empty());
  EXPECT_EQ(back, r);
}

TEST(Report, FailingWitnessIsWrittenToFile) {
  Report r;
  r.kind = "skew-matrix";
  r.checks = {{"trial 3: commute", "[H_i,H_j] = 0", Status::fail, "(0,1)=5/2", ""}};
  const std::string path = temp_path("witness.json");
  emit_report(r, path);
  const std::string text = read_file(path);
  EXPECT_NE(text.find("\"fail\""), std::string::npos);
  EXPECT_NE(text.find("(0,1)=5/2"), std::string::npos);
  EXPECT_EQ(load_report(path), r);
  std::filesystem::remove(path);
}

TEST(Report, MalformedTextAndBadPathsRaiseIoError) {
  EXPECT_THROW(report_from_text("{not json"), IoError);
  EXPECT_THROW(report_from_text("{\"seed\": 1}"), IoError);
  EXPECT_THROW(emit_report(Report{}, "/nonexistent-dir/x/report.json"), IoError);
  EXPECT_THROW(load_report("/nonexistent-dir/x/report.json"), IoError);
}

TEST(Scenario, ExampleConfigsPass) {
  for (const char* text : {"kind = grassmann\narity = 4\ndim = 6\ntrials = 100\nseed = 7\n",
                           "kind = identity-suite\nn = 2\nd = 2\ntrials = 5\nseed = 1\n",
                           "kind = weyl-rational\nN = 2\nT = \"d1\"\npoints = [0, 1]\nseed = 3\n"}) {
    const Report r = run_config(text);
    EXPECT_TRUE(r.passed()) << text;
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_FALSE(c.anchor.empty()) << c.name;
  }
}

TEST(Scenario, RunsAreDeterministicApartFromDuration) {
  for (const char* text : {"kind = skew-matrix\nn = 2\nd = 2\ntrials = 6\nseed = 99\n",
                           "kind = hbar-localization\nM = 3\nf = \"z^2+1\"\ntrials = 3\nseed = 5\n",
                           "kind = dual-number\nn = 2\ntrials = 4\nfamilies = 1\nseed = 11\n"}) {
    Report a = run_config(text), b = run_config(text);
    a.duration_ms = b.duration_ms = 0;
    EXPECT_EQ(a, b) << text;
    EXPECT_EQ(report_to_text(a), report_to_text(b));
  }
}

TEST(Scenario, ParallelJobsGiveTheSameChecks) {
  const Scenario s = Scenario::from_config(Config::parse("kind = cone-p1\ntrials = 8\nseed = 3\n"));
  Report a = run_scenario(s, {1}), b = run_scenario(s, {3});
  a.duration_ms = b.duration_ms = 0;
  EXPECT_EQ(a, b);
}

TEST(Scenario, ParamsRecordEffectiveDefaults) {
  const Report r = run_config("kind = hyperplane\nseed = 4\ntrials = 2\n");
  EXPECT_EQ(r.params.at("g"), "2");
  EXPECT_EQ(r.params.at("trials"), "2");
  EXPECT_EQ(r.seed, 4u);
}
