// Copyright 2026 The Authors.
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

#include "balanced/simulator.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "balanced/errors.h"

namespace balanced {
namespace {

namespace fs = std::filesystem;

constexpr double kExact = 1e-12;

Scenario Fig3(std::size_t iterations) {
  Scenario s = LoadScenario("fig3");
  s.iterations = iterations;
  return s;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FeedPage PageOf(const std::vector<std::size_t>& types) {
  FeedPage page;
  for (std::size_t i = 0; i < types.size(); ++i) {
    Article a;
    a.id = "p" + std::to_string(i);
    a.type = types[i];
    page.slots.push_back(a);
  }
  return page;
}

TEST(ScenarioTest, PresetsLoadAndValidate) {
  for (const char* name : {"fig3", "fig3_long", "unconstrained", "no_preference", "slider"}) {
    SCOPED_TRACE(name);
    const Scenario s = LoadScenario(name);
    EXPECT_EQ(s.name, name);
    EXPECT_NO_THROW(s.Validate());
  }
  EXPECT_THROW(LoadScenario("no_such_preset"), ConfigError);
}

TEST(ScenarioTest, InvalidScenariosFailBeforeRunning) {
  EXPECT_THROW(ParseScenario(R"({"iterations": 0})"), ConfigError);
  EXPECT_THROW(ParseScenario(R"({"user": {"preferred_type": "green"}})"), ConfigError);
  EXPECT_THROW(ParseScenario(R"({"session": {"lower_liberal": 0.9, "upper_liberal": 0.1}})"),
               ConfigError);
  EXPECT_THROW(ParseScenario(R"({"constraint_schedule": [{"iteration": 0, "lower_liberal": 0.1,
                                 "upper_liberal": 0.9}]})"),
               ConfigError);
  EXPECT_THROW(ParseScenario(R"({"surprise": 1})"), ConfigError);
  EXPECT_THROW(ParseScenario("[]"), ConfigError);
}

TEST(RunScenarioTest, Fig3StaysInsideTheBand) {
  const RunResult r = RunScenario(Fig3(5), 1);
  ASSERT_EQ(r.rows.size(), 6u);
  double prev = -1.0;
  for (const RunRow& row : r.rows) {
    EXPECT_LE(row.pct_lib_balanced, 0.8 + kExact);
    EXPECT_GE(row.pct_lib_balanced, 0.2 - kExact);
    EXPECT_GE(row.pct_lib_unfiltered, prev);
    prev = row.pct_lib_unfiltered;
  }
  EXPECT_GT(r.rows.back().pct_lib_unfiltered, r.rows.front().pct_lib_unfiltered);
  EXPECT_EQ(r.rows[0].clicked_type, "");
  EXPECT_EQ(r.rows[1].clicked_type, "liberal");
}

TEST(RunScenarioTest, Fig3TrajectoryIsPinned) {
  const RunResult r = RunScenario(Fig3(5), 1);
  const std::vector<double> unfiltered = {0.5, 0.6, 0.7, 0.8, 0.8, 0.8};
  std::vector<double> got;
  for (const RunRow& row : r.rows) got.push_back(row.pct_lib_unfiltered);
  ASSERT_EQ(got.size(), unfiltered.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], unfiltered[i], kExact);
  EXPECT_EQ(r.summary.first_cap_contact, 3u);
}

// Regression fixture frozen from this implementation: with defaults, the
// unfiltered feed of a deterministic liberal clicker first shows ten liberal
// articles at t = 87, while the balanced feed stays at eight.
TEST(RunScenarioTest, UnfilteredSaturationFixture) {
  const RunResult r = RunScenario(Fig3(200), 1);
  EXPECT_EQ(r.summary.first_unfiltered_saturation, 87u);
  for (const RunRow& row : r.rows) EXPECT_LE(row.pct_lib_balanced, 0.8 + kExact);
  EXPECT_NEAR(r.summary.final_pct_lib_balanced, 0.8, kExact);
}

TEST(RunScenarioTest, CapContactIsSticky) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunResult r = RunScenario(Fig3(40), seed);
    ASSERT_TRUE(r.summary.first_cap_contact);
    for (const RunRow& row : r.rows) {
      if (row.t >= *r.summary.first_cap_contact) EXPECT_NEAR(row.pct_lib_balanced, 0.8, kExact);
    }
  }
}

TEST(RunScenarioTest, DeterministicForFixedSeed) {
  const Scenario s = LoadScenario("unconstrained");
  const RunResult a = RunScenario(s, 42), b = RunScenario(s, 42);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.summary, b.summary);
}

TEST(RunScenarioTest, TrivialConstraintsGiveIdenticalColumns) {
  const Scenario s = LoadScenario("unconstrained");
  for (std::uint64_t seed : {1, 2, 3, 99}) {
    const RunResult r = RunScenario(s, seed);
    for (const RunRow& row : r.rows) {
      EXPECT_EQ(row.pct_lib_unfiltered, row.pct_lib_balanced) << "seed " << seed;
    }
  }
}

TEST(RunScenarioTest, SliderScheduleAppliesBounds) {
  const Scenario s = LoadScenario("slider");
  const RunResult r = RunScenario(s, 5);
  ASSERT_EQ(r.rows.size(), s.iterations + 1);
  for (const RunRow& row : r.rows) {
    EXPECT_GE(row.pct_lib_balanced, row.lower - kExact) << row.t;
    EXPECT_LE(row.pct_lib_balanced, row.upper + kExact) << row.t;
  }
  EXPECT_EQ(r.rows[8].lower, 0.4);
  EXPECT_EQ(r.rows[14].upper, 0.6);
  EXPECT_EQ(r.rows[15].upper, 1.0);
}

// Reversing the type order and swapping the preference must mirror every
// row exactly, since all tie-breaking is by type index.
TEST(SymmetryTest, TypeOrderReversalMirrorsTrajectories) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Scenario base = LoadScenario("unconstrained");
    base.session.lower_liberal = 0.3;
    base.session.upper_liberal = 0.9;
    base.preference_strength = 0.8;
    base.iterations = 40;
    Scenario mirror = base;
    mirror.session.types = {"conservative", "liberal"};
    mirror.preferred_type = "conservative";
    mirror.session.lower_liberal = 1.0 - base.session.upper_liberal;
    mirror.session.upper_liberal = 1.0 - base.session.lower_liberal;

    const RunResult a = RunScenario(base, seed), b = RunScenario(mirror, seed);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      EXPECT_NEAR(b.rows[i].pct_lib_unfiltered, 1.0 - a.rows[i].pct_lib_unfiltered, kExact);
      EXPECT_NEAR(b.rows[i].pct_lib_balanced, 1.0 - a.rows[i].pct_lib_balanced, kExact);
      EXPECT_EQ(a.rows[i].clicked_type.empty(), b.rows[i].clicked_type.empty());
      if (!a.rows[i].clicked_type.empty()) {
        EXPECT_NE(a.rows[i].clicked_type, b.rows[i].clicked_type);
      }
    }
  }
}

TEST(StatisticalTest, NoDriftWithoutPreference) {
  Scenario s = LoadScenario("no_preference");
  ASSERT_EQ(s.preference_strength, 0.5);
  s.iterations = 50;
  const auto pools = ScenarioPools(s);
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    total += RunScenario(s, seed, pools).rows.at(50).pct_lib_unfiltered;
  }
  const double mean = total / 200.0;
  EXPECT_GE(mean, 0.4);
  EXPECT_LE(mean, 0.6);
}

TEST(SampleClickTest, PreferredTypeOnly) {
  const FeedPage page = PageOf({1, 0, 1, 0, 0, 1});
  Engine engine = MakeEngine(1, kUserModelStream);
  std::map<std::string, int> hits;
  for (int i = 0; i < 3000; ++i) ++hits[*SampleClick({0, 1.0, 1.0}, page, engine)];
  EXPECT_EQ(hits.size(), 3u);
  for (const char* id : {"p1", "p3", "p4"}) EXPECT_GT(hits[id], 800) << id;
}

TEST(SampleClickTest, ZeroClickProbability) {
  const FeedPage page = PageOf({0, 1});
  Engine engine = MakeEngine(1, kUserModelStream);
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(SampleClick({0, 0.0, 1.0}, page, engine));
}

TEST(SampleClickTest, AbsentPreferredTypeFallsBackToAllSlots) {
  const FeedPage page = PageOf({1, 1, 1});
  Engine engine = MakeEngine(2, kUserModelStream);
  std::map<std::string, int> hits;
  for (int i = 0; i < 3000; ++i) ++hits[*SampleClick({0, 1.0, 1.0}, page, engine)];
  EXPECT_EQ(hits.size(), 3u);
}

TEST(SampleClickTest, StrengthSplitsByType) {
  const FeedPage page = PageOf({0, 0, 0, 0, 0, 0, 0, 0, 1, 1});
  Engine engine = MakeEngine(3, kUserModelStream);
  int preferred = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const std::string id = *SampleClick({0, 1.0, 0.5}, page, engine);
    preferred += id != "p8" && id != "p9";
  }
  // Binomial(20000, 0.5): five standard deviations is about 354.
  EXPECT_NEAR(preferred, n / 2, 354);
}

class EmitTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "simulator_emit_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(EmitTest, CsvHasHeaderAndOneRowPerIteration) {
  const RunResult r = RunScenario(Fig3(5), 1);
  Emit(r, dir_ / "fig3.csv", OutputFormat::kCsv);
  std::istringstream in(Slurp(dir_ / "fig3.csv"));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "t,pct_lib_unfiltered,pct_lib_balanced,lower,upper,clicked_type");
  EXPECT_EQ(lines[1], "0,0.5,0.5,0.2,0.8,");
  EXPECT_EQ(lines[2].substr(lines[2].rfind(',')), ",liberal");
}

TEST_F(EmitTest, SameSeedIsByteIdentical) {
  const Scenario s = LoadScenario("unconstrained");
  for (OutputFormat f : {OutputFormat::kCsv, OutputFormat::kJsonl}) {
    Emit(RunScenario(s, 7), dir_ / "a.out", f);
    Emit(RunScenario(s, 7), dir_ / "b.out", f);
    EXPECT_EQ(Slurp(dir_ / "a.out"), Slurp(dir_ / "b.out"));
  }
}

TEST_F(EmitTest, JsonlRows) {
  const std::string text = Render(RunScenario(Fig3(1), 1), OutputFormat::kJsonl);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            R"({"t":0,"pct_lib_unfiltered":0.5,"pct_lib_balanced":0.5,"lower":0.2,)"
            R"("upper":0.8,"clicked_type":null})");
}

TEST_F(EmitTest, UnwritablePathLeavesNothingBehind) {
  const RunResult r = RunScenario(Fig3(5), 1);
  EXPECT_THROW(Emit(r, dir_ / "missing" / "out.csv", OutputFormat::kCsv), IoError);
  EXPECT_TRUE(fs::is_empty(dir_));
  fs::create_directories(dir_ / "taken.csv");
  EXPECT_THROW(Emit(r, dir_ / "taken.csv", OutputFormat::kCsv), IoError);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator()), 1);
}

TEST(OutputFormatTest, Parse) {
  EXPECT_EQ(ParseOutputFormat("csv"), OutputFormat::kCsv);
  EXPECT_EQ(ParseOutputFormat("jsonl"), OutputFormat::kJsonl);
  EXPECT_FALSE(ParseOutputFormat("xml"));
}

}  // namespace
}  // namespace balanced
