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

#ifndef BALANCED_SIMULATOR_H_
#define BALANCED_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/feed.h"
#include "balanced/random.h"
#include "balanced/session.h"

namespace balanced {

// A scripted reader. On each page the user clicks at all with probability
// click_prob; a click goes to the preferred type with probability
// preference_strength and to the other types otherwise, uniformly among the
// matching slots. When the page shows no slot of the chosen kind the click
// falls back to a uniformly random slot.
struct UserModel {
  std::size_t preferred_type = 0;
  double click_prob = 1.0;
  double preference_strength = 1.0;
};

// Engine stream for user-model draws; page shuffles use the iteration.
inline constexpr std::uint64_t kUserModelStream = 0xC11C000000000000ULL;

// Returns the clicked article id, or nullopt for no click.
std::optional<std::string> SampleClick(const UserModel& model, const FeedPage& page,
                                       Engine& engine);

struct ScheduledConstraintChange {
  std::uint64_t iteration = 0;  // applied before that iteration's click
  double lower_liberal = 0.0;
  double upper_liberal = 1.0;
};

struct Scenario {
  std::string name;
  SessionConfig session;
  std::string preferred_type = "liberal";
  double click_prob = 1.0;
  double preference_strength = 1.0;
  Feed click_feed = Feed::kBalanced;
  std::size_t iterations = 5;
  std::vector<ScheduledConstraintChange> schedule;
  // Without a corpus the run uses a synthetic one large enough for every
  // page it serves.
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> bias_map;

  UserModel user() const;
  // Throws std::invalid_argument, ConfigError or InfeasibleConstraintsError.
  void Validate() const;
};

// Relative corpus and bias-map paths resolve against base_dir. Throws
// ConfigError.
Scenario ParseScenario(std::string_view json_text,
                       const std::filesystem::path& base_dir = {});
// Checked-in presets.
std::filesystem::path DefaultScenarioDir();

// `name_or_path` is a file path, or the name of a preset in scenario_dir
// ("fig3" -> scenario_dir/fig3.json).
Scenario LoadScenario(std::string_view name_or_path,
                      const std::filesystem::path& scenario_dir = DefaultScenarioDir());

// `per_type` articles per type with strictly decreasing ratings. Pools of
// different types differ only in ids, titles and urls.
TypePools SyntheticPools(const TypeSet& types, std::size_t per_type);
std::shared_ptr<const TypePools> ScenarioPools(const Scenario& scenario);

struct RunRow {
  std::uint64_t t = 0;
  double pct_lib_unfiltered = 0.0;
  double pct_lib_balanced = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string clicked_type;  // empty when nothing was clicked

  bool operator==(const RunRow&) const = default;
};

struct RunSummary {
  double final_pct_lib_unfiltered = 0.0;
  double final_pct_lib_balanced = 0.0;
  // First iteration whose balanced page sits on an integer constraint bound.
  std::optional<std::uint64_t> first_cap_contact;
  // First iteration whose unfiltered page shows a single type.
  std::optional<std::uint64_t> first_unfiltered_saturation;

  std::string ToLine() const;
  bool operator==(const RunSummary&) const = default;
};

struct RunResult {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t page_size = 0;
  std::vector<RunRow> rows;  // iterations + 1, starting at t = 0
  RunSummary summary;
};

RunResult RunScenario(const Scenario& scenario, std::uint64_t seed);
RunResult RunScenario(const Scenario& scenario, std::uint64_t seed,
                      std::shared_ptr<const TypePools> pools);

// Fills in result.summary from its rows.
void Summarize(RunResult& result);

enum class OutputFormat { kCsv, kJsonl };
std::optional<OutputFormat> ParseOutputFormat(std::string_view name);

std::string Render(const RunResult& result, OutputFormat format);
// Writes through a temporary file in the same directory, so a failed write
// leaves nothing behind. Throws IoError.
void Emit(const RunResult& result, const std::filesystem::path& path,
          OutputFormat format);

}  // namespace balanced

#endif  // BALANCED_SIMULATOR_H_
