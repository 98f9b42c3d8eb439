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

#ifndef BALANCED_SESSION_H_
#define BALANCED_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/bandit.h"
#include "balanced/feed.h"
#include "balanced/types.h"

namespace balanced {

enum class Feed { kUnfiltered, kBalanced };

std::string_view FeedName(Feed feed);
std::optional<Feed> ParseFeed(std::string_view name);

// Defaults for new sessions. Sessions have exactly two types; constraints
// are expressed on the tracked type and mirrored onto the other one.
struct SessionConfig {
  std::vector<std::string> types = {"liberal", "conservative"};
  std::string tracked_type = "liberal";
  std::size_t page_size = 10;
  double eta = 0.5;
  double gamma = 0.1;
  double lower_liberal = 0.2;
  double upper_liberal = 0.8;

  TypeSet type_set() const { return TypeSet(types); }
  std::size_t tracked_index() const;

  // Throws std::invalid_argument or InfeasibleConstraintsError.
  void Validate() const;
  bool operator==(const SessionConfig&) const = default;
};

// Missing keys keep their defaults. Throws ConfigError.
SessionConfig ParseSessionConfig(std::string_view json_text);
SessionConfig LoadSessionConfig(const std::filesystem::path& path);

// Bounds [lower, upper] on the tracked type and [1 - upper, 1 - lower] on
// the other. Throws InfeasibleConstraintsError when lower > upper and
// std::invalid_argument when a bound is outside [0,1].
ConstraintConfig TrackedTypeConstraints(std::size_t tracked_index, double lower,
                                        double upper);

struct HistoryPoint {
  std::uint64_t t = 0;
  double pct_liberal_unfiltered = 0.0;
  double pct_liberal_balanced = 0.0;
  double lower_liberal = 0.0;
  double upper_liberal = 0.0;

  bool operator==(const HistoryPoint&) const = default;
};

struct SessionState {
  std::string session_id;
  SessionConfig config;
  std::uint64_t seed = 0;
  BanditState unfiltered;
  BanditState balanced;
  ConstraintConfig constraints;
  SeenSet seen_unfiltered;
  SeenSet seen_balanced;
  FeedPage unfiltered_page;
  FeedPage balanced_page;
  std::vector<HistoryPoint> history;
  // Immutable corpus snapshot shared by every session.
  std::shared_ptr<const TypePools> pools;

  double lower_liberal() const { return constraints.lower[config.tracked_index()]; }
  double upper_liberal() const { return constraints.upper[config.tracked_index()]; }
  std::uint64_t t() const { return unfiltered.t; }
  const FeedPage& page(Feed feed) const {
    return feed == Feed::kUnfiltered ? unfiltered_page : balanced_page;
  }
};

// Fresh learners, the configured constraints, first pages for both feeds and
// history point 0.
SessionState CreateSession(const SessionConfig& config, std::uint64_t seed,
                           std::string session_id,
                           std::shared_ptr<const TypePools> pools);

// Resolves the click against the named feed's current page, feeds the same
// reward to both learners (each against its own page's distribution) and
// serves the next pages. Throws UnknownArticleError for ids not on that page.
SessionState ApplyClick(const SessionState& state, Feed feed,
                        std::string_view article_id);

// Replaces the constraints and recomposes the balanced page at the current
// iteration. Learners are untouched.
SessionState ApplyConstraintChange(const SessionState& state, double lower_liberal,
                                   double upper_liberal);

// An iteration in which the user clicked nothing.
SessionState AdvanceWithoutClick(const SessionState& state);

inline const std::vector<HistoryPoint>& History(const SessionState& state) {
  return state.history;
}

// Compares everything except the pools pointer; weights within tolerance.
bool EquivalentStates(const SessionState& a, const SessionState& b,
                      double weight_tolerance = 1e-12);

}  // namespace balanced

#endif  // BALANCED_SESSION_H_
