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

#include "balanced/session.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "balanced/errors.h"
#include "config_json.h"

namespace balanced {
namespace internal {

nlohmann::json ConfigToJson(const SessionConfig& config) {
  return {{"types", config.types},
          {"tracked_type", config.tracked_type},
          {"page_size", config.page_size},
          {"eta", config.eta},
          {"gamma", config.gamma},
          {"lower_liberal", config.lower_liberal},
          {"upper_liberal", config.upper_liberal}};
}

SessionConfig ConfigFromJson(const nlohmann::json& obj, const SessionConfig& base) {
  if (!obj.is_object()) throw ConfigError("session config must be a JSON object");
  SessionConfig config = base;
  try {
    for (const auto& [key, value] : obj.items()) {
      if (key == "types") {
        config.types = value.get<std::vector<std::string>>();
      } else if (key == "tracked_type") {
        config.tracked_type = value.get<std::string>();
      } else if (key == "page_size") {
        if (!value.is_number_unsigned()) throw ConfigError("page_size must be a positive integer");
        config.page_size = value.get<std::size_t>();
      } else if (key == "eta") {
        config.eta = value.get<double>();
      } else if (key == "gamma") {
        config.gamma = value.get<double>();
      } else if (key == "lower_liberal") {
        config.lower_liberal = value.get<double>();
      } else if (key == "upper_liberal") {
        config.upper_liberal = value.get<double>();
      } else {
        throw ConfigError("unknown session config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad session config: ") + e.what());
  }
  return config;
}

}  // namespace internal

namespace {

double Share(const FeedPage& page, std::size_t type) {
  return static_cast<double>(page.CountOf(type)) /
         static_cast<double>(page.allocation.page_size);
}

FeedPage ServeUnfiltered(SessionState& s) {
  const Distribution dist = BaseDistribution(s.unfiltered);
  const SlotAllocation alloc = AllocateSlots(dist, s.config.page_size, std::nullopt);
  return ComposePage(alloc, *s.pools, s.seen_unfiltered, s.unfiltered.t, dist, s.seed);
}

FeedPage ServeBalanced(SessionState& s) {
  const Distribution dist = ProjectToConstraints(BaseDistribution(s.balanced), s.constraints);
  const SlotAllocation alloc = AllocateSlots(dist, s.config.page_size, s.constraints);
  return ComposePage(alloc, *s.pools, s.seen_balanced, s.balanced.t, dist, s.seed);
}

void RecordHistory(SessionState& s) {
  const std::size_t tracked = s.config.tracked_index();
  s.history.push_back({s.t(), Share(s.unfiltered_page, tracked),
                       Share(s.balanced_page, tracked), s.lower_liberal(),
                       s.upper_liberal()});
}

void ServeBoth(SessionState& s) {
  s.unfiltered_page = ServeUnfiltered(s);
  s.balanced_page = ServeBalanced(s);
  RecordHistory(s);
}

// A learner whose own page gave the clicked type zero probability cannot
// form an importance-weighted estimate; for it the click is an empty step.
BanditState Learn(const BanditState& learner, const RewardSignal& signal,
                  const Distribution& dist) {
  if (dist[signal.clicked_type] > 0.0) return Update(learner, signal, dist);
  return NoClickStep(learner);
}

}  // namespace

std::string_view FeedName(Feed feed) {
  return feed == Feed::kUnfiltered ? "unfiltered" : "balanced";
}

std::optional<Feed> ParseFeed(std::string_view name) {
  if (name == "unfiltered") return Feed::kUnfiltered;
  if (name == "balanced") return Feed::kBalanced;
  return std::nullopt;
}

std::size_t SessionConfig::tracked_index() const {
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i] == tracked_type) return i;
  }
  throw std::invalid_argument("tracked type '" + tracked_type + "' is not configured");
}

void SessionConfig::Validate() const {
  const TypeSet set = type_set();
  if (set.size() != 2) throw std::invalid_argument("sessions need exactly two types");
  const std::size_t tracked = tracked_index();
  if (page_size == 0) throw std::invalid_argument("page size must be positive");
  InitState(set.size(), eta, gamma);
  PageSlotBounds(TrackedTypeConstraints(tracked, lower_liberal, upper_liberal),
                 page_size);
}

SessionConfig ParseSessionConfig(std::string_view json_text) {
  auto obj = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) throw ConfigError("session config is not valid JSON");
  SessionConfig config = internal::ConfigFromJson(obj);
  try {
    config.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid session config: ") + e.what());
  }
  return config;
}

SessionConfig LoadSessionConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSessionConfig(buffer.str());
}

ConstraintConfig TrackedTypeConstraints(std::size_t tracked_index, double lower,
                                        double upper) {
  if (tracked_index > 1) throw std::invalid_argument("tracked type index out of range");
  for (double b : {lower, upper}) {
    if (!std::isfinite(b) || b < 0.0 || b > 1.0) {
      throw std::invalid_argument("constraint bound outside [0,1]");
    }
  }
  if (lower > upper) throw InfeasibleConstraintsError("empty constraint polytope");
  ConstraintConfig cfg{{0.0, 0.0}, {0.0, 0.0}};
  const std::size_t other = 1 - tracked_index;
  cfg.lower[tracked_index] = lower;
  cfg.upper[tracked_index] = upper;
  cfg.lower[other] = 1.0 - upper;
  cfg.upper[other] = 1.0 - lower;
  cfg.Validate();
  return cfg;
}

SessionState CreateSession(const SessionConfig& config, std::uint64_t seed,
                           std::string session_id,
                           std::shared_ptr<const TypePools> pools) {
  config.Validate();
  if (!pools || pools->size() != config.types.size()) {
    throw std::invalid_argument("pools do not match the configured types");
  }
  SessionState s;
  s.session_id = std::move(session_id);
  s.config = config;
  s.seed = seed;
  s.unfiltered = InitState(config.types.size(), config.eta, config.gamma);
  s.balanced = s.unfiltered;
  s.constraints = TrackedTypeConstraints(config.tracked_index(), config.lower_liberal,
                                         config.upper_liberal);
  s.pools = std::move(pools);
  ServeBoth(s);
  return s;
}

SessionState ApplyClick(const SessionState& state, Feed feed,
                        std::string_view article_id) {
  const RewardSignal signal = ResolveClick(state.page(feed), article_id);
  SessionState next = state;
  next.unfiltered = Learn(state.unfiltered, signal, state.unfiltered_page.sampling_dist);
  next.balanced = Learn(state.balanced, signal, state.balanced_page.sampling_dist);
  ServeBoth(next);
  return next;
}

SessionState ApplyConstraintChange(const SessionState& state, double lower_liberal,
                                   double upper_liberal) {
  ConstraintConfig cfg = TrackedTypeConstraints(state.config.tracked_index(),
                                                lower_liberal, upper_liberal);
  PageSlotBounds(cfg, state.config.page_size);
  SessionState next = state;
  next.constraints = std::move(cfg);
  next.balanced_page = ServeBalanced(next);
  RecordHistory(next);
  return next;
}

SessionState AdvanceWithoutClick(const SessionState& state) {
  SessionState next = state;
  next.unfiltered = NoClickStep(state.unfiltered);
  next.balanced = NoClickStep(state.balanced);
  ServeBoth(next);
  return next;
}

bool EquivalentStates(const SessionState& a, const SessionState& b,
                      double weight_tolerance) {
  auto close = [&](const BanditState& x, const BanditState& y) {
    if (x.t != y.t || x.eta != y.eta || x.gamma != y.gamma ||
        x.weights.size() != y.weights.size()) {
      return false;
    }
    for (std::size_t g = 0; g < x.weights.size(); ++g) {
      if (std::abs(x.weights[g] - y.weights[g]) > weight_tolerance) return false;
    }
    return true;
  };
  return a.session_id == b.session_id && a.config == b.config && a.seed == b.seed &&
         close(a.unfiltered, b.unfiltered) && close(a.balanced, b.balanced) &&
         a.constraints == b.constraints && a.seen_unfiltered == b.seen_unfiltered &&
         a.seen_balanced == b.seen_balanced && a.unfiltered_page == b.unfiltered_page &&
         a.balanced_page == b.balanced_page && a.history == b.history;
}

}  // namespace balanced
