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

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "balanced/errors.h"
#include "balanced/ingestion.h"
#include "config_json.h"
#include "json.hpp"

#ifndef BALANCED_SCENARIO_DIR
#define BALANCED_SCENARIO_DIR "scenarios"
#endif

namespace balanced {
namespace {

using nlohmann::json;

std::size_t SliceCount(double pct, std::size_t page_size) {
  return static_cast<std::size_t>(std::llround(pct * static_cast<double>(page_size)));
}

}  // namespace

std::optional<std::string> SampleClick(const UserModel& model, const FeedPage& page,
                                       Engine& engine) {
  if (page.slots.empty()) return std::nullopt;
  if (!(UniformUnit(engine) < model.click_prob)) return std::nullopt;
  const bool want_preferred = UniformUnit(engine) < model.preference_strength;
  std::vector<const Article*> candidates;
  for (const Article& a : page.slots) {
    if ((a.type == model.preferred_type) == want_preferred) candidates.push_back(&a);
  }
  if (candidates.empty()) {
    for (const Article& a : page.slots) candidates.push_back(&a);
  }
  return candidates[UniformIndex(engine, candidates.size())]->id;
}

UserModel Scenario::user() const {
  auto index = session.type_set().Find(preferred_type);
  if (!index) throw ConfigError("preferred type '" + preferred_type + "' is not configured");
  return {*index, click_prob, preference_strength};
}

void Scenario::Validate() const {
  session.Validate();
  user();
  if (iterations < 1) throw std::invalid_argument("scenario needs at least one iteration");
  for (double p : {click_prob, preference_strength}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
  }
  for (const auto& change : schedule) {
    if (change.iteration < 1) {
      throw std::invalid_argument("constraint change scheduled before the first click");
    }
    PageSlotBounds(TrackedTypeConstraints(session.tracked_index(), change.lower_liberal,
                                          change.upper_liberal),
                   session.page_size);
  }
  if (corpus.has_value() != bias_map.has_value()) {
    throw ConfigError("scenario corpus and bias_map must be given together");
  }
}

Scenario ParseScenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json obj = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) throw ConfigError("scenario is not a JSON object");
  Scenario s;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  try {
    for (const auto& [key, value] : obj.items()) {
      if (key == "name") {
        s.name = value.get<std::string>();
      } else if (key == "iterations") {
        if (!value.is_number_unsigned()) throw ConfigError("iterations must be a positive integer");
        s.iterations = value.get<std::size_t>();
      } else if (key == "session") {
        s.session = internal::ConfigFromJson(value);
      } else if (key == "user") {
        for (const auto& [ukey, uvalue] : value.items()) {
          if (ukey == "preferred_type") s.preferred_type = uvalue.get<std::string>();
          else if (ukey == "click_prob") s.click_prob = uvalue.get<double>();
          else if (ukey == "preference_strength") s.preference_strength = uvalue.get<double>();
          else throw ConfigError("unknown user model key '" + ukey + "'");
        }
      } else if (key == "click_feed") {
        auto feed = ParseFeed(value.get<std::string>());
        if (!feed) throw ConfigError("click_feed must be 'unfiltered' or 'balanced'");
        s.click_feed = *feed;
      } else if (key == "constraint_schedule") {
        for (const json& item : value) {
          s.schedule.push_back({item.at("iteration").get<std::uint64_t>(),
                                item.at("lower_liberal").get<double>(),
                                item.at("upper_liberal").get<double>()});
        }
      } else if (key == "corpus") {
        s.corpus = resolve(value.get<std::string>());
      } else if (key == "bias_map") {
        s.bias_map = resolve(value.get<std::string>());
      } else {
        throw ConfigError("unknown scenario key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario: ") + e.what());
  }
  try {
    s.Validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

std::filesystem::path DefaultScenarioDir() { return BALANCED_SCENARIO_DIR; }

Scenario LoadScenario(std::string_view name_or_path,
                      const std::filesystem::path& scenario_dir) {
  std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path)) {
    path = scenario_dir / (std::string(name_or_path) + ".json");
  }
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("no scenario named '{}'", name_or_path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  Scenario s = ParseScenario(buffer.str(), path.parent_path());
  if (s.name.empty()) s.name = path.stem().string();
  return s;
}

TypePools SyntheticPools(const TypeSet& types, std::size_t per_type) {
  TypePools pools(types.size());
  const Timestamp base = *ParseRfc3339("2018-04-01T00:00:00Z");
  for (std::size_t g = 0; g < types.size(); ++g) {
    const std::string& name = types.name(g);
    for (std::size_t i = 0; i < per_type; ++i) {
      Article a;
      a.id = fmt::format("{}-{:06d}", name, i);
      a.title = fmt::format("Synthetic {} story {}", name, i);
      a.url = fmt::format("https://{}.example/story/{}", name, i);
      a.source_domain = name + ".example";
      a.type = g;
      a.rating = static_cast<double>(per_type - i);
      a.published_at = base + std::chrono::minutes(i);
      pools[g].push_back(std::move(a));
    }
  }
  return pools;
}

std::shared_ptr<const TypePools> ScenarioPools(const Scenario& scenario) {
  if (scenario.corpus) {
    BiasMapping mapping = LoadBiasMapping(*scenario.bias_map, scenario.session.type_set());
    return std::make_shared<const TypePools>(IngestFile(*scenario.corpus, mapping).pools);
  }
  // Each feed shows at most page_size articles of one type per page.
  const std::size_t pages = scenario.iterations + 1 + scenario.schedule.size();
  return std::make_shared<const TypePools>(
      SyntheticPools(scenario.session.type_set(), pages * scenario.session.page_size));
}

RunResult RunScenario(const Scenario& scenario, std::uint64_t seed) {
  scenario.Validate();
  return RunScenario(scenario, seed, ScenarioPools(scenario));
}

RunResult RunScenario(const Scenario& scenario, std::uint64_t seed,
                      std::shared_ptr<const TypePools> pools) {
  scenario.Validate();
  const UserModel user = scenario.user();
  const TypeSet types = scenario.session.type_set();

  RunResult result;
  result.scenario = scenario.name;
  result.seed = seed;
  result.page_size = scenario.session.page_size;

  auto row_of = [](const SessionState& s, std::string clicked) {
    const HistoryPoint& p = s.history.back();
    return RunRow{p.t, p.pct_liberal_unfiltered, p.pct_liberal_balanced,
                  p.lower_liberal, p.upper_liberal, std::move(clicked)};
  };

  SessionState state =
      CreateSession(scenario.session, seed, fmt::format("sim-{}", seed), std::move(pools));
  result.rows.push_back(row_of(state, ""));
  Engine engine = MakeEngine(seed, kUserModelStream);
  for (std::uint64_t i = 1; i <= scenario.iterations; ++i) {
    for (const auto& change : scenario.schedule) {
      if (change.iteration == i) {
        state = ApplyConstraintChange(state, change.lower_liberal, change.upper_liberal);
      }
    }
    const FeedPage& page = state.page(scenario.click_feed);
    std::string clicked_type;
    if (auto id = SampleClick(user, page, engine)) {
      clicked_type = types.name(ResolveClick(page, *id).clicked_type);
      state = ApplyClick(state, scenario.click_feed, *id);
    } else {
      state = AdvanceWithoutClick(state);
    }
    result.rows.push_back(row_of(state, std::move(clicked_type)));
  }
  Summarize(result);
  return result;
}

void Summarize(RunResult& result) {
  RunSummary summary;
  if (!result.rows.empty()) {
    summary.final_pct_lib_unfiltered = result.rows.back().pct_lib_unfiltered;
    summary.final_pct_lib_balanced = result.rows.back().pct_lib_balanced;
  }
  const std::size_t k = result.page_size;
  const double kd = static_cast<double>(k);
  for (const RunRow& row : result.rows) {
    const std::size_t balanced = SliceCount(row.pct_lib_balanced, k);
    const auto floor_count = static_cast<std::size_t>(std::ceil(row.lower * kd - 1e-9));
    const auto cap_count = static_cast<std::size_t>(std::floor(row.upper * kd + 1e-9));
    if (!summary.first_cap_contact && (balanced == floor_count || balanced == cap_count)) {
      summary.first_cap_contact = row.t;
    }
    const std::size_t unfiltered = SliceCount(row.pct_lib_unfiltered, k);
    if (!summary.first_unfiltered_saturation && (unfiltered == 0 || unfiltered == k)) {
      summary.first_unfiltered_saturation = row.t;
    }
  }
  result.summary = summary;
}

std::string RunSummary::ToLine() const {
  auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  return fmt::format(
      "final_pct_lib_unfiltered={} final_pct_lib_balanced={} first_cap_contact={} "
      "first_unfiltered_saturation={}",
      final_pct_lib_unfiltered, final_pct_lib_balanced, opt(first_cap_contact),
      opt(first_unfiltered_saturation));
}

std::optional<OutputFormat> ParseOutputFormat(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "jsonl") return OutputFormat::kJsonl;
  return std::nullopt;
}

std::string Render(const RunResult& result, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::kCsv) {
    out += "t,pct_lib_unfiltered,pct_lib_balanced,lower,upper,clicked_type\n";
    for (const RunRow& r : result.rows) {
      out += fmt::format("{},{},{},{},{},{}\n", r.t, r.pct_lib_unfiltered,
                         r.pct_lib_balanced, r.lower, r.upper, r.clicked_type);
    }
    return out;
  }
  for (const RunRow& r : result.rows) {
    nlohmann::ordered_json row = {{"t", r.t},
                                  {"pct_lib_unfiltered", r.pct_lib_unfiltered},
                                  {"pct_lib_balanced", r.pct_lib_balanced},
                                  {"lower", r.lower},
                                  {"upper", r.upper},
                                  {"clicked_type", nullptr}};
    if (!r.clicked_type.empty()) row["clicked_type"] = r.clicked_type;
    out += row.dump();
    out += '\n';
  }
  return out;
}

void Emit(const RunResult& result, const std::filesystem::path& path,
          OutputFormat format) {
  const std::string body = Render(result, format);
  std::filesystem::path tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << body;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError(fmt::format("cannot write {}: {}", path.string(), ec.message()));
  }
}

}  // namespace balanced
