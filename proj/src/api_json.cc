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

#include "balanced/api_json.h"

#include <stdexcept>

#include "balanced/errors.h"

namespace balanced {

using nlohmann::json;

json ArticleToJson(const Article& article, const TypeSet& types) {
  return {{"id", article.id},
          {"title", article.title},
          {"url", article.url},
          {"source_domain", article.source_domain},
          {"type", types.name(article.type)},
          {"rating", article.rating},
          {"published_at", FormatRfc3339(article.published_at)}};
}

json PageToJson(const FeedPage& page, const TypeSet& types) {
  json slots = json::array();
  for (const Article& a : page.slots) slots.push_back(ArticleToJson(a, types));
  return {{"iteration", page.iteration},
          {"page_size", page.allocation.page_size},
          {"allocation", page.allocation.counts},
          {"sampling_dist", page.sampling_dist.probs},
          {"slots", std::move(slots)}};
}

FeedPage PageFromJson(const json& page, const TypeSet& types) {
  FeedPage out;
  out.iteration = page.at("iteration").get<std::uint64_t>();
  out.allocation.page_size = page.at("page_size").get<std::size_t>();
  out.allocation.counts = page.at("allocation").get<std::vector<std::size_t>>();
  out.sampling_dist.probs = page.at("sampling_dist").get<std::vector<double>>();
  for (const json& slot : page.at("slots")) {
    Article a;
    a.id = slot.at("id").get<std::string>();
    a.title = slot.at("title").get<std::string>();
    a.url = slot.at("url").get<std::string>();
    a.source_domain = slot.at("source_domain").get<std::string>();
    auto type = types.Find(slot.at("type").get<std::string>());
    if (!type) throw std::invalid_argument("page names an unknown type");
    a.type = *type;
    a.rating = slot.at("rating").get<double>();
    auto ts = ParseRfc3339(slot.at("published_at").get<std::string>());
    if (!ts) throw std::invalid_argument("bad published_at in page");
    a.published_at = *ts;
    out.slots.push_back(std::move(a));
  }
  return out;
}

json HistoryPointToJson(const HistoryPoint& p) {
  return {{"t", p.t},
          {"pct_liberal_unfiltered", p.pct_liberal_unfiltered},
          {"pct_liberal_balanced", p.pct_liberal_balanced},
          {"lower_liberal", p.lower_liberal},
          {"upper_liberal", p.upper_liberal}};
}

HistoryPoint HistoryPointFromJson(const json& p) {
  return {p.at("t").get<std::uint64_t>(), p.at("pct_liberal_unfiltered").get<double>(),
          p.at("pct_liberal_balanced").get<double>(), p.at("lower_liberal").get<double>(),
          p.at("upper_liberal").get<double>()};
}

json ConstraintsToJson(const SessionState& s) {
  return {{"lower_liberal", s.lower_liberal()}, {"upper_liberal", s.upper_liberal()}};
}

json FeedsToJson(const SessionState& s) {
  const TypeSet types = s.config.type_set();
  return {{"unfiltered", PageToJson(s.unfiltered_page, types)},
          {"balanced", PageToJson(s.balanced_page, types)}};
}

json HistoryToJson(const SessionState& s) {
  json points = json::array();
  for (const HistoryPoint& p : s.history) points.push_back(HistoryPointToJson(p));
  return points;
}

json SessionToJson(const SessionState& s) {
  return {{"session_id", s.session_id},
          {"seed", s.seed},
          {"t", s.t()},
          {"constraints", ConstraintsToJson(s)},
          {"feeds", FeedsToJson(s)},
          {"history", HistoryToJson(s)}};
}

std::string_view ApiErrorCodeName(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::kNotFound: return "not_found";
    case ApiErrorCode::kInvalidInput: return "invalid_input";
    case ApiErrorCode::kInfeasibleConstraints: return "infeasible_constraints";
    case ApiErrorCode::kPoolExhausted: return "pool_exhausted";
    case ApiErrorCode::kInternal: return "internal";
  }
  return "internal";
}

json ApiError::ToJson() const {
  return {{"error", {{"code", ApiErrorCodeName(code)}, {"message", message}}}};
}

ApiError ToApiError(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const UnknownSessionError& e) {
    return {404, ApiErrorCode::kNotFound, e.what()};
  } catch (const UnknownArticleError& e) {
    return {409, ApiErrorCode::kInvalidInput, e.what()};
  } catch (const InfeasibleConstraintsError& e) {
    return {422, ApiErrorCode::kInfeasibleConstraints, e.what()};
  } catch (const PoolExhaustedError& e) {
    return {409, ApiErrorCode::kPoolExhausted, e.what()};
  } catch (const std::invalid_argument& e) {
    return {422, ApiErrorCode::kInvalidInput, e.what()};
  } catch (const json::exception& e) {
    return {400, ApiErrorCode::kInvalidInput, e.what()};
  } catch (const std::exception& e) {
    return {500, ApiErrorCode::kInternal, e.what()};
  } catch (...) {
    return {500, ApiErrorCode::kInternal, "unknown error"};
  }
}

}  // namespace balanced
