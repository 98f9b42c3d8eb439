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

#ifndef BALANCED_API_JSON_H_
#define BALANCED_API_JSON_H_

#include <exception>
#include <string>
#include <string_view>

#include "balanced/feed.h"
#include "balanced/session.h"
#include "balanced/types.h"
#include "json.hpp"

namespace balanced {

// JSON shapes of the HTTP API. Field names are snake_case; see
// docs/API.md.

nlohmann::json ArticleToJson(const Article& article, const TypeSet& types);
nlohmann::json PageToJson(const FeedPage& page, const TypeSet& types);
// Inverse of PageToJson. Throws std::invalid_argument on unknown types.
FeedPage PageFromJson(const nlohmann::json& page, const TypeSet& types);

nlohmann::json HistoryPointToJson(const HistoryPoint& point);
HistoryPoint HistoryPointFromJson(const nlohmann::json& point);

nlohmann::json ConstraintsToJson(const SessionState& state);
// {"unfiltered": page, "balanced": page}
nlohmann::json FeedsToJson(const SessionState& state);
nlohmann::json HistoryToJson(const SessionState& state);
// session_id, seed, t, constraints, feeds and history.
nlohmann::json SessionToJson(const SessionState& state);

enum class ApiErrorCode {
  kNotFound,
  kInvalidInput,
  kInfeasibleConstraints,
  kPoolExhausted,
  kInternal,
};

std::string_view ApiErrorCodeName(ApiErrorCode code);

struct ApiError {
  int status = 500;
  ApiErrorCode code = ApiErrorCode::kInternal;
  std::string message;

  // {"error": {"code": ..., "message": ...}}
  nlohmann::json ToJson() const;
};

// Maps a library exception onto the HTTP error it represents.
ApiError ToApiError(std::exception_ptr error);

}  // namespace balanced

#endif  // BALANCED_API_JSON_H_
