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

#ifndef BALANCED_SRC_CONFIG_JSON_H_
#define BALANCED_SRC_CONFIG_JSON_H_

#include "balanced/session.h"
#include "json.hpp"

namespace balanced::internal {

nlohmann::json ConfigToJson(const SessionConfig& config);

// Unknown keys are rejected; missing keys keep the values in `base`.
// Throws ConfigError.
SessionConfig ConfigFromJson(const nlohmann::json& obj,
                             const SessionConfig& base = SessionConfig{});

}  // namespace balanced::internal

#endif  // BALANCED_SRC_CONFIG_JSON_H_
