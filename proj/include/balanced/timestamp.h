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

#ifndef BALANCED_TIMESTAMP_H_
#define BALANCED_TIMESTAMP_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace balanced {

using Timestamp =
    std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

// RFC 3339 date-time, e.g. "2018-05-01T12:30:00Z" or
// "2018-05-01T08:30:00.250-04:00". Fractions beyond milliseconds are
// truncated. Returns nullopt on anything else.
std::optional<Timestamp> ParseRfc3339(std::string_view text);

// UTC, millisecond precision, trailing "Z".
std::string FormatRfc3339(Timestamp ts);

Timestamp NowMillis();

}  // namespace balanced

#endif  // BALANCED_TIMESTAMP_H_
