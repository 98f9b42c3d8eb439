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

#include "balanced/errors.h"

#include <fmt/format.h>

namespace balanced {

PoolExhaustedError::PoolExhaustedError(std::size_t type_index, std::size_t shortfall)
    : Error(fmt::format("pool exhausted for type {}: {} article{} short", type_index,
                        shortfall, shortfall == 1 ? "" : "s")),
      type_index_(type_index),
      shortfall_(shortfall) {}

CorruptLogError::CorruptLogError(std::optional<std::uint64_t> seq, const std::string& what)
    : Error(what), seq_(seq) {}

}  // namespace balanced
