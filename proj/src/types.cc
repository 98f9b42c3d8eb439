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

#include "balanced/types.h"

#include <algorithm>
#include <stdexcept>

namespace balanced {

TypeSet::TypeSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw std::invalid_argument("need at least two types");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty type name");
    if (std::find(names_.begin(), names_.begin() + i, names_[i]) !=
        names_.begin() + i) {
      throw std::invalid_argument("duplicate type name: " + names_[i]);
    }
  }
}

std::optional<std::size_t> TypeSet::Find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

}  // namespace balanced
