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

#ifndef BALANCED_TYPES_H_
#define BALANCED_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace balanced {

struct TypeLabel {
  std::size_t index = 0;
  std::string name;

  bool operator==(const TypeLabel&) const = default;
};

// The ordered content-type taxonomy of one configuration. Indices are the
// positions in the list, so they are contiguous from 0.
class TypeSet {
 public:
  TypeSet() = default;
  // Throws std::invalid_argument on fewer than two names, empty names or
  // duplicates.
  explicit TypeSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  TypeLabel label(std::size_t index) const { return {index, name(index)}; }
  std::optional<std::size_t> Find(std::string_view name) const;

  bool operator==(const TypeSet&) const = default;

 private:
  std::vector<std::string> names_;
};

inline TypeSet DefaultTypes() { return TypeSet({"liberal", "conservative"}); }

}  // namespace balanced

#endif  // BALANCED_TYPES_H_
