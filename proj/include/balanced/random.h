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

#ifndef BALANCED_RANDOM_H_
#define BALANCED_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace balanced {

// Engine output sequences and std::seed_seq are fixed by the standard; the
// library distributions are not. Everything that must be reproducible
// across toolchains goes through the helpers below instead.
using Engine = std::mt19937_64;

// Engine keyed by (seed, stream).
Engine MakeEngine(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, n). Requires n > 0.
std::size_t UniformIndex(Engine& engine, std::size_t n);

// Uniform real in [0, 1) with 53 random bits.
double UniformUnit(Engine& engine);

// Fisher-Yates.
template <typename T>
void Shuffle(std::vector<T>& items, Engine& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(engine, i)]);
  }
}

}  // namespace balanced

#endif  // BALANCED_RANDOM_H_
