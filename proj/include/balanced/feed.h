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

#ifndef BALANCED_FEED_H_
#define BALANCED_FEED_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "balanced/bandit.h"
#include "balanced/timestamp.h"

namespace balanced {

struct Article {
  std::string id;
  std::string title;
  std::string url;
  std::string source_domain;
  std::size_t type = 0;
  double rating = 0.0;  // popularity
  Timestamp published_at{};

  bool operator==(const Article&) const = default;
};

// One list per type index, each sorted by rating descending.
using TypePools = std::vector<std::vector<Article>>;

using SeenSet = std::unordered_set<std::string>;

struct SlotAllocation {
  std::vector<std::size_t> counts;
  std::size_t page_size = 0;

  bool operator==(const SlotAllocation&) const = default;
};

struct FeedPage {
  std::uint64_t iteration = 0;
  std::vector<Article> slots;
  SlotAllocation allocation;
  // The continuous distribution the page was built from; clicks on this page
  // are importance weighted against it.
  Distribution sampling_dist;

  // Number of slots of the given type.
  std::size_t CountOf(std::size_t type) const;
  bool operator==(const FeedPage&) const = default;
};

// Integer slot bounds ceil(lower * K) and floor(upper * K) per type.
struct SlotBounds {
  std::vector<std::size_t> floor;
  std::vector<std::size_t> cap;
};

// Throws InfeasibleConstraintsError("constraints unsatisfiable at page size
// K") when no count vector summing to page_size fits the bounds.
SlotBounds PageSlotBounds(const ConstraintConfig& cfg, std::size_t page_size);

// Largest-remainder rounding of dist * page_size: floors first, then the
// leftover slots to the largest fractional remainders, ties to the lowest
// type index. With cfg, counts are then repaired into the integer bounds by
// moving one slot at a time from the type furthest over its cap to the type
// furthest under its floor.
SlotAllocation AllocateSlots(const Distribution& dist, std::size_t page_size,
                             const std::optional<ConstraintConfig>& cfg);

// Takes the counts[g] highest-rated unseen articles of each type and orders
// them with a shuffle keyed by (seed, iteration). Selected ids are added to
// seen. Throws PoolExhaustedError when a pool runs short.
FeedPage ComposePage(const SlotAllocation& alloc, const TypePools& pools,
                     SeenSet& seen, std::uint64_t iteration,
                     const Distribution& sampling_dist, std::uint64_t seed);

// Throws UnknownArticleError("click on unknown article") when article_id is
// not on the page.
RewardSignal ResolveClick(const FeedPage& page, std::string_view article_id);

}  // namespace balanced

#endif  // BALANCED_FEED_H_
