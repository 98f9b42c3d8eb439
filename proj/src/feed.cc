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

#include "balanced/feed.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balanced/errors.h"
#include "balanced/random.h"

namespace balanced {
namespace {

// Products like 0.7 * 10 land a few ulps off the integer they represent.
// Rounding decisions treat values this close as equal.
constexpr double kSlotEpsilon = 1e-9;

}  // namespace

std::size_t FeedPage::CountOf(std::size_t type) const {
  return static_cast<std::size_t>(std::count_if(
      slots.begin(), slots.end(),
      [type](const Article& a) { return a.type == type; }));
}

SlotBounds PageSlotBounds(const ConstraintConfig& cfg, std::size_t page_size) {
  cfg.Validate();
  const double k = static_cast<double>(page_size);
  SlotBounds bounds;
  std::size_t floor_total = 0, cap_total = 0;
  for (std::size_t g = 0; g < cfg.size(); ++g) {
    const auto lo = static_cast<std::size_t>(std::ceil(cfg.lower[g] * k - kSlotEpsilon));
    const auto hi = static_cast<std::size_t>(std::floor(cfg.upper[g] * k + kSlotEpsilon));
    if (lo > hi) {
      throw InfeasibleConstraintsError(
          "constraints unsatisfiable at page size " + std::to_string(page_size));
    }
    bounds.floor.push_back(lo);
    bounds.cap.push_back(hi);
    floor_total += lo;
    cap_total += hi;
  }
  if (floor_total > page_size || cap_total < page_size) {
    throw InfeasibleConstraintsError(
        "constraints unsatisfiable at page size " + std::to_string(page_size));
  }
  return bounds;
}

SlotAllocation AllocateSlots(const Distribution& dist, std::size_t page_size,
                             const std::optional<ConstraintConfig>& cfg) {
  if (page_size == 0) throw std::invalid_argument("page size must be positive");
  ValidateDistribution(dist);
  const std::size_t n = dist.size();
  if (cfg && cfg->size() != n) {
    throw std::invalid_argument("distribution and constraints differ in length");
  }
  // Fail before rounding so infeasibility is reported the same way for every
  // distribution.
  std::optional<SlotBounds> bounds;
  if (cfg) bounds = PageSlotBounds(*cfg, page_size);

  const double k = static_cast<double>(page_size);
  SlotAllocation alloc;
  alloc.page_size = page_size;
  alloc.counts.resize(n);
  std::vector<double> remainder(n);
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < n; ++g) {
    const double share = dist[g] * k;
    const double whole = std::floor(share + kSlotEpsilon);
    alloc.counts[g] = static_cast<std::size_t>(whole);
    remainder[g] = std::max(0.0, share - whole);
    assigned += alloc.counts[g];
  }
  // Entries sum to 1 within tolerance, so assigned is within one of K.
  while (assigned > page_size) {
    std::size_t g = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (alloc.counts[i] > 0 && (g == n || remainder[i] < remainder[g] - kSlotEpsilon)) g = i;
    }
    --alloc.counts[g];
    remainder[g] += 1.0;
    --assigned;
  }
  // Leftover slots go to the largest remainders, one each, ties to the lowest
  // index. At most n - 1 slots are left over.
  std::vector<bool> bumped(n, false);
  while (assigned < page_size) {
    std::size_t best = n;
    for (std::size_t g = 0; g < n; ++g) {
      if (bumped[g]) continue;
      if (best == n || remainder[g] > remainder[best] + kSlotEpsilon) best = g;
    }
    if (best == n) {
      std::fill(bumped.begin(), bumped.end(), false);
      continue;
    }
    bumped[best] = true;
    ++alloc.counts[best];
    ++assigned;
  }

  if (!bounds) return alloc;
  auto& counts = alloc.counts;
  const auto over = [&](std::size_t g) {
    return static_cast<long>(counts[g]) - static_cast<long>(bounds->cap[g]);
  };
  const auto under = [&](std::size_t g) {
    return static_cast<long>(bounds->floor[g]) - static_cast<long>(counts[g]);
  };
  for (;;) {
    bool violated = false;
    for (std::size_t g = 0; g < n; ++g) violated |= over(g) > 0 || under(g) > 0;
    if (!violated) break;
    // Donor: furthest over its cap among types that can give a slot.
    // Receiver: furthest under its floor among types that can take one.
    std::size_t donor = n, receiver = n;
    for (std::size_t g = 0; g < n; ++g) {
      if (counts[g] > bounds->floor[g] && (donor == n || over(g) > over(donor))) donor = g;
      if (counts[g] < bounds->cap[g] && (receiver == n || under(g) > under(receiver))) {
        receiver = g;
      }
    }
    --counts[donor];
    ++counts[receiver];
  }
  return alloc;
}

FeedPage ComposePage(const SlotAllocation& alloc, const TypePools& pools,
                     SeenSet& seen, std::uint64_t iteration,
                     const Distribution& sampling_dist, std::uint64_t seed) {
  if (alloc.counts.size() != pools.size()) {
    throw std::invalid_argument("allocation and pools differ in type count");
  }
  FeedPage page;
  page.iteration = iteration;
  page.allocation = alloc;
  page.sampling_dist = sampling_dist;
  page.slots.reserve(alloc.page_size);
  for (std::size_t g = 0; g < pools.size(); ++g) {
    std::size_t taken = 0;
    for (const Article& article : pools[g]) {
      if (taken == alloc.counts[g]) break;
      if (seen.contains(article.id)) continue;
      page.slots.push_back(article);
      ++taken;
    }
    if (taken < alloc.counts[g]) {
      throw PoolExhaustedError(g, alloc.counts[g] - taken);
    }
  }
  Engine engine = MakeEngine(seed, iteration);
  Shuffle(page.slots, engine);
  for (const Article& article : page.slots) seen.insert(article.id);
  return page;
}

RewardSignal ResolveClick(const FeedPage& page, std::string_view article_id) {
  for (const Article& article : page.slots) {
    if (article.id == article_id) return {article.type, 1.0};
  }
  throw UnknownArticleError("click on unknown article: " + std::string(article_id));
}

}  // namespace balanced
