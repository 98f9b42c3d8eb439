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

// Brute-force reference implementations used only by tests. None of these
// call into the code they check.

#ifndef BALANCED_TESTS_ORACLES_H_
#define BALANCED_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <limits>
#include <vector>

namespace balanced::testing {

// Two types: scans p0 over a grid of the given step and returns the feasible
// p0 closest to d0 in total variation. Ties keep the smaller p0.
inline double TvGridProjection2(double d0, const std::vector<double>& lower,
                                const std::vector<double>& upper, double step = 1e-4) {
  const long steps = std::lround(1.0 / step);
  double best = -1.0, best_cost = std::numeric_limits<double>::infinity();
  for (long i = 0; i <= steps; ++i) {
    const double p0 = static_cast<double>(i) / static_cast<double>(steps);
    const double p1 = 1.0 - p0;
    constexpr double slack = 1e-12;
    if (p0 < lower[0] - slack || p0 > upper[0] + slack || p1 < lower[1] - slack ||
        p1 > upper[1] + slack) {
      continue;
    }
    const double cost = 0.5 * (std::abs(p0 - d0) + std::abs(p1 - (1.0 - d0)));
    if (cost < best_cost) {
      best_cost = cost;
      best = p0;
    }
  }
  return best;
}

// Three types: grid search minimizing KL(p || d) over the feasible set.
// Returns {p0, p1, p2}.
inline std::vector<double> KlGridProjection3(const std::vector<double>& d,
                                             const std::vector<double>& lower,
                                             const std::vector<double>& upper,
                                             double step = 1e-4) {
  const long steps = std::lround(1.0 / step);
  std::vector<double> best;
  double best_cost = std::numeric_limits<double>::infinity();
  auto term = [](double p, double q) {
    if (p == 0.0) return 0.0;
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    return p * std::log(p / q);
  };
  const long i_lo = std::max(0L, static_cast<long>(std::floor(lower[0] * steps)));
  const long i_hi = std::min(steps, static_cast<long>(std::ceil(upper[0] * steps)));
  for (long i = i_lo; i <= i_hi; ++i) {
    const double p0 = static_cast<double>(i) / steps;
    if (p0 < lower[0] - 1e-12 || p0 > upper[0] + 1e-12) continue;
    for (long j = 0; i + j <= steps; ++j) {
      const double p1 = static_cast<double>(j) / steps;
      const double p2 = static_cast<double>(steps - i - j) / steps;
      if (p1 < lower[1] - 1e-12 || p1 > upper[1] + 1e-12 || p2 < lower[2] - 1e-12 ||
          p2 > upper[2] + 1e-12) {
        continue;
      }
      const double cost = term(p0, d[0]) + term(p1, d[1]) + term(p2, d[2]);
      if (cost < best_cost) {
        best_cost = cost;
        best = {p0, p1, p2};
      }
    }
  }
  return best;
}

// Exhaustive apportionment: among all count vectors summing to k, the one
// closest in L1 to shares[g] * k, where shares[g] = numerators[g] / denom.
// Works in exact integer arithmetic. Ties go to the lexicographically
// largest vector, i.e. extra slots to the lowest type index.
inline std::vector<std::size_t> L1ClosestCounts(const std::vector<long>& numerators,
                                                long denom, std::size_t k) {
  const std::size_t n = numerators.size();
  std::vector<std::size_t> counts(n, 0), best;
  long best_cost = std::numeric_limits<long>::max();
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t left) {
    if (g + 1 == n) {
      counts[g] = left;
      long cost = 0;
      for (std::size_t i = 0; i < n; ++i) {
        cost += std::labs(static_cast<long>(counts[i]) * denom -
                          numerators[i] * static_cast<long>(k));
      }
      // Enumeration visits vectors in decreasing lexicographic order, so a
      // strict improvement test keeps the largest among ties.
      if (cost < best_cost) {
        best_cost = cost;
        best = counts;
      }
      return;
    }
    for (std::size_t c = left + 1; c-- > 0;) {
      counts[g] = c;
      rec(g + 1, left - c);
    }
  };
  rec(0, k);
  return best;
}

}  // namespace balanced::testing

#endif  // BALANCED_TESTS_ORACLES_H_
