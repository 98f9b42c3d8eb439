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

#ifndef BALANCED_BANDIT_H_
#define BALANCED_BANDIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace balanced {

// Exponential-weights learner over content types. Weights are kept
// normalized to sum 1; the induced distribution is scale invariant.
struct BanditState {
  std::vector<double> weights;
  double eta = 0.5;    // learning rate
  double gamma = 0.1;  // uniform exploration mixture
  std::uint64_t t = 0;

  std::size_t num_types() const { return weights.size(); }
  bool operator==(const BanditState&) const = default;
};

struct Distribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t g) const { return probs[g]; }
  bool operator==(const Distribution&) const = default;
};

inline constexpr double kDistributionTolerance = 1e-9;

// Throws std::invalid_argument unless every entry is in [0,1] and the
// entries sum to 1 within kDistributionTolerance.
void ValidateDistribution(const Distribution& dist);

// Per-type box bounds on the probability mass of each type.
struct ConstraintConfig {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }

  // Throws std::invalid_argument on shape or range errors and
  // InfeasibleConstraintsError("empty constraint polytope") when
  // sum(lower) <= 1 <= sum(upper) or lower <= upper fails.
  void Validate() const;

  // True when dist satisfies every box bound exactly and sums to 1.
  bool Contains(const Distribution& dist) const;

  // No constraint at all: lower 0, upper 1 for every type.
  static ConstraintConfig Unconstrained(std::size_t num_types);

  bool operator==(const ConstraintConfig&) const = default;
};

struct RewardSignal {
  std::size_t clicked_type = 0;
  double value = 1.0;

  bool operator==(const RewardSignal&) const = default;
};

// Uniform weights, t = 0. Requires num_types >= 2, eta > 0, gamma in [0,1).
BanditState InitState(std::size_t num_types, double eta, double gamma);

// (1 - gamma) * w / sum(w) + gamma / N.
Distribution BaseDistribution(const BanditState& state);

// Maps dist onto {p : lower <= p <= upper, sum(p) = 1}.
//
// Feasible input is returned unchanged. Otherwise the result is the
// proportional water level p[g] = clamp(s * dist[g], lower[g], upper[g])
// with the scale s chosen so the entries sum to 1: violating types sit at
// their bound and the rest keep their original ratios. This is the
// minimizer of KL(p || dist) over the polytope and, for two types, also the
// total-variation projection. Types with zero mass can only receive mass
// once every positive type is at its upper bound, in which case they share
// the remainder evenly under their own bounds.
Distribution ProjectToConstraints(const Distribution& dist,
                                  const ConstraintConfig& cfg);

// Per-type reward estimate from one observation: value / sampling_dist[g]
// on the clicked type, 0 elsewhere. Its expectation under sampling_dist is
// the true reward vector.
std::vector<double> ImportanceWeightedEstimate(const RewardSignal& signal,
                                               const Distribution& sampling_dist);

// Importance-weighted exponential update from one click. sampling_dist must
// be the distribution the clicked page was built from.
BanditState Update(const BanditState& state, const RewardSignal& signal,
                   const Distribution& sampling_dist);

// An iteration without a click: weights untouched, t advances.
BanditState NoClickStep(const BanditState& state);

}  // namespace balanced

#endif  // BALANCED_BANDIT_H_
