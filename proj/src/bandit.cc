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

#include "balanced/bandit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

#include "balanced/errors.h"

namespace balanced {
namespace {

constexpr double kSumTolerance = 1e-12;

// Weights never drop below this so they stay strictly positive after long
// one-sided click streams.
constexpr double kMinWeight = 1e-300;

double Sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

// Returns v[g] = clamp(s * w[g], lo[g], hi[g]) for the scale s >= 0 at which
// sum(v) == target. The sum is a continuous nondecreasing piecewise-linear
// function of s with kinks at lo/w and hi/w, so the root is found by walking
// the sorted kinks and solving the linear piece that brackets the target.
// Requires sum(lo) <= target <= sum over w>0 of hi plus sum over w==0 of lo.
std::vector<double> ScaledClamp(std::span<const double> w,
                                std::span<const double> lo,
                                std::span<const double> hi, double target) {
  const std::size_t n = w.size();
  auto evaluate = [&](double s) {
    std::vector<double> v(n);
    for (std::size_t g = 0; g < n; ++g) v[g] = std::clamp(s * w[g], lo[g], hi[g]);
    return v;
  };

  std::vector<double> kinks;
  kinks.reserve(2 * n);
  for (std::size_t g = 0; g < n; ++g) {
    if (w[g] > 0.0) {
      kinks.push_back(lo[g] / w[g]);
      kinks.push_back(hi[g] / w[g]);
    }
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  double left = 0.0;
  if (Sum(evaluate(left)) >= target) return evaluate(left);
  for (double right : kinks) {
    if (right <= left) continue;
    if (Sum(evaluate(right)) < target) {
      left = right;
      continue;
    }
    // On (left, right) every type is either pinned to a bound or free.
    const double mid = 0.5 * (left + right);
    double pinned = 0.0;
    double free_weight = 0.0;
    for (std::size_t g = 0; g < n; ++g) {
      const double x = mid * w[g];
      if (x <= lo[g]) {
        pinned += lo[g];
      } else if (x >= hi[g]) {
        pinned += hi[g];
      } else {
        free_weight += w[g];
      }
    }
    const double s = std::clamp((target - pinned) / free_weight, left, right);
    return evaluate(s);
  }
  return evaluate(left);
}

}  // namespace

void ValidateDistribution(const Distribution& dist) {
  if (dist.probs.empty()) throw std::invalid_argument("empty distribution");
  for (double p : dist.probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("distribution entry outside [0,1]");
    }
  }
  if (std::abs(Sum(dist.probs) - 1.0) > kDistributionTolerance) {
    throw std::invalid_argument("distribution does not sum to 1");
  }
}

void ConstraintConfig::Validate() const {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("lower and upper bounds differ in length");
  }
  if (lower.size() < 2) throw std::invalid_argument("need at least two types");
  for (std::size_t g = 0; g < lower.size(); ++g) {
    for (double b : {lower[g], upper[g]}) {
      if (!std::isfinite(b) || b < 0.0 || b > 1.0) {
        throw std::invalid_argument("constraint bound outside [0,1]");
      }
    }
    if (lower[g] > upper[g]) {
      throw InfeasibleConstraintsError("empty constraint polytope");
    }
  }
  if (Sum(lower) > 1.0 + kSumTolerance || Sum(upper) < 1.0 - kSumTolerance) {
    throw InfeasibleConstraintsError("empty constraint polytope");
  }
}

bool ConstraintConfig::Contains(const Distribution& dist) const {
  if (dist.size() != size()) return false;
  for (std::size_t g = 0; g < size(); ++g) {
    if (dist[g] < lower[g] || dist[g] > upper[g]) return false;
  }
  return std::abs(Sum(dist.probs) - 1.0) <= kDistributionTolerance;
}

ConstraintConfig ConstraintConfig::Unconstrained(std::size_t num_types) {
  return {std::vector<double>(num_types, 0.0),
          std::vector<double>(num_types, 1.0)};
}

BanditState InitState(std::size_t num_types, double eta, double gamma) {
  if (num_types < 2) throw std::invalid_argument("need at least two types");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be positive");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in [0,1)");
  }
  BanditState state;
  state.weights.assign(num_types, 1.0 / static_cast<double>(num_types));
  state.eta = eta;
  state.gamma = gamma;
  state.t = 0;
  return state;
}

Distribution BaseDistribution(const BanditState& state) {
  const std::size_t n = state.num_types();
  const double total = Sum(state.weights);
  const double explore = state.gamma / static_cast<double>(n);
  Distribution dist;
  dist.probs.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    dist.probs[g] = (1.0 - state.gamma) * state.weights[g] / total + explore;
  }
  return dist;
}

Distribution ProjectToConstraints(const Distribution& dist,
                                  const ConstraintConfig& cfg) {
  cfg.Validate();
  ValidateDistribution(dist);
  if (dist.size() != cfg.size()) {
    throw std::invalid_argument("distribution and constraints differ in length");
  }
  if (cfg.Contains(dist)) return dist;

  const std::size_t n = dist.size();
  double capacity = 0.0;
  for (std::size_t g = 0; g < n; ++g) {
    capacity += dist[g] > 0.0 ? cfg.upper[g] : cfg.lower[g];
  }
  if (capacity >= 1.0) {
    return {ScaledClamp(dist.probs, cfg.lower, cfg.upper, 1.0)};
  }

  // Positive types saturate; the zero-mass types split what is left.
  Distribution out{std::vector<double>(n)};
  std::vector<std::size_t> empty;
  double residual = 1.0;
  for (std::size_t g = 0; g < n; ++g) {
    if (dist[g] > 0.0) {
      out.probs[g] = cfg.upper[g];
      residual -= cfg.upper[g];
    } else {
      empty.push_back(g);
    }
  }
  std::vector<double> ones(empty.size(), 1.0), lo, hi;
  for (std::size_t g : empty) {
    lo.push_back(cfg.lower[g]);
    hi.push_back(cfg.upper[g]);
  }
  const std::vector<double> filled = ScaledClamp(ones, lo, hi, residual);
  for (std::size_t i = 0; i < empty.size(); ++i) out.probs[empty[i]] = filled[i];
  return out;
}

std::vector<double> ImportanceWeightedEstimate(const RewardSignal& signal,
                                               const Distribution& sampling_dist) {
  if (signal.clicked_type >= sampling_dist.size()) {
    throw std::invalid_argument("clicked type out of range");
  }
  const double shown = sampling_dist[signal.clicked_type];
  if (!(shown > 0.0)) {
    throw std::logic_error("clicked type had zero display probability");
  }
  std::vector<double> estimate(sampling_dist.size(), 0.0);
  estimate[signal.clicked_type] = signal.value / shown;
  return estimate;
}

BanditState Update(const BanditState& state, const RewardSignal& signal,
                   const Distribution& sampling_dist) {
  const std::size_t n = state.num_types();
  if (sampling_dist.size() != n) {
    throw std::invalid_argument("sampling distribution has wrong length");
  }
  if (!(signal.value >= 0.0 && signal.value <= 1.0)) {
    throw std::invalid_argument("reward outside [0,1]");
  }
  ValidateDistribution(sampling_dist);
  const std::vector<double> estimate = ImportanceWeightedEstimate(signal, sampling_dist);

  BanditState next = state;
  next.t = state.t + 1;
  if (signal.value == 0.0) return next;

  // Log space, so large estimates cannot overflow before renormalization.
  std::vector<double> log_w(n);
  for (std::size_t g = 0; g < n; ++g) {
    log_w[g] = std::log(state.weights[g]) + state.eta * estimate[g] / static_cast<double>(n);
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  for (std::size_t g = 0; g < n; ++g) next.weights[g] = std::exp(log_w[g] - top);
  const double total = Sum(next.weights);
  for (double& w : next.weights) w = std::max(w / total, kMinWeight);
  return next;
}

BanditState NoClickStep(const BanditState& state) {
  BanditState next = state;
  ++next.t;
  return next;
}

}  // namespace balanced
