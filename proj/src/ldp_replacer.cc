// Copyright 2026 The trajsan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajsan/ldp_replacer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trajsan/error.h"

namespace trajsan {

KriDistribution MakeKriDistribution(std::size_t k, double epsilon,
                                    std::optional<std::size_t> input) {
  if (k == 0) throw Error(ErrorCode::kEmptyDomain, "randomized response over K = 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kConfig, "epsilon must be finite and non-negative");
  }
  if (input && *input >= k) {
    throw Error(ErrorCode::kConfig, "input index out of range");
  }
  KriDistribution dist;
  dist.k = k;
  dist.epsilon = epsilon;
  dist.input = input;
  const double kd = static_cast<double>(k);
  if (!input) {
    dist.probs.assign(k, 1.0 / kd);
    return dist;
  }
  const double e = std::exp(epsilon);
  const double denom = kd - 1.0 + e;
  dist.probs.assign(k, 1.0 / denom);
  dist.probs[*input] = e / denom;
  return dist;
}

std::size_t KriSample(const KriDistribution& dist, Rng& rng) {
  const double u = rng.Uniform01();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    cumulative += dist.probs[i];
    if (u < cumulative) return i;
  }
  // Rounding left u above the final partial sum.
  return dist.probs.size() - 1;
}

std::string_view AllocatorName(Allocator a) {
  return a == Allocator::kBr ? "br" : "ratio";
}

std::optional<Allocator> ParseAllocator(std::string_view name) {
  if (name == "br") return Allocator::kBr;
  if (name == "ratio") return Allocator::kRatio;
  return std::nullopt;
}

BudgetAllocation AllocateBr(double total_epsilon, std::size_t region_count) {
  BudgetAllocation a;
  a.total_epsilon = total_epsilon;
  a.scheme = Allocator::kBr;
  if (region_count > 0) {
    a.per_region.assign(region_count, total_epsilon / static_cast<double>(region_count));
  }
  return a;
}

BudgetAllocation AllocateRatio(double total_epsilon,
                               std::span<const std::size_t> candidate_set_sizes) {
  BudgetAllocation a;
  a.total_epsilon = total_epsilon;
  a.scheme = Allocator::kRatio;
  std::size_t sum = 0;
  for (std::size_t s : candidate_set_sizes) sum += s;
  if (sum == 0) return a;
  const double denom = static_cast<double>(sum);
  a.per_region.reserve(candidate_set_sizes.size());
  for (std::size_t s : candidate_set_sizes) {
    a.per_region.push_back(total_epsilon * static_cast<double>(s) / denom);
  }
  return a;
}

std::string_view StrategyName(InputStrategy s) {
  switch (s) {
    case InputStrategy::kOriginalRegion:
      return "original-region";
    case InputStrategy::kMostFrequent:
      return "most-frequent";
    case InputStrategy::kUniformRandom:
      return "uniform-random";
  }
  return "";
}

std::optional<InputStrategy> ParseStrategy(std::string_view name) {
  if (name == "original-region") return InputStrategy::kOriginalRegion;
  if (name == "most-frequent") return InputStrategy::kMostFrequent;
  if (name == "uniform-random") return InputStrategy::kUniformRandom;
  return std::nullopt;
}

std::optional<std::size_t> SelectInput(const CandidateSet& cs, InputStrategy strategy,
                                       Rng& rng) {
  if (cs.candidates.empty()) {
    throw Error(ErrorCode::kEmptyDomain, "input selection over an empty candidate set");
  }
  switch (strategy) {
    case InputStrategy::kOriginalRegion:
      return std::nullopt;
    case InputStrategy::kMostFrequent: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < cs.candidates.size(); ++i) {
        const Candidate& c = cs.candidates[i];
        const Candidate& b = cs.candidates[best];
        if (c.count > b.count || (c.count == b.count && c.sequence < b.sequence)) best = i;
      }
      return best;
    }
    case InputStrategy::kUniformRandom:
      return rng.UniformIndex(cs.candidates.size());
  }
  return std::nullopt;
}

std::string_view ModeName(ReplacementMode m) {
  return m == ReplacementMode::kReplaced ? "replaced" : "suppressed-fallback";
}

Point SuppressedPoint(const SensitiveRegion& region) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return Point{std::string(kSuppressedLocation), region.first_timestamp, {nan, nan}};
}

SanitizedTrajectory Sanitize(const Trajectory& trajectory,
                             std::span<const CandidateSet> sets,
                             const BudgetAllocation& allocation, InputStrategy strategy,
                             const PoiRegistry& registry, Rng& rng) {
  const std::size_t replaceable = static_cast<std::size_t>(
      std::count_if(sets.begin(), sets.end(), [](const CandidateSet& cs) { return cs.size() > 0; }));
  if (allocation.per_region.size() != replaceable) {
    throw Error(ErrorCode::kConfig,
                "allocation covers " + std::to_string(allocation.per_region.size()) +
                    " regions but " + std::to_string(replaceable) + " are replaceable");
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SensitiveRegion& r = sets[i].region;
    if (r.end >= trajectory.points.size() || r.start > r.end ||
        (i > 0 && r.start <= sets[i - 1].region.end)) {
      throw Error(ErrorCode::kConfig, "regions must be sorted, disjoint and in range");
    }
  }

  // Draw left to right so the rng stream order matches region order.
  SanitizedTrajectory out;
  out.outcomes.reserve(sets.size());
  std::vector<std::vector<Point>> replacements;
  replacements.reserve(sets.size());
  std::size_t budget_index = 0;
  for (const CandidateSet& cs : sets) {
    ReplacementOutcome o;
    o.trajectory = cs.region.trajectory;
    o.region_start = cs.region.start;
    o.strategy = strategy;
    if (cs.size() == 0) {
      o.mode = ReplacementMode::kSuppressedFallback;
      o.chosen = {std::string(kSuppressedLocation)};
      replacements.push_back({SuppressedPoint(cs.region)});
    } else {
      o.epsilon = allocation.per_region[budget_index++];
      o.input = SelectInput(cs, strategy, rng);
      const KriDistribution dist = MakeKriDistribution(cs.size(), o.epsilon, o.input);
      const std::size_t pick = KriSample(dist, rng);
      o.chosen_index = pick;
      o.chosen = cs.candidates[pick].sequence;
      replacements.push_back(MaterializeCandidate(cs.region, o.chosen, registry));
    }
    out.outcomes.push_back(std::move(o));
  }

  // Splice right to left so earlier indices stay valid.
  out.trajectory = trajectory;
  std::vector<Point>& pts = out.trajectory.points;
  for (std::size_t i = sets.size(); i-- > 0;) {
    const SensitiveRegion& r = sets[i].region;
    auto first = pts.begin() + static_cast<std::ptrdiff_t>(r.start);
    auto last = pts.begin() + static_cast<std::ptrdiff_t>(r.end) + 1;
    first = pts.erase(first, last);
    pts.insert(first, replacements[i].begin(), replacements[i].end());
  }
  return out;
}

Trajectory BaselineSuppress(const Trajectory& trajectory,
                            std::span<const SensitiveRegion> regions) {
  Trajectory out = trajectory;
  std::vector<SensitiveRegion> sorted(regions.begin(), regions.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SensitiveRegion& a, const SensitiveRegion& b) { return a.start < b.start; });
  for (std::size_t i = sorted.size(); i-- > 0;) {
    const SensitiveRegion& r = sorted[i];
    auto first = out.points.begin() + static_cast<std::ptrdiff_t>(r.start);
    auto last = out.points.begin() + static_cast<std::ptrdiff_t>(r.end) + 1;
    first = out.points.erase(first, last);
    out.points.insert(first, SuppressedPoint(r));
  }
  return out;
}

}  // namespace trajsan
