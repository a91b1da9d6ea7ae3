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

#ifndef TRAJSAN_LDP_REPLACER_H_
#define TRAJSAN_LDP_REPLACER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trajsan/candidate_builder.h"
#include "trajsan/region_detector.h"
#include "trajsan/rng.h"
#include "trajsan/trajectory.h"

namespace trajsan {

// Output distribution of k-ary randomized response over K candidates, where the
// input may lie outside the output domain.
//
// With an input index r: Pr[r] = e^eps / (K - 1 + e^eps) and every other index
// gets 1 / (K - 1 + e^eps). Without one every index is equally likely. Any two
// inputs (including "absent") give output probabilities within a factor e^eps.
struct KriDistribution {
  std::size_t k = 0;
  double epsilon = 0.0;
  std::optional<std::size_t> input;
  std::vector<double> probs;
};

// Throws kEmptyDomain for K = 0 and kConfig for a bad epsilon or input index.
KriDistribution MakeKriDistribution(std::size_t k, double epsilon,
                                    std::optional<std::size_t> input);

// Inverse-CDF draw; deterministic given the rng state.
std::size_t KriSample(const KriDistribution& dist, Rng& rng);

enum class Allocator { kBr, kRatio };

std::string_view AllocatorName(Allocator a);
std::optional<Allocator> ParseAllocator(std::string_view name);

// Per-region budgets, aligned with the list the allocator was given.
struct BudgetAllocation {
  double total_epsilon = 0.0;
  std::vector<double> per_region;
  Allocator scheme = Allocator::kBr;
};

// Equal split: total / count for each region.
BudgetAllocation AllocateBr(double total_epsilon, std::size_t region_count);

// Split proportional to candidate-set size. Returns an empty allocation when
// every size is zero.
BudgetAllocation AllocateRatio(double total_epsilon,
                               std::span<const std::size_t> candidate_set_sizes);

enum class InputStrategy { kOriginalRegion, kMostFrequent, kUniformRandom };

std::string_view StrategyName(InputStrategy s);
std::optional<InputStrategy> ParseStrategy(std::string_view name);

// Which candidate (if any) is fed to the mechanism as its input.
//   kOriginalRegion  nullopt: the true content is never in the output domain.
//   kMostFrequent    highest count; ties go to the smallest sequence.
//   kUniformRandom   uniform draw from rng.
std::optional<std::size_t> SelectInput(const CandidateSet& cs, InputStrategy strategy,
                                       Rng& rng);

enum class ReplacementMode { kReplaced, kSuppressedFallback };

std::string_view ModeName(ReplacementMode m);

struct ReplacementOutcome {
  std::size_t trajectory = 0;
  std::size_t region_start = 0;
  ReplacementMode mode = ReplacementMode::kReplaced;
  Sequence chosen;
  std::optional<std::size_t> chosen_index;
  double epsilon = 0.0;
  InputStrategy strategy = InputStrategy::kMostFrequent;
  std::optional<std::size_t> input;
};

struct SanitizedTrajectory {
  Trajectory trajectory;
  std::vector<ReplacementOutcome> outcomes;  // in region order
};

// Replaces each region of `trajectory` by a randomized-response draw from its
// candidate set. `sets` must be sorted by region start and disjoint;
// `allocation.per_region` holds one budget per set with at least one
// candidate, in order. Empty sets become a single suppressed point.
SanitizedTrajectory Sanitize(const Trajectory& trajectory,
                             std::span<const CandidateSet> sets,
                             const BudgetAllocation& allocation, InputStrategy strategy,
                             const PoiRegistry& registry, Rng& rng);

// Suppressed point standing in for `region`.
Point SuppressedPoint(const SensitiveRegion& region);

// Baseline: every region collapses to one suppressed point stamped with the
// span's first timestamp.
Trajectory BaselineSuppress(const Trajectory& trajectory,
                            std::span<const SensitiveRegion> regions);

}  // namespace trajsan

#endif  // TRAJSAN_LDP_REPLACER_H_
