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

#ifndef TRAJSAN_CANDIDATE_BUILDER_H_
#define TRAJSAN_CANDIDATE_BUILDER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "trajsan/correlation_stats.h"
#include "trajsan/region_detector.h"
#include "trajsan/trajectory.h"

namespace trajsan {

using Sequence = std::vector<LocationId>;
using SequenceCounts = std::map<Sequence, std::size_t>;

// Counts of every window "parent, seq, child" with 1 <= |seq| <= max_len.
//
// Three views are kept: windows anchored on both sides, windows keyed only by
// the parent (the child may be anything, including the end of a trajectory)
// and windows keyed only by the child. The one-sided views serve regions that
// touch a trajectory boundary.
class PatternIndex {
 public:
  PatternIndex() = default;

  static PatternIndex Build(const Dataset& dataset, std::size_t max_len);

  // A nullopt anchor acts as a wildcard. Returns nullptr when nothing matches
  // or when both anchors are nullopt.
  const SequenceCounts* Find(const std::optional<LocationId>& parent,
                             const std::optional<LocationId>& child,
                             std::size_t length) const;

  // Occurrences of seq between the anchors, with the same wildcard rule.
  std::size_t Count(const std::optional<LocationId>& parent,
                    const std::optional<LocationId>& child, const Sequence& seq) const;

  std::size_t max_len() const { return max_len_; }
  bool empty() const { return both_.empty(); }
  std::size_t entry_count() const { return both_.size(); }

  const PoiRegistry& registry() const { return registry_; }
  const LatLng& CoordinatesOf(const LocationId& loc) const;

 private:
  using Key = std::tuple<LocationId, LocationId, std::size_t>;
  using SideKey = std::pair<LocationId, std::size_t>;

  std::size_t max_len_ = 0;
  std::map<Key, SequenceCounts> both_;
  std::map<SideKey, SequenceCounts> by_parent_;
  std::map<SideKey, SequenceCounts> by_child_;
  PoiRegistry registry_;
};

struct Candidate {
  Sequence sequence;
  std::size_t count = 0;  // occurrences between the region's anchors

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// The output domain of the randomized response for one region. `epsilon` is
// filled in by budget allocation.
struct CandidateSet {
  SensitiveRegion region;
  std::vector<Candidate> candidates;  // distinct, sorted by sequence
  double epsilon = 0.0;

  std::size_t size() const { return candidates.size(); }
};

// Integer timestamps for an m-point replacement of `region`: with both anchors
// the points sit at fractions 1/(m+1) .. m/(m+1) between parent and child. With
// one anchor missing, the span's own first/last timestamp stands in for it and
// the replacement reaches that end.
std::vector<int64_t> InterpolateTimestamps(const SensitiveRegion& region, std::size_t m);

// Replacement points for `seq`: registry coordinates plus interpolated times.
std::vector<Point> MaterializeCandidate(const SensitiveRegion& region, const Sequence& seq,
                                        const PoiRegistry& registry);

// Every distinct indexed sequence of length 1..region.length() between the
// region's anchors that
//   (a) avoids the owner's sensitive locations,
//   (b) is not strongly correlated with the parent (first element) or the
//       child (last element),
//   (c) keeps every hop parent -> x_1 -> ... -> x_m -> child reachable at
//       max_speed under the interpolated timestamps,
// and differs from the region's own content. Missing anchors skip their checks.
CandidateSet CandidatesFor(const SensitiveRegion& region, const PatternIndex& index,
                           const CorrelationStats& stats,
                           const std::set<LocationId>& sensitive, double max_speed);

}  // namespace trajsan

#endif  // TRAJSAN_CANDIDATE_BUILDER_H_
