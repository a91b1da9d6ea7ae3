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

#ifndef TRAJSAN_REGION_DETECTOR_H_
#define TRAJSAN_REGION_DETECTOR_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trajsan/correlation_stats.h"
#include "trajsan/trajectory.h"

namespace trajsan {

// Per-user sensitive locations. Users with no entry have nothing to hide.
using SensitiveSets = std::map<UserId, std::set<LocationId>>;

// TSV, one "user_id<TAB>location_id" entry per line.
SensitiveSets ReadSensitiveSets(std::istream& in);
void WriteSensitiveSets(std::ostream& out, const SensitiveSets& sets);

// A contiguous span [start, end] of one trajectory that must be replaced.
// parent/child are the points just outside the span; nullopt at a trajectory
// boundary.
struct SensitiveRegion {
  std::size_t trajectory = 0;  // index into Dataset::trajectories
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  std::vector<LocationId> sequence;
  std::optional<Point> parent;
  std::optional<Point> child;
  int64_t first_timestamp = 0;
  int64_t last_timestamp = 0;

  // Why each index is in the span.
  std::vector<std::size_t> sensitive_indices;
  std::vector<std::size_t> strong_prev_indices;  // neighbor i-1 pulled in
  std::vector<std::size_t> strong_next_indices;  // neighbor i+1 pulled in

  std::size_t length() const { return end - start + 1; }
  std::string Id() const;

  friend bool operator==(const SensitiveRegion&, const SensitiveRegion&) = default;
};

// Every occurrence of a sensitive location seeds a span that grows by one hop
// towards each strongly correlated neighbor. Overlapping or adjacent spans are
// merged. Result is sorted by start and pairwise disjoint.
std::vector<SensitiveRegion> DetectRegions(const Trajectory& trajectory,
                                           const std::set<LocationId>& sensitive,
                                           const CorrelationStats& stats,
                                           std::size_t trajectory_id = 0);

// Keyed by trajectory index; trajectories without regions are omitted.
std::map<std::size_t, std::vector<SensitiveRegion>> DetectAll(
    const Dataset& dataset, const SensitiveSets& sensitive_sets,
    const CorrelationStats& stats);

}  // namespace trajsan

#endif  // TRAJSAN_REGION_DETECTOR_H_
