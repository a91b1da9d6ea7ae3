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

#include "trajsan/candidate_builder.h"

#include <algorithm>

#include "trajsan/error.h"

namespace trajsan {
namespace {

bool ContainsAny(const Sequence& seq, const std::set<LocationId>& locations) {
  return std::any_of(seq.begin(), seq.end(),
                     [&](const LocationId& l) { return locations.contains(l); });
}

}  // namespace

PatternIndex PatternIndex::Build(const Dataset& dataset, std::size_t max_len) {
  if (max_len == 0) throw Error(ErrorCode::kConfig, "max_len must be at least 1");
  PatternIndex index;
  index.max_len_ = max_len;
  index.registry_ = dataset.poi_registry;
  for (const Trajectory& t : dataset.trajectories) {
    const std::size_t n = t.points.size();
    // Windows start at `first` (the element after the parent) and span m points.
    for (std::size_t first = 0; first < n; ++first) {
      Sequence seq;
      for (std::size_t m = 1; m <= max_len && first + m <= n; ++m) {
        seq.push_back(t.points[first + m - 1].location_id);
        const bool has_parent = first > 0;
        const bool has_child = first + m < n;
        if (has_parent) {
          const LocationId& parent = t.points[first - 1].location_id;
          ++index.by_parent_[{parent, m}][seq];
          if (has_child) {
            const LocationId& child = t.points[first + m].location_id;
            ++index.both_[{parent, child, m}][seq];
          }
        }
        if (has_child) {
          ++index.by_child_[{t.points[first + m].location_id, m}][seq];
        }
      }
    }
  }
  return index;
}

const SequenceCounts* PatternIndex::Find(const std::optional<LocationId>& parent,
                                         const std::optional<LocationId>& child,
                                         std::size_t length) const {
  if (parent && child) {
    const auto it = both_.find({*parent, *child, length});
    return it == both_.end() ? nullptr : &it->second;
  }
  if (parent) {
    const auto it = by_parent_.find({*parent, length});
    return it == by_parent_.end() ? nullptr : &it->second;
  }
  if (child) {
    const auto it = by_child_.find({*child, length});
    return it == by_child_.end() ? nullptr : &it->second;
  }
  return nullptr;
}

std::size_t PatternIndex::Count(const std::optional<LocationId>& parent,
                                const std::optional<LocationId>& child,
                                const Sequence& seq) const {
  const SequenceCounts* counts = Find(parent, child, seq.size());
  if (counts == nullptr) return 0;
  const auto it = counts->find(seq);
  return it == counts->end() ? 0 : it->second;
}

const LatLng& PatternIndex::CoordinatesOf(const LocationId& loc) const {
  const auto it = registry_.find(loc);
  if (it == registry_.end()) {
    throw Error(ErrorCode::kMismatch, "location '" + loc + "' missing from registry");
  }
  return it->second;
}

std::vector<int64_t> InterpolateTimestamps(const SensitiveRegion& region, std::size_t m) {
  std::vector<int64_t> out(m);
  const int64_t lo = region.parent ? region.parent->timestamp : region.first_timestamp;
  const int64_t hi = region.child ? region.child->timestamp : region.last_timestamp;
  const int64_t span = hi - lo;
  const auto steps = static_cast<int64_t>(m);
  for (int64_t i = 0; i < steps; ++i) {
    int64_t num;
    int64_t den;
    if (region.parent && region.child) {
      num = i + 1;
      den = steps + 1;
    } else if (region.parent) {
      num = i + 1;
      den = steps;
    } else if (region.child) {
      num = i;
      den = steps;
    } else {
      num = steps == 1 ? 0 : i;
      den = steps == 1 ? 1 : steps - 1;
    }
    out[static_cast<std::size_t>(i)] = lo + span * num / den;
  }
  return out;
}

std::vector<Point> MaterializeCandidate(const SensitiveRegion& region, const Sequence& seq,
                                        const PoiRegistry& registry) {
  const std::vector<int64_t> times = InterpolateTimestamps(region, seq.size());
  std::vector<Point> points;
  points.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto it = registry.find(seq[i]);
    if (it == registry.end()) {
      throw Error(ErrorCode::kMismatch, "location '" + seq[i] + "' missing from registry");
    }
    points.push_back({seq[i], times[i], it->second});
  }
  return points;
}

CandidateSet CandidatesFor(const SensitiveRegion& region, const PatternIndex& index,
                           const CorrelationStats& stats,
                           const std::set<LocationId>& sensitive, double max_speed) {
  CandidateSet set;
  set.region = region;
  if (!region.parent && !region.child) return set;

  std::optional<LocationId> parent_loc;
  std::optional<LocationId> child_loc;
  if (region.parent) parent_loc = region.parent->location_id;
  if (region.child) child_loc = region.child->location_id;

  const std::size_t max_len = std::min(region.length(), index.max_len());
  for (std::size_t m = 1; m <= max_len; ++m) {
    const SequenceCounts* counts = index.Find(parent_loc, child_loc, m);
    if (counts == nullptr) continue;
    for (const auto& [seq, count] : *counts) {
      if (seq == region.sequence) continue;
      if (ContainsAny(seq, sensitive)) continue;
      if (parent_loc && IsStrongPrev(stats, *parent_loc, seq.front())) continue;
      if (child_loc && IsStrongNext(stats, seq.back(), *child_loc)) continue;

      const std::vector<Point> path = MaterializeCandidate(region, seq, index.registry());
      bool reachable = true;
      if (region.parent) reachable = Reachable(*region.parent, path.front(), max_speed);
      for (std::size_t i = 1; reachable && i < path.size(); ++i) {
        reachable = Reachable(path[i - 1], path[i], max_speed);
      }
      if (reachable && region.child) {
        reachable = Reachable(path.back(), *region.child, max_speed);
      }
      if (!reachable) continue;
      set.candidates.push_back({seq, count});
    }
  }
  std::sort(set.candidates.begin(), set.candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.sequence < b.sequence; });
  return set;
}

}  // namespace trajsan
