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

#include "trajsan/region_detector.h"

#include <istream>
#include <ostream>

#include "trajsan/error.h"

namespace trajsan {
namespace {

struct Span {
  std::size_t start;
  std::size_t end;
};

}  // namespace

SensitiveSets ReadSensitiveSets(std::istream& in) {
  SensitiveSets sets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::kParse, "sensitive set line " + std::to_string(line_no) +
                                         ": expected user_id<TAB>location_id");
    }
    sets[line.substr(0, tab)].insert(line.substr(tab + 1));
  }
  return sets;
}

void WriteSensitiveSets(std::ostream& out, const SensitiveSets& sets) {
  for (const auto& [user, locations] : sets) {
    for (const LocationId& loc : locations) out << user << '\t' << loc << '\n';
  }
}

std::string SensitiveRegion::Id() const {
  return std::to_string(trajectory) + ":" + std::to_string(start);
}

std::vector<SensitiveRegion> DetectRegions(const Trajectory& trajectory,
                                           const std::set<LocationId>& sensitive,
                                           const CorrelationStats& stats,
                                           std::size_t trajectory_id) {
  if (stats.user_count == 0) {
    throw Error(ErrorCode::kUndefinedStatistics,
                "cannot detect regions without statistics (N = 0)");
  }
  const std::vector<Point>& pts = trajectory.points;
  const std::size_t n = pts.size();

  std::vector<Span> spans;
  std::vector<std::size_t> seeds;
  std::vector<std::size_t> pulled_prev;
  std::vector<std::size_t> pulled_next;
  for (std::size_t i = 0; i < n; ++i) {
    const LocationId& loc = pts[i].location_id;
    if (!sensitive.contains(loc)) continue;
    Span span{i, i};
    if (i > 0 && IsStrongPrev(stats, pts[i - 1].location_id, loc)) {
      span.start = i - 1;
      pulled_prev.push_back(i - 1);
    }
    if (i + 1 < n && IsStrongNext(stats, loc, pts[i + 1].location_id)) {
      span.end = i + 1;
      pulled_next.push_back(i + 1);
    }
    seeds.push_back(i);
    // Spans arrive ordered by seed; a new span can only touch the last one.
    if (!spans.empty() && span.start <= spans.back().end + 1) {
      spans.back().end = std::max(spans.back().end, span.end);
      spans.back().start = std::min(spans.back().start, span.start);
    } else {
      spans.push_back(span);
    }
  }

  std::vector<SensitiveRegion> regions;
  regions.reserve(spans.size());
  for (const Span& s : spans) {
    SensitiveRegion r;
    r.trajectory = trajectory_id;
    r.start = s.start;
    r.end = s.end;
    for (std::size_t i = s.start; i <= s.end; ++i) r.sequence.push_back(pts[i].location_id);
    if (s.start > 0) r.parent = pts[s.start - 1];
    if (s.end + 1 < n) r.child = pts[s.end + 1];
    r.first_timestamp = pts[s.start].timestamp;
    r.last_timestamp = pts[s.end].timestamp;
    auto within = [&](std::size_t i) { return i >= s.start && i <= s.end; };
    for (std::size_t i : seeds) {
      if (within(i)) r.sensitive_indices.push_back(i);
    }
    for (std::size_t i : pulled_prev) {
      if (within(i)) r.strong_prev_indices.push_back(i);
    }
    for (std::size_t i : pulled_next) {
      if (within(i)) r.strong_next_indices.push_back(i);
    }
    regions.push_back(std::move(r));
  }
  return regions;
}

std::map<std::size_t, std::vector<SensitiveRegion>> DetectAll(
    const Dataset& dataset, const SensitiveSets& sensitive_sets,
    const CorrelationStats& stats) {
  std::map<std::size_t, std::vector<SensitiveRegion>> result;
  for (std::size_t t = 0; t < dataset.trajectories.size(); ++t) {
    const Trajectory& traj = dataset.trajectories[t];
    const auto it = sensitive_sets.find(traj.user_id);
    if (it == sensitive_sets.end() || it->second.empty()) continue;
    auto regions = DetectRegions(traj, it->second, stats, t);
    if (!regions.empty()) result.emplace(t, std::move(regions));
  }
  return result;
}

}  // namespace trajsan
