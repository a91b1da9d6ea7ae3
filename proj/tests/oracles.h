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

#ifndef TRAJSAN_TESTS_ORACLES_H_
#define TRAJSAN_TESTS_ORACLES_H_

// Brute-force reference implementations used only by tests. They share no code
// paths with the library beyond the plain data types.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trajsan/candidate_builder.h"
#include "trajsan/correlation_stats.h"
#include "trajsan/region_detector.h"
#include "trajsan/trajectory.h"

namespace trajsan::oracle {

struct Counts {
  std::size_t users = 0;
  std::map<LocationId, std::size_t> users_at;
  std::map<LocationId, std::size_t> unigram;
  std::map<std::pair<LocationId, LocationId>, std::size_t> bigram;
};

Counts Recount(const Dataset& dataset);

// True when the library's stats hold exactly the same counts.
bool SameCounts(const Counts& expected, const CorrelationStats& actual);

bool Strong(const Counts& c, double floor, const LocationId& cond, const LocationId& loc,
            bool prev_direction);

struct RegionSpan {
  std::size_t start;
  std::size_t end;
  std::optional<LocationId> parent;
  std::optional<LocationId> child;
  friend bool operator==(const RegionSpan&, const RegionSpan&) = default;
};

// Marks covered indices and reads off maximal runs.
std::vector<RegionSpan> Regions(const Trajectory& t, const std::set<LocationId>& sensitive,
                                const Counts& counts, double floor);

std::vector<RegionSpan> Spans(const std::vector<SensitiveRegion>& regions);

// Scans every window of every trajectory, then applies the three candidate
// rules from scratch.
std::vector<std::pair<Sequence, std::size_t>> Candidates(const Dataset& dataset,
                                                         const SensitiveRegion& region,
                                                         const std::set<LocationId>& sensitive,
                                                         const Counts& counts, double floor,
                                                         double max_speed);

// atan2 form of the great-circle distance.
double GreatCircle(const LatLng& a, const LatLng& b);

// timegm-based conversion.
int64_t EpochFromCivil(int year, int month, int day, int hour, int minute, int second);

// Random corpus with a small alphabet so correlations are frequent.
struct RandomCorpus {
  Dataset dataset;
  SensitiveSets sensitive;
};

RandomCorpus MakeRandomCorpus(std::mt19937_64& gen, std::size_t max_points);

}  // namespace trajsan::oracle

#endif  // TRAJSAN_TESTS_ORACLES_H_
