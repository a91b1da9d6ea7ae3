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

#ifndef TRAJSAN_TRAJECTORY_H_
#define TRAJSAN_TRAJECTORY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace trajsan {

using UserId = std::string;
using LocationId = std::string;

// Reserved id for a suppressed span. Rejected as an input location id.
inline constexpr std::string_view kSuppressedLocation = "SUPPRESSED";

inline constexpr double kEarthRadiusMeters = 6371000.0;
inline constexpr double kDefaultMaxSpeed = 30.0;           // m/s
inline constexpr int64_t kDefaultSessionGap = 21600;       // 6 h

struct LatLng {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLng&, const LatLng&) = default;
};

bool IsValidLatLng(const LatLng& c);

struct CheckIn {
  UserId user_id;
  int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
  LatLng coords;
  LocationId location_id;

  friend bool operator==(const CheckIn&, const CheckIn&) = default;
};

struct Point {
  LocationId location_id;
  int64_t timestamp = 0;
  LatLng coords;

  bool IsSuppressed() const { return location_id == kSuppressedLocation; }

  friend bool operator==(const Point&, const Point&) = default;
};

struct Trajectory {
  UserId user_id;
  std::size_t index = 0;  // position among this user's trajectories
  std::vector<Point> points;

  std::vector<LocationId> Locations() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

using PoiRegistry = std::unordered_map<LocationId, LatLng>;

// Trajectories are ordered by each user's first appearance in the input, then
// by trajectory index. Immutable once built.
struct Dataset {
  std::vector<Trajectory> trajectories;
  std::size_t user_count = 0;
  PoiRegistry poi_registry;  // first-seen coordinates per location
};

// ---------------------------------------------------------------------------
// Time

// Parses "YYYY-MM-DDTHH:MM:SS[.fff]Z". Fractional seconds are discarded.
std::optional<int64_t> ParseIsoTime(std::string_view text);
std::string FormatIsoTime(int64_t epoch_seconds);

// ---------------------------------------------------------------------------
// Check-in TSV: user_id, ISO-8601 time, latitude, longitude, location_id.

struct LineDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<CheckIn> checkins;
  std::vector<LineDiagnostic> diagnostics;
};

// Lenient mode skips malformed lines and records a diagnostic; strict mode
// throws Error(kParse) on the first one.
ParseResult ParseCheckins(std::istream& in, bool strict);

std::string FormatCheckin(const CheckIn& c);
void WriteCheckins(std::ostream& out, const std::vector<CheckIn>& checkins);

// Shortest decimal form that round-trips.
std::string FormatDouble(double value);

// ---------------------------------------------------------------------------
// Segmentation

// Groups check-ins per user, sorts them by time (ties: location id, then input
// order) and cuts a new trajectory wherever consecutive check-ins are more than
// `session_gap` seconds apart.
Dataset SegmentTrajectories(const std::vector<CheckIn>& checkins,
                            int64_t session_gap = kDefaultSessionGap);

// Trajectory TSV: user_id, trajectory_index, point_index, time, lat, lon,
// location_id. Suppressed points carry "nan" coordinates.
void WriteTrajectories(std::ostream& out, const Dataset& dataset);
Dataset ReadTrajectories(std::istream& in);

// ---------------------------------------------------------------------------
// Geometry

// Great-circle distance in meters on a sphere of radius kEarthRadiusMeters.
double Haversine(const LatLng& a, const LatLng& b);

// True iff the implied speed between a and b does not exceed max_speed.
// Equal timestamps are reachable only at zero distance.
bool Reachable(const Point& a, const Point& b, double max_speed);

}  // namespace trajsan

#endif  // TRAJSAN_TRAJECTORY_H_
