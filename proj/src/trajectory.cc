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

#include "trajsan/trajectory.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "trajsan/error.h"

namespace trajsan {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

template <typename T>
bool ParseNumber(std::string_view text, T& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool ParseFixedInt(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return ParseNumber(text, out);
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Returns an empty string on success, otherwise the reason the line is bad.
std::string ParseCheckinLine(std::string_view line, CheckIn& out) {
  const auto fields = SplitTabs(line);
  if (fields.size() != 5) {
    return "expected 5 tab-separated fields, got " + std::to_string(fields.size());
  }
  if (fields[0].empty()) return "empty user_id";
  if (fields[4].empty()) return "empty location_id";
  if (fields[4] == kSuppressedLocation) return "reserved location_id";
  const auto ts = ParseIsoTime(fields[1]);
  if (!ts) return "bad timestamp '" + std::string(fields[1]) + "'";
  double lat = 0.0;
  double lon = 0.0;
  if (!ParseNumber(fields[2], lat) || !std::isfinite(lat)) return "bad latitude";
  if (!ParseNumber(fields[3], lon) || !std::isfinite(lon)) return "bad longitude";
  if (lat < -90.0 || lat > 90.0) return "latitude out of range";
  if (lon < -180.0 || lon > 180.0) return "longitude out of range";
  out.user_id = std::string(fields[0]);
  out.timestamp = *ts;
  out.coords = {lat, lon};
  out.location_id = std::string(fields[4]);
  return {};
}

}  // namespace

bool IsValidLatLng(const LatLng& c) {
  return c.lat >= -90.0 && c.lat <= 90.0 && c.lon >= -180.0 && c.lon <= 180.0;
}

std::vector<LocationId> Trajectory::Locations() const {
  std::vector<LocationId> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(p.location_id);
  return out;
}

std::optional<int64_t> ParseIsoTime(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.fff]Z
  if (text.size() < 20 || text.back() != 'Z') return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':') {
    return std::nullopt;
  }
  int y, mo, d, h, mi, s;
  if (!ParseFixedInt(text.substr(0, 4), y) || !ParseFixedInt(text.substr(5, 2), mo) ||
      !ParseFixedInt(text.substr(8, 2), d) || !ParseFixedInt(text.substr(11, 2), h) ||
      !ParseFixedInt(text.substr(14, 2), mi) || !ParseFixedInt(text.substr(17, 2), s)) {
    return std::nullopt;
  }
  const std::string_view rest = text.substr(19, text.size() - 20);
  if (!rest.empty()) {
    if (rest.size() < 2 || rest[0] != '.') return std::nullopt;
    for (char c : rest.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
    }
  }
  if (h > 23 || mi > 59 || s > 59) return std::nullopt;
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  const int64_t days = sys_days{ymd}.time_since_epoch().count();
  const int64_t seconds = days * 86400 + h * 3600 + mi * 60 + s;
  if (seconds < 0) return std::nullopt;
  return seconds;
}

std::string FormatIsoTime(int64_t epoch_seconds) {
  using namespace std::chrono;
  const int64_t days = epoch_seconds >= 0 ? epoch_seconds / 86400
                                          : -((-epoch_seconds + 86399) / 86400);
  const int64_t secs = epoch_seconds - days * 86400;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(secs / 3600),
                static_cast<int>((secs / 60) % 60), static_cast<int>(secs % 60));
  return buf;
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ParseResult ParseCheckins(std::istream& in, bool strict) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    CheckIn c;
    std::string reason = ParseCheckinLine(line, c);
    if (reason.empty()) {
      result.checkins.push_back(std::move(c));
      continue;
    }
    if (strict) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": " + reason);
    }
    result.diagnostics.push_back({line_no, std::move(reason)});
  }
  return result;
}

std::string FormatCheckin(const CheckIn& c) {
  std::string out = c.user_id;
  out += '\t';
  out += FormatIsoTime(c.timestamp);
  out += '\t';
  out += FormatDouble(c.coords.lat);
  out += '\t';
  out += FormatDouble(c.coords.lon);
  out += '\t';
  out += c.location_id;
  return out;
}

void WriteCheckins(std::ostream& out, const std::vector<CheckIn>& checkins) {
  for (const CheckIn& c : checkins) out << FormatCheckin(c) << '\n';
}

Dataset SegmentTrajectories(const std::vector<CheckIn>& checkins,
                            int64_t session_gap) {
  if (session_gap <= 0) {
    throw Error(ErrorCode::kConfig, "session_gap must be positive");
  }
  Dataset dataset;
  std::vector<UserId> user_order;
  std::unordered_map<UserId, std::vector<std::size_t>> by_user;
  for (std::size_t i = 0; i < checkins.size(); ++i) {
    const CheckIn& c = checkins[i];
    auto [it, inserted] = by_user.try_emplace(c.user_id);
    if (inserted) user_order.push_back(c.user_id);
    it->second.push_back(i);
    dataset.poi_registry.try_emplace(c.location_id, c.coords);
  }
  dataset.user_count = user_order.size();

  for (const UserId& user : user_order) {
    std::vector<std::size_t>& rows = by_user[user];
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      const CheckIn& ca = checkins[a];
      const CheckIn& cb = checkins[b];
      if (ca.timestamp != cb.timestamp) return ca.timestamp < cb.timestamp;
      return ca.location_id < cb.location_id;
    });
    std::size_t traj_index = 0;
    Trajectory current{user, traj_index, {}};
    for (std::size_t row : rows) {
      const CheckIn& c = checkins[row];
      if (!current.points.empty() &&
          c.timestamp - current.points.back().timestamp > session_gap) {
        dataset.trajectories.push_back(std::move(current));
        current = Trajectory{user, ++traj_index, {}};
      }
      current.points.push_back({c.location_id, c.timestamp, c.coords});
    }
    if (!current.points.empty()) dataset.trajectories.push_back(std::move(current));
  }
  return dataset;
}

void WriteTrajectories(std::ostream& out, const Dataset& dataset) {
  for (const Trajectory& t : dataset.trajectories) {
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const Point& p = t.points[i];
      out << t.user_id << '\t' << t.index << '\t' << i << '\t'
          << FormatIsoTime(p.timestamp) << '\t' << FormatDouble(p.coords.lat) << '\t'
          << FormatDouble(p.coords.lon) << '\t' << p.location_id << '\n';
    }
  }
}

Dataset ReadTrajectories(std::istream& in) {
  Dataset dataset;
  std::unordered_set<UserId> seen_users;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& reason) {
    throw Error(ErrorCode::kParse, "trajectory file line " + std::to_string(line_no) +
                                       ": " + reason);
  };
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    const auto f = SplitTabs(line);
    if (f.size() != 7) fail("expected 7 fields");
    std::size_t traj_index = 0;
    std::size_t point_index = 0;
    if (!ParseNumber(f[1], traj_index) || !ParseNumber(f[2], point_index)) {
      fail("bad index");
    }
    const auto ts = ParseIsoTime(f[3]);
    if (!ts) fail("bad timestamp");
    Point p;
    p.timestamp = *ts;
    p.location_id = std::string(f[6]);
    if (p.location_id.empty()) fail("empty location_id");
    if (!ParseNumber(f[4], p.coords.lat) || !ParseNumber(f[5], p.coords.lon)) {
      fail("bad coordinates");
    }
    if (!p.IsSuppressed() && !IsValidLatLng(p.coords)) fail("coordinates out of range");

    const bool continues = !dataset.trajectories.empty() &&
                           dataset.trajectories.back().user_id == f[0] &&
                           dataset.trajectories.back().index == traj_index;
    if (continues) {
      Trajectory& t = dataset.trajectories.back();
      if (point_index != t.points.size()) fail("point index out of sequence");
      if (p.timestamp < t.points.back().timestamp) fail("timestamps decrease");
    } else {
      if (point_index != 0) fail("trajectory does not start at point 0");
      dataset.trajectories.push_back(Trajectory{std::string(f[0]), traj_index, {}});
      seen_users.insert(std::string(f[0]));
    }
    if (!p.IsSuppressed()) dataset.poi_registry.try_emplace(p.location_id, p.coords);
    dataset.trajectories.back().points.push_back(std::move(p));
  }
  dataset.user_count = seen_users.size();
  return dataset;
}

double Haversine(const LatLng& a, const LatLng& b) {
  constexpr double kToRad = std::numbers::pi / 180.0;
  const double phi1 = a.lat * kToRad;
  const double phi2 = b.lat * kToRad;
  const double dphi = (b.lat - a.lat) * kToRad;
  const double dlambda = (b.lon - a.lon) * kToRad;
  const double s1 = std::sin(dphi / 2);
  const double s2 = std::sin(dlambda / 2);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

bool Reachable(const Point& a, const Point& b, double max_speed) {
  const double distance = Haversine(a.coords, b.coords);
  const int64_t dt = a.timestamp > b.timestamp ? a.timestamp - b.timestamp
                                               : b.timestamp - a.timestamp;
  if (dt == 0) return distance == 0.0;
  return distance <= max_speed * static_cast<double>(dt);
}

}  // namespace trajsan
