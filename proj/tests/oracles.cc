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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <ctime>

namespace trajsan::oracle {

Counts Recount(const Dataset& dataset) {
  Counts c;
  std::set<UserId> users;
  std::map<LocationId, std::set<UserId>> who;
  for (const Trajectory& t : dataset.trajectories) {
    users.insert(t.user_id);
    for (const Point& p : t.points) {
      c.unigram[p.location_id] += 1;
      who[p.location_id].insert(t.user_id);
    }
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      c.bigram[{t.points[i - 1].location_id, t.points[i].location_id}] += 1;
    }
  }
  c.users = users.size();
  for (const auto& [loc, set] : who) c.users_at[loc] = set.size();
  return c;
}

bool SameCounts(const Counts& expected, const CorrelationStats& actual) {
  if (expected.users != actual.user_count) return false;
  if (expected.users_at.size() != actual.users_at.size()) return false;
  if (expected.unigram.size() != actual.unigram.size()) return false;
  if (expected.bigram.size() != actual.bigram.size()) return false;
  for (const auto& [k, v] : expected.users_at) {
    if (actual.UsersAt(k) != v) return false;
  }
  for (const auto& [k, v] : expected.unigram) {
    if (actual.Unigram(k) != v) return false;
  }
  for (const auto& [k, v] : expected.bigram) {
    if (actual.Bigram(k.first, k.second) != v) return false;
  }
  return true;
}

namespace {

std::size_t Get(const std::map<LocationId, std::size_t>& m, const LocationId& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

std::size_t GetPair(const Counts& c, const LocationId& a, const LocationId& b) {
  auto it = c.bigram.find({a, b});
  return it == c.bigram.end() ? 0 : it->second;
}

}  // namespace

bool Strong(const Counts& c, double floor, const LocationId& cond, const LocationId& loc,
            bool prev_direction) {
  const double prior =
      std::max(floor, static_cast<double>(Get(c.users_at, loc)) / static_cast<double>(c.users));
  const std::size_t denom = Get(c.unigram, cond);
  if (denom == 0) return false;
  const std::size_t num = prev_direction ? GetPair(c, cond, loc) : GetPair(c, loc, cond);
  return static_cast<double>(num) / static_cast<double>(denom) > prior;
}

std::vector<RegionSpan> Regions(const Trajectory& t, const std::set<LocationId>& sensitive,
                                const Counts& counts, double floor) {
  const std::size_t n = t.points.size();
  std::vector<bool> covered(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const LocationId& loc = t.points[i].location_id;
    if (!sensitive.count(loc)) continue;
    covered[i] = true;
    if (i > 0 && Strong(counts, floor, t.points[i - 1].location_id, loc, true)) {
      covered[i - 1] = true;
    }
    if (i + 1 < n && Strong(counts, floor, t.points[i + 1].location_id, loc, false)) {
      covered[i + 1] = true;
    }
  }
  std::vector<RegionSpan> out;
  std::size_t i = 0;
  while (i < n) {
    if (!covered[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && covered[j + 1]) ++j;
    RegionSpan s{i, j, std::nullopt, std::nullopt};
    if (i > 0) s.parent = t.points[i - 1].location_id;
    if (j + 1 < n) s.child = t.points[j + 1].location_id;
    out.push_back(s);
    i = j + 1;
  }
  return out;
}

std::vector<RegionSpan> Spans(const std::vector<SensitiveRegion>& regions) {
  std::vector<RegionSpan> out;
  for (const SensitiveRegion& r : regions) {
    RegionSpan s{r.start, r.end, std::nullopt, std::nullopt};
    if (r.parent) s.parent = r.parent->location_id;
    if (r.child) s.child = r.child->location_id;
    out.push_back(s);
  }
  return out;
}

double GreatCircle(const LatLng& a, const LatLng& b) {
  const double d2r = M_PI / 180.0;
  const double dlat = (b.lat - a.lat) * d2r;
  const double dlon = (b.lon - a.lon) * d2r;
  const double h = std::pow(std::sin(dlat / 2), 2) +
                   std::cos(a.lat * d2r) * std::cos(b.lat * d2r) * std::pow(std::sin(dlon / 2), 2);
  return 2.0 * 6371000.0 * std::atan2(std::sqrt(h), std::sqrt(std::max(0.0, 1.0 - h)));
}

std::vector<std::pair<Sequence, std::size_t>> Candidates(const Dataset& dataset,
                                                         const SensitiveRegion& region,
                                                         const std::set<LocationId>& sensitive,
                                                         const Counts& counts, double floor,
                                                         double max_speed) {
  std::map<Sequence, std::size_t> windows;
  if (!region.parent && !region.child) return {};
  const std::size_t n_max = region.end - region.start + 1;
  for (const Trajectory& t : dataset.trajectories) {
    const std::size_t n = t.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 1; m <= n_max && i + m <= n; ++m) {
        if (region.parent && (i == 0 || t.points[i - 1].location_id != region.parent->location_id)) {
          continue;
        }
        if (region.child && (i + m >= n || t.points[i + m].location_id != region.child->location_id)) {
          continue;
        }
        Sequence seq;
        for (std::size_t k = i; k < i + m; ++k) seq.push_back(t.points[k].location_id);
        windows[seq] += 1;
      }
    }
  }

  std::vector<std::pair<Sequence, std::size_t>> out;
  for (const auto& [seq, count] : windows) {
    if (seq == region.sequence) continue;
    bool clean = true;
    for (const LocationId& l : seq) clean = clean && !sensitive.count(l);
    if (!clean) continue;
    if (region.parent && Strong(counts, floor, region.parent->location_id, seq.front(), true)) {
      continue;
    }
    if (region.child && Strong(counts, floor, region.child->location_id, seq.back(), false)) {
      continue;
    }
    // Timestamps: straight-line interpolation between the time anchors.
    const double m = static_cast<double>(seq.size());
    std::vector<std::pair<LatLng, int64_t>> path;
    if (region.parent) path.push_back({region.parent->coords, region.parent->timestamp});
    const int64_t lo = region.parent ? region.parent->timestamp : region.first_timestamp;
    const int64_t hi = region.child ? region.child->timestamp : region.last_timestamp;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      double frac;
      if (region.parent && region.child) {
        frac = (static_cast<double>(k) + 1.0) / (m + 1.0);
      } else if (region.parent) {
        frac = (static_cast<double>(k) + 1.0) / m;
      } else {
        frac = static_cast<double>(k) / m;
      }
      // Integer seconds, rounded toward the lower anchor.
      const auto ts = lo + static_cast<int64_t>(std::floor(frac * static_cast<double>(hi - lo) + 1e-9));
      path.push_back({dataset.poi_registry.at(seq[k]), ts});
    }
    if (region.child) path.push_back({region.child->coords, region.child->timestamp});
    bool ok = true;
    for (std::size_t k = 1; ok && k < path.size(); ++k) {
      const double d = GreatCircle(path[k - 1].first, path[k].first);
      const double dt = std::fabs(static_cast<double>(path[k].second - path[k - 1].second));
      ok = dt == 0.0 ? d == 0.0 : d / dt <= max_speed;
    }
    if (ok) out.push_back({seq, count});
  }
  return out;
}

int64_t EpochFromCivil(int year, int month, int day, int hour, int minute, int second) {
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = second;
  return static_cast<int64_t>(timegm(&tm));
}

RandomCorpus MakeRandomCorpus(std::mt19937_64& gen, std::size_t max_points) {
  std::uniform_int_distribution<int> alphabet_dist(3, 7);
  const int alphabet = alphabet_dist(gen);
  std::vector<LocationId> locs;
  std::vector<LatLng> coords;
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  for (int i = 0; i < alphabet; ++i) {
    locs.push_back(std::string(1, static_cast<char>('a' + i)));
    coords.push_back({40.0 + jitter(gen), -74.0 + jitter(gen)});
  }
  std::uniform_int_distribution<int> users_dist(1, 4);
  const int users = users_dist(gen);
  std::uniform_int_distribution<std::size_t> total_dist(1, max_points);
  const std::size_t total = total_dist(gen);

  std::vector<CheckIn> checkins;
  std::uniform_int_distribution<int> loc_dist(0, alphabet - 1);
  std::uniform_int_distribution<int> user_dist(0, users - 1);
  std::uniform_int_distribution<int> step_dist(0, 3);
  std::uniform_int_distribution<int64_t> dt_dist(0, 900);
  std::vector<int64_t> clock(static_cast<std::size_t>(users), 1'300'000'000);
  for (std::size_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(user_dist(gen));
    // Occasional long gaps split trajectories.
    clock[u] += step_dist(gen) == 0 ? 30'000 : 60 + dt_dist(gen);
    const auto l = static_cast<std::size_t>(loc_dist(gen));
    checkins.push_back({"u" + std::to_string(u), clock[u], coords[l], locs[l]});
  }
  RandomCorpus corpus;
  corpus.dataset = SegmentTrajectories(checkins, 21600);
  std::bernoulli_distribution pick(0.3);
  for (const Trajectory& t : corpus.dataset.trajectories) {
    auto& set = corpus.sensitive[t.user_id];
    if (!set.empty()) continue;
    for (const LocationId& l : locs) {
      if (pick(gen)) set.insert(l);
    }
  }
  return corpus;
}

}  // namespace trajsan::oracle
