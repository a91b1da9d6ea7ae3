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

#include "trajsan/correlation_stats.h"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "trajsan/error.h"

namespace trajsan {
namespace {

template <typename Map, typename Key>
std::size_t LookupOrZero(const Map& map, const Key& key) {
  const auto it = map.find(key);
  return it == map.end() ? 0 : it->second;
}

void RequireUsers(const CorrelationStats& stats) {
  if (stats.user_count == 0) {
    throw Error(ErrorCode::kUndefinedStatistics,
                "correlation statistics are empty (N = 0)");
  }
}

}  // namespace

std::size_t CorrelationStats::UsersAt(const LocationId& loc) const {
  return LookupOrZero(users_at, loc);
}

std::size_t CorrelationStats::Unigram(const LocationId& loc) const {
  return LookupOrZero(unigram, loc);
}

std::size_t CorrelationStats::Bigram(const LocationId& from, const LocationId& to) const {
  return LookupOrZero(bigram, std::make_pair(from, to));
}

CorrelationStats BuildStats(const Dataset& dataset, double guess_floor) {
  CorrelationStats stats;
  stats.guess_floor = guess_floor;
  std::unordered_set<UserId> users;
  std::unordered_map<LocationId, std::unordered_set<UserId>> visitors;
  for (const Trajectory& t : dataset.trajectories) {
    users.insert(t.user_id);
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      const LocationId& loc = t.points[i].location_id;
      ++stats.unigram[loc];
      visitors[loc].insert(t.user_id);
      if (i + 1 < t.points.size()) {
        ++stats.bigram[{loc, t.points[i + 1].location_id}];
      }
    }
  }
  stats.user_count = users.size();
  for (const auto& [loc, who] : visitors) stats.users_at[loc] = who.size();
  return stats;
}

double GuessProb(const CorrelationStats& stats, const LocationId& loc) {
  RequireUsers(stats);
  const double share = static_cast<double>(stats.UsersAt(loc)) /
                       static_cast<double>(stats.user_count);
  return std::max(stats.guess_floor, share);
}

double CondProbPrev(const CorrelationStats& stats, const LocationId& prev,
                    const LocationId& loc) {
  const std::size_t denom = stats.Unigram(prev);
  if (denom == 0) return 0.0;
  return static_cast<double>(stats.Bigram(prev, loc)) / static_cast<double>(denom);
}

double CondProbNext(const CorrelationStats& stats, const LocationId& loc,
                    const LocationId& next) {
  const std::size_t denom = stats.Unigram(next);
  if (denom == 0) return 0.0;
  return static_cast<double>(stats.Bigram(loc, next)) / static_cast<double>(denom);
}

bool IsStrongPrev(const CorrelationStats& stats, const LocationId& prev,
                  const LocationId& loc) {
  return CondProbPrev(stats, prev, loc) > GuessProb(stats, loc);
}

bool IsStrongNext(const CorrelationStats& stats, const LocationId& loc,
                  const LocationId& next) {
  return CondProbNext(stats, loc, next) > GuessProb(stats, loc);
}

void WriteStatsJson(std::ostream& out, const CorrelationStats& stats) {
  nlohmann::ordered_json j;
  j["N"] = stats.user_count;
  j["guess_floor"] = stats.guess_floor;
  j["users_at"] = std::map<LocationId, std::size_t>(stats.users_at.begin(),
                                                    stats.users_at.end());
  j["unigram"] = std::map<LocationId, std::size_t>(stats.unigram.begin(),
                                                   stats.unigram.end());
  std::map<std::pair<LocationId, LocationId>, std::size_t> sorted(stats.bigram.begin(),
                                                                  stats.bigram.end());
  auto bigrams = nlohmann::ordered_json::array();
  for (const auto& [key, count] : sorted) {
    bigrams.push_back({key.first, key.second, count});
  }
  j["bigram"] = std::move(bigrams);
  out << j.dump(2) << '\n';
}

CorrelationStats ReadStatsJson(std::istream& in) {
  CorrelationStats stats;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    stats.user_count = j.at("N").get<std::size_t>();
    stats.guess_floor = j.value("guess_floor", kDefaultGuessFloor);
    for (const auto& [loc, n] : j.at("users_at").items()) {
      stats.users_at[loc] = n.get<std::size_t>();
    }
    for (const auto& [loc, n] : j.at("unigram").items()) {
      stats.unigram[loc] = n.get<std::size_t>();
    }
    for (const auto& entry : j.at("bigram")) {
      stats.bigram[{entry.at(0).get<LocationId>(), entry.at(1).get<LocationId>()}] =
          entry.at(2).get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("stats json: ") + e.what());
  }
  return stats;
}

}  // namespace trajsan
