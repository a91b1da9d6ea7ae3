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

#ifndef TRAJSAN_CORRELATION_STATS_H_
#define TRAJSAN_CORRELATION_STATS_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <unordered_map>
#include <utility>

#include "trajsan/trajectory.h"

namespace trajsan {

inline constexpr double kDefaultGuessFloor = 0.5;

struct LocationPairHash {
  std::size_t operator()(const std::pair<LocationId, LocationId>& p) const {
    const std::size_t h1 = std::hash<LocationId>{}(p.first);
    const std::size_t h2 = std::hash<LocationId>{}(p.second);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

// Dataset-wide counts behind the attacker's inference model:
//   users_at(l)   distinct users who visited l
//   unigram(l)    occurrences of l as a trajectory point
//   bigram(a, b)  occurrences of a immediately followed by b
struct CorrelationStats {
  std::size_t user_count = 0;
  double guess_floor = kDefaultGuessFloor;
  std::unordered_map<LocationId, std::size_t> users_at;
  std::unordered_map<LocationId, std::size_t> unigram;
  std::unordered_map<std::pair<LocationId, LocationId>, std::size_t, LocationPairHash>
      bigram;

  std::size_t UsersAt(const LocationId& loc) const;
  std::size_t Unigram(const LocationId& loc) const;
  std::size_t Bigram(const LocationId& from, const LocationId& to) const;

  friend bool operator==(const CorrelationStats&, const CorrelationStats&) = default;
};

CorrelationStats BuildStats(const Dataset& dataset,
                            double guess_floor = kDefaultGuessFloor);

// Attacker's prior: max(guess_floor, users_at(loc) / N). Throws
// kUndefinedStatistics when N = 0.
double GuessProb(const CorrelationStats& stats, const LocationId& loc);

// bigram(prev, loc) / unigram(prev), or 0 when prev was never observed.
double CondProbPrev(const CorrelationStats& stats, const LocationId& prev,
                    const LocationId& loc);

// bigram(loc, next) / unigram(next), or 0 when next was never observed.
double CondProbNext(const CorrelationStats& stats, const LocationId& loc,
                    const LocationId& next);

// Strict comparison against GuessProb(loc); ties are weak.
bool IsStrongPrev(const CorrelationStats& stats, const LocationId& prev,
                  const LocationId& loc);
bool IsStrongNext(const CorrelationStats& stats, const LocationId& loc,
                  const LocationId& next);

// JSON dump {N, guess_floor, users_at, unigram, bigram}; keys sorted.
void WriteStatsJson(std::ostream& out, const CorrelationStats& stats);
CorrelationStats ReadStatsJson(std::istream& in);

}  // namespace trajsan

#endif  // TRAJSAN_CORRELATION_STATS_H_
