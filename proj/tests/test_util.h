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

#ifndef TRAJSAN_TESTS_TEST_UTIL_H_
#define TRAJSAN_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "trajsan/trajectory.h"

namespace trajsan::testing_util {

// Trajectory over the given location ids, one point every `step` seconds at
// synthetic coordinates derived from the id's first character.
inline Trajectory Traj(const std::string& user, const std::vector<std::string>& locs,
                       int64_t t0 = 1'000'000, int64_t step = 600) {
  Trajectory t;
  t.user_id = user;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const double offset = static_cast<double>(static_cast<unsigned char>(locs[i][0]) - 'a');
    t.points.push_back({locs[i], t0 + static_cast<int64_t>(i) * step,
                        {40.0 + 0.001 * offset, -74.0 + 0.001 * offset}});
  }
  return t;
}

// Dataset from trajectories; registry filled from first-seen coordinates.
inline Dataset MakeDataset(std::vector<Trajectory> trajectories) {
  Dataset d;
  std::vector<UserId> users;
  for (Trajectory& t : trajectories) {
    bool seen = false;
    for (const UserId& u : users) seen = seen || u == t.user_id;
    if (!seen) users.push_back(t.user_id);
    for (const Point& p : t.points) d.poi_registry.try_emplace(p.location_id, p.coords);
    d.trajectories.push_back(std::move(t));
  }
  d.user_count = users.size();
  return d;
}

}  // namespace trajsan::testing_util

#endif  // TRAJSAN_TESTS_TEST_UTIL_H_
