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

#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"
#include "trajsan/error.h"

namespace trajsan {
namespace {

using testing_util::MakeDataset;
using testing_util::Traj;

TEST(PatternIndexTest, SingleWindow) {
  const PatternIndex index = PatternIndex::Build(MakeDataset({Traj("u", {"a", "b", "c"})}), 1);
  const SequenceCounts* found = index.Find("a", "c", 1);
  ASSERT_NE(found, nullptr);
  EXPECT_EQ(*found, (SequenceCounts{{{"b"}, 1}}));
  EXPECT_EQ(index.Find("a", "c", 2), nullptr);
}

TEST(PatternIndexTest, TwoLengths) {
  const PatternIndex index = PatternIndex::Build(
      MakeDataset({Traj("u", {"a", "b", "d", "c"}), Traj("v", {"a", "b", "c"})}), 2);
  EXPECT_EQ(index.Count("a", "c", {"b", "d"}), 1u);
  EXPECT_EQ(index.Count("a", "c", {"b"}), 1u);
  EXPECT_EQ(*index.Find("a", "c", 1), (SequenceCounts{{{"b"}, 1}}));
  EXPECT_EQ(*index.Find("a", "c", 2), (SequenceCounts{{{"b", "d"}, 1}}));
  // One-sided views include windows running to the end of a trajectory.
  EXPECT_EQ(index.Count("b", std::nullopt, {"c"}), 1u);
  EXPECT_EQ(index.Count("b", std::nullopt, {"d"}), 1u);
  EXPECT_EQ(index.Count(std::nullopt, "c", {"b"}), 1u);
  EXPECT_EQ(index.Count(std::nullopt, "b", {"a"}), 2u);
  EXPECT_EQ(index.Find(std::nullopt, std::nullopt, 1), nullptr);
}

TEST(PatternIndexTest, EmptyAndBadLength) {
  EXPECT_TRUE(PatternIndex::Build(Dataset{}, 3).empty());
  EXPECT_THROW(PatternIndex::Build(Dataset{}, 0), Error);
}

TEST(PatternIndexTest, CountsMatchWindowScan) {
  std::mt19937_64 gen(404);
  for (int trial = 0; trial < 50; ++trial) {
    const auto corpus = oracle::MakeRandomCorpus(gen, 40);
    const PatternIndex index = PatternIndex::Build(corpus.dataset, 3);
    std::map<std::tuple<LocationId, LocationId, Sequence>, std::size_t> scan;
    for (const Trajectory& t : corpus.dataset.trajectories) {
      const auto locs = t.Locations();
      for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t i = 0; i + m + 2 <= locs.size(); ++i) {
          Sequence seq(locs.begin() + i + 1, locs.begin() + i + 1 + m);
          ++scan[{locs[i], locs[i + m + 1], seq}];
        }
      }
    }
    std::size_t total = 0;
    for (const auto& [key, count] : scan) {
      EXPECT_EQ(index.Count(std::get<0>(key), std::get<1>(key), std::get<2>(key)), count);
      total += count;
    }
    std::size_t indexed = 0;
    for (std::size_t m = 1; m <= 3; ++m) {
      for (const auto& [key, count] : scan) {
        if (std::get<2>(key).size() != m) continue;
        const SequenceCounts* found = index.Find(std::get<0>(key), std::get<1>(key), m);
        ASSERT_NE(found, nullptr);
        indexed += found->at(std::get<2>(key));
      }
    }
    EXPECT_EQ(indexed, total);
  }
}

// Patterns a[b]c x3, a[d]c x2, a[e f]c x1 and a region a[s]c. Each pattern is
// walked by a different user so nothing is strongly correlated.
Dataset ToyCandidateCorpus() {
  std::vector<Trajectory> ts;
  int u = 0;
  auto add = [&](std::vector<std::string> locs, int times) {
    for (int i = 0; i < times; ++i) ts.push_back(Traj("u" + std::to_string(u++), locs));
  };
  add({"a", "b", "c"}, 3);
  add({"a", "d", "c"}, 2);
  add({"a", "e", "f", "c"}, 1);
  add({"a", "s", "c"}, 1);
  return MakeDataset(std::move(ts));
}

TEST(CandidatesForTest, ToyCorpus) {
  const Dataset d = ToyCandidateCorpus();
  const CorrelationStats stats = BuildStats(d);
  const Trajectory& owner = d.trajectories.back();
  const auto regions = DetectRegions(owner, {"s"}, stats, d.trajectories.size() - 1);
  ASSERT_EQ(regions.size(), 1u);
  ASSERT_EQ(regions[0].length(), 1u);
  const PatternIndex index = PatternIndex::Build(d, 2);
  const CandidateSet cs = CandidatesFor(regions[0], index, stats, {"s"}, kDefaultMaxSpeed);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.candidates[0], (Candidate{{"b"}, 3}));
  EXPECT_EQ(cs.candidates[1], (Candidate{{"d"}, 2}));
}

TEST(CandidatesForTest, SensitiveCandidateExcluded) {
  const Dataset d = ToyCandidateCorpus();
  const CorrelationStats stats = BuildStats(d);
  const auto regions =
      DetectRegions(d.trajectories.back(), {"s"}, stats, d.trajectories.size() - 1);
  const PatternIndex index = PatternIndex::Build(d, 2);
  const CandidateSet cs = CandidatesFor(regions[0], index, stats, {"s", "b"}, kDefaultMaxSpeed);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs.candidates[0].sequence, (Sequence{"d"}));
}

TEST(CandidatesForTest, UnseenAnchorsGiveEmptySet) {
  const Dataset d = MakeDataset({Traj("u", {"x", "s", "y"}), Traj("v", {"a", "b", "c"})});
  const CorrelationStats stats = BuildStats(d);
  const auto regions = DetectRegions(d.trajectories[0], {"s"}, stats, 0);
  ASSERT_EQ(regions.size(), 1u);
  const PatternIndex index = PatternIndex::Build(d, 1);
  EXPECT_EQ(CandidatesFor(regions[0], index, stats, {"s"}, kDefaultMaxSpeed).size(), 0u);
}

TEST(CandidatesForTest, ZeroSpeedKeepsOnlyCoLocatedCandidates) {
  const Dataset d = ToyCandidateCorpus();
  const CorrelationStats stats = BuildStats(d);
  const auto regions =
      DetectRegions(d.trajectories.back(), {"s"}, stats, d.trajectories.size() - 1);
  const PatternIndex index = PatternIndex::Build(d, 2);
  EXPECT_EQ(CandidatesFor(regions[0], index, stats, {"s"}, 0.0).size(), 0u);
}

TEST(InterpolateTimestampsTest, Anchors) {
  SensitiveRegion r;
  r.parent = Point{"a", 1000, {}};
  r.child = Point{"c", 2000, {}};
  r.first_timestamp = 1200;
  r.last_timestamp = 1800;
  EXPECT_EQ(InterpolateTimestamps(r, 1), (std::vector<int64_t>{1500}));
  EXPECT_EQ(InterpolateTimestamps(r, 3), (std::vector<int64_t>{1250, 1500, 1750}));
  r.child.reset();
  EXPECT_EQ(InterpolateTimestamps(r, 2), (std::vector<int64_t>{1400, 1800}));
  r.child = Point{"c", 2000, {}};
  r.parent.reset();
  EXPECT_EQ(InterpolateTimestamps(r, 2), (std::vector<int64_t>{1200, 1600}));
}

TEST(MaterializeCandidateTest, RegistryCoordinates) {
  const Dataset d = ToyCandidateCorpus();
  const auto regions = DetectRegions(d.trajectories.back(), {"s"}, BuildStats(d),
                                     d.trajectories.size() - 1);
  const auto points = MaterializeCandidate(regions[0], {"b"}, d.poi_registry);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].coords, d.poi_registry.at("b"));
  EXPECT_EQ(points[0].timestamp, d.trajectories.back().points[1].timestamp);
}

// Candidate sets equal the brute-force scan, and every candidate survives a
// from-scratch recheck of the rules.
TEST(CandidatesForTest, RandomCorporaMatchOracle) {
  std::mt19937_64 gen(505);
  for (int trial = 0; trial < 150; ++trial) {
    const auto corpus = oracle::MakeRandomCorpus(gen, 50);
    const CorrelationStats stats = BuildStats(corpus.dataset);
    const oracle::Counts counts = oracle::Recount(corpus.dataset);
    const auto all = DetectAll(corpus.dataset, corpus.sensitive, stats);
    std::size_t max_len = 1;
    for (const auto& [t, regions] : all) {
      for (const auto& r : regions) max_len = std::max(max_len, r.length());
    }
    const PatternIndex index = PatternIndex::Build(corpus.dataset, max_len);
    for (const auto& [t, regions] : all) {
      const auto& sensitive = corpus.sensitive.at(corpus.dataset.trajectories[t].user_id);
      for (const SensitiveRegion& r : regions) {
        for (double speed : {0.5, 5.0, 30.0}) {
          const CandidateSet cs = CandidatesFor(r, index, stats, sensitive, speed);
          const auto expected =
              oracle::Candidates(corpus.dataset, r, sensitive, counts, 0.5, speed);
          ASSERT_EQ(cs.size(), expected.size()) << trial << " " << r.Id();
          for (std::size_t i = 0; i < cs.size(); ++i) {
            EXPECT_EQ(cs.candidates[i].sequence, expected[i].first);
            EXPECT_EQ(cs.candidates[i].count, expected[i].second);
            EXPECT_NE(cs.candidates[i].sequence, r.sequence);
            EXPECT_LE(cs.candidates[i].sequence.size(), r.length());
          }
        }
      }
    }
  }
}

TEST(CandidatesForTest, LargerSpeedNeverRemovesCandidates) {
  std::mt19937_64 gen(606);
  for (int trial = 0; trial < 100; ++trial) {
    const auto corpus = oracle::MakeRandomCorpus(gen, 50);
    const CorrelationStats stats = BuildStats(corpus.dataset);
    const auto all = DetectAll(corpus.dataset, corpus.sensitive, stats);
    const PatternIndex index = PatternIndex::Build(corpus.dataset, 4);
    for (const auto& [t, regions] : all) {
      const auto& sensitive = corpus.sensitive.at(corpus.dataset.trajectories[t].user_id);
      for (const SensitiveRegion& r : regions) {
        if (r.length() > 4) continue;
        std::vector<Candidate> prev;
        for (double speed : {0.0, 0.3, 1.0, 3.0, 10.0, 30.0, 1e6}) {
          const auto cur = CandidatesFor(r, index, stats, sensitive, speed).candidates;
          for (const Candidate& c : prev) {
            EXPECT_NE(std::find(cur.begin(), cur.end(), c), cur.end());
          }
          prev = cur;
        }
      }
    }
  }
}

}  // namespace
}  // namespace trajsan
