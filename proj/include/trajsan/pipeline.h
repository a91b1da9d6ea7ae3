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

#ifndef TRAJSAN_PIPELINE_H_
#define TRAJSAN_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trajsan/candidate_builder.h"
#include "trajsan/correlation_stats.h"
#include "trajsan/evaluator.h"
#include "trajsan/ldp_replacer.h"
#include "trajsan/region_detector.h"
#include "trajsan/trajectory.h"

namespace trajsan {

struct RunConfig {
  double epsilon = 1.0;
  double max_speed = kDefaultMaxSpeed;
  int64_t session_gap = kDefaultSessionGap;
  Allocator allocator = Allocator::kBr;
  InputStrategy strategy = InputStrategy::kMostFrequent;
  double guess_floor = kDefaultGuessFloor;
  uint64_t seed = 0;
  bool baseline = false;

  // Throws Error(kConfig) on out-of-range fields.
  void Validate() const;
  RunParams Params() const;
};

// Everything that does not depend on the budget or the seed.
struct PreparedCorpus {
  Dataset dataset;
  SensitiveSets sensitive;
  CorrelationStats stats;
  PatternIndex index;
  std::vector<TrajectoryPlan> plans;  // sorted by trajectory, budgets unset
};

PreparedCorpus Prepare(Dataset dataset, SensitiveSets sensitive, double max_speed,
                       double guess_floor);

// Splits `epsilon` over each trajectory's replaceable regions (K >= 1) and
// writes the budgets into the candidate sets. Returns one allocation per plan.
std::vector<BudgetAllocation> AssignBudgets(std::vector<TrajectoryPlan>& plans,
                                            double epsilon, Allocator allocator);

struct SanitizeRun {
  Dataset sanitized;
  std::vector<TrajectoryPlan> plans;  // with budgets
  std::vector<ReplacementOutcome> outcomes;
  UtilityReport report;
};

// Each trajectory draws from Rng::ForStream(config.seed, trajectory index).
SanitizeRun RunSanitize(const PreparedCorpus& corpus, const RunConfig& config);

struct SweepRow {
  double epsilon = 0.0;
  std::string allocator;  // "baseline", "br" or "ratio"
  double mean_total_dkl = 0.0;
  double mean_trajsim = 0.0;
  double trajsim_stderr = 0.0;  // standard error of the per-trial means
  std::size_t trials = 0;
};

// Trial t uses seed config.seed + t. Rows sorted by (epsilon, allocator).
std::vector<SweepRow> RunSweep(const PreparedCorpus& corpus, const RunConfig& config,
                               std::span<const double> epsilons, std::size_t trials);

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows);

void WriteRegionAuditJson(std::ostream& out, const PreparedCorpus& corpus,
                          const SanitizeRun& run);

// ---------------------------------------------------------------------------
// Synthetic corpora

struct SyntheticConfig {
  std::size_t users = 200;
  std::size_t pois = 25;
  std::size_t traj_per_user = 10;
  std::size_t points_per_traj = 6;
  double sensitive_fraction = 0.1;
  double skew = 0.8;  // Zipf exponent of each POI's successor weights
  uint64_t seed = 1;

  void Validate() const;
};

struct SyntheticCorpus {
  std::vector<CheckIn> checkins;
  SensitiveSets sensitive;
};

// POIs on a square grid (~550 m spacing); users walk between nearby POIs with
// skewed transition weights, one trajectory every few days. Every user marks
// round(fraction * distinct visited POIs) of their POIs sensitive, at least one.
SyntheticCorpus GenerateSynthetic(const SyntheticConfig& config);

}  // namespace trajsan

#endif  // TRAJSAN_PIPELINE_H_
