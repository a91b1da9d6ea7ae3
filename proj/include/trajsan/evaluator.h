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

#ifndef TRAJSAN_EVALUATOR_H_
#define TRAJSAN_EVALUATOR_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "trajsan/candidate_builder.h"
#include "trajsan/ldp_replacer.h"
#include "trajsan/trajectory.h"

namespace trajsan {

// Distributions over the support X ∪ {S} (candidates in order, then the
// original region content S). Suppressed regions append the suppression symbol
// as a last element that receives only smoothing mass under P.
struct RegionDistributions {
  std::vector<Sequence> support;
  std::vector<double> p;  // smoothed original occurrence distribution
  std::vector<double> q;  // published distribution
};

std::vector<Sequence> Support(const CandidateSet& cs, bool with_suppressed);

// P(x) ∝ count(parent -> x -> child) + 1 over Support(cs, with_suppressed).
std::vector<double> OriginalDistribution(const CandidateSet& cs, const PatternIndex& index,
                                         bool with_suppressed = false);

// Exact output law of the mechanism over Support(cs, false); S gets zero mass.
// For kUniformRandom the input choice is marginalized out. K = 0 yields the
// fallback law over Support(cs, true): all mass on the suppression symbol.
std::vector<double> ExpectedOutputDistribution(const CandidateSet& cs, double epsilon,
                                               InputStrategy strategy);

// Relative frequencies of the outcomes' chosen sequences over `support`.
// Outcomes choosing something outside the support are an error.
std::vector<double> EmpiricalOutputDistribution(std::span<const ReplacementOutcome> outcomes,
                                                std::span<const Sequence> support);

// Σ q log(q / p), natural log, 0 log 0 = 0. Throws kMismatch on size mismatch
// and kConfig when p has a zero where q does not.
double KlRegion(std::span<const double> q, std::span<const double> p);
double KlTotal(std::span<const double> per_region);

// (maxDiff - minDiff) / maxDiff over the position-aligned haversine distances
// of the common prefix. 1 when maxDiff = 0. Pairs with a suppressed point are
// skipped; if none remain the result is 0.
double TrajSim(const Trajectory& a, const Trajectory& b);

struct RunParams {
  double epsilon = 0.0;
  double max_speed = kDefaultMaxSpeed;
  std::string allocator;
  std::string strategy;
  double guess_floor = 0.5;
  uint64_t seed = 0;
};

struct RegionReport {
  std::string id;
  std::size_t trajectory = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  double dkl = 0.0;
  ReplacementMode mode = ReplacementMode::kReplaced;
  bool deterministic = false;  // K = 1: no randomness in the output
};

struct TrajSimSummary {
  double mean = 1.0;
  double min = 1.0;
  double max = 1.0;
  std::size_t count = 0;  // modified trajectories
};

struct UtilityReport {
  RunParams params;
  std::vector<RegionReport> regions;
  double total_dkl = 0.0;
  double fallback_dkl = 0.0;  // share of total_dkl from suppressed regions
  TrajSimSummary trajsim;
  std::size_t replaced = 0;
  std::size_t suppressed = 0;
};

// One trajectory's regions, each with its candidate set and budget.
struct TrajectoryPlan {
  std::size_t trajectory = 0;
  std::vector<CandidateSet> sets;
};

enum class QMode { kAnalytic, kEmpirical };

struct EvaluateOptions {
  QMode q_mode = QMode::kAnalytic;
  bool baseline = false;  // every region published as the suppression symbol
  // Required for kEmpirical: outcomes, possibly pooled over repeated runs.
  std::span<const ReplacementOutcome> outcomes;
};

// Throws kMismatch when the two datasets do not hold the same trajectories.
UtilityReport Evaluate(const Dataset& original, const Dataset& sanitized,
                       std::span<const TrajectoryPlan> plans, const PatternIndex& index,
                       InputStrategy strategy, const RunParams& params,
                       const EvaluateOptions& options = {});

void WriteReportJson(std::ostream& out, const UtilityReport& report);

}  // namespace trajsan

#endif  // TRAJSAN_EVALUATOR_H_
