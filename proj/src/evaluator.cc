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

#include "trajsan/evaluator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "trajsan/error.h"

namespace trajsan {
namespace {

std::vector<double> Normalize(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return weights;
}

bool SameOutcomeRegion(const ReplacementOutcome& o, const SensitiveRegion& r) {
  return o.trajectory == r.trajectory && o.region_start == r.start;
}

}  // namespace

std::vector<Sequence> Support(const CandidateSet& cs, bool with_suppressed) {
  std::vector<Sequence> support;
  support.reserve(cs.size() + 2);
  for (const Candidate& c : cs.candidates) support.push_back(c.sequence);
  support.push_back(cs.region.sequence);
  if (with_suppressed) support.push_back({std::string(kSuppressedLocation)});
  return support;
}

std::vector<double> OriginalDistribution(const CandidateSet& cs, const PatternIndex& index,
                                         bool with_suppressed) {
  std::optional<LocationId> parent;
  std::optional<LocationId> child;
  if (cs.region.parent) parent = cs.region.parent->location_id;
  if (cs.region.child) child = cs.region.child->location_id;

  std::vector<double> weights;
  weights.reserve(cs.size() + 2);
  for (const Candidate& c : cs.candidates) {
    weights.push_back(static_cast<double>(index.Count(parent, child, c.sequence)) + 1.0);
  }
  weights.push_back(static_cast<double>(index.Count(parent, child, cs.region.sequence)) + 1.0);
  if (with_suppressed) weights.push_back(1.0);
  return Normalize(std::move(weights));
}

std::vector<double> ExpectedOutputDistribution(const CandidateSet& cs, double epsilon,
                                               InputStrategy strategy) {
  const std::size_t k = cs.size();
  if (k == 0) return {0.0, 1.0};

  std::vector<double> q(k + 1, 0.0);
  switch (strategy) {
    case InputStrategy::kOriginalRegion: {
      const KriDistribution d = MakeKriDistribution(k, epsilon, std::nullopt);
      std::copy(d.probs.begin(), d.probs.end(), q.begin());
      break;
    }
    case InputStrategy::kMostFrequent: {
      Rng unused(0);
      const KriDistribution d =
          MakeKriDistribution(k, epsilon, SelectInput(cs, strategy, unused));
      std::copy(d.probs.begin(), d.probs.end(), q.begin());
      break;
    }
    case InputStrategy::kUniformRandom: {
      for (std::size_t input = 0; input < k; ++input) {
        const KriDistribution d = MakeKriDistribution(k, epsilon, input);
        for (std::size_t i = 0; i < k; ++i) q[i] += d.probs[i] / static_cast<double>(k);
      }
      break;
    }
  }
  return q;
}

std::vector<double> EmpiricalOutputDistribution(std::span<const ReplacementOutcome> outcomes,
                                                std::span<const Sequence> support) {
  std::vector<double> freq(support.size(), 0.0);
  if (outcomes.empty()) return freq;
  for (const ReplacementOutcome& o : outcomes) {
    const auto it = std::find(support.begin(), support.end(), o.chosen);
    if (it == support.end()) {
      throw Error(ErrorCode::kMismatch, "outcome outside the region's support");
    }
    freq[static_cast<std::size_t>(it - support.begin())] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(outcomes.size());
  return freq;
}

double KlRegion(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) {
    throw Error(ErrorCode::kMismatch, "KL divergence over mismatched supports");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] <= 0.0) {
      throw Error(ErrorCode::kConfig, "KL divergence undefined: P has no mass where Q does");
    }
    sum += q[i] * std::log(q[i] / p[i]);
  }
  return std::max(sum, 0.0);
}

double KlTotal(std::span<const double> per_region) {
  double total = 0.0;
  for (double v : per_region) total += v;
  return total;
}

double TrajSim(const Trajectory& a, const Trajectory& b) {
  if (a.points.empty() || b.points.empty()) {
    throw Error(ErrorCode::kConfig, "trajectory similarity of an empty trajectory");
  }
  const std::size_t n = std::min(a.points.size(), b.points.size());
  double min_diff = std::numeric_limits<double>::infinity();
  double max_diff = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.points[i].IsSuppressed() || b.points[i].IsSuppressed()) continue;
    const double d = Haversine(a.points[i].coords, b.points[i].coords);
    min_diff = std::min(min_diff, d);
    max_diff = std::max(max_diff, d);
    any = true;
  }
  if (!any) return 0.0;
  if (max_diff == 0.0) return 1.0;
  return (max_diff - min_diff) / max_diff;
}

UtilityReport Evaluate(const Dataset& original, const Dataset& sanitized,
                       std::span<const TrajectoryPlan> plans, const PatternIndex& index,
                       InputStrategy strategy, const RunParams& params,
                       const EvaluateOptions& options) {
  if (original.trajectories.size() != sanitized.trajectories.size()) {
    throw Error(ErrorCode::kMismatch, "original and sanitized trajectory counts differ");
  }
  for (std::size_t t = 0; t < original.trajectories.size(); ++t) {
    const Trajectory& a = original.trajectories[t];
    const Trajectory& b = sanitized.trajectories[t];
    if (a.user_id != b.user_id || a.index != b.index) {
      throw Error(ErrorCode::kMismatch, "trajectory " + std::to_string(t) +
                                            " differs in identity between datasets");
    }
  }

  UtilityReport report;
  report.params = params;
  std::vector<const TrajectoryPlan*> ordered;
  for (const TrajectoryPlan& plan : plans) ordered.push_back(&plan);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TrajectoryPlan* a, const TrajectoryPlan* b) {
                     return a->trajectory < b->trajectory;
                   });

  std::vector<double> dkls;
  std::vector<double> sims;
  for (const TrajectoryPlan* plan : ordered) {
    if (plan->trajectory >= original.trajectories.size()) {
      throw Error(ErrorCode::kMismatch, "plan refers to a missing trajectory");
    }
    for (const CandidateSet& cs : plan->sets) {
      RegionReport r;
      r.id = cs.region.Id();
      r.trajectory = cs.region.trajectory;
      r.start = cs.region.start;
      r.end = cs.region.end;
      r.k = cs.size();
      const bool suppressed = options.baseline || cs.size() == 0;
      r.mode = suppressed ? ReplacementMode::kSuppressedFallback : ReplacementMode::kReplaced;
      r.deterministic = !suppressed && cs.size() == 1;

      std::vector<double> p;
      std::vector<double> q;
      if (suppressed) {
        p = OriginalDistribution(cs, index, /*with_suppressed=*/true);
        q.assign(p.size(), 0.0);
        q.back() = 1.0;
      } else {
        r.epsilon = cs.epsilon;
        p = OriginalDistribution(cs, index);
        if (options.q_mode == QMode::kAnalytic) {
          q = ExpectedOutputDistribution(cs, cs.epsilon, strategy);
        } else {
          std::vector<ReplacementOutcome> mine;
          for (const ReplacementOutcome& o : options.outcomes) {
            if (SameOutcomeRegion(o, cs.region)) mine.push_back(o);
          }
          if (mine.empty()) {
            throw Error(ErrorCode::kMismatch, "no outcomes recorded for region " + r.id);
          }
          const std::vector<Sequence> support = Support(cs, false);
          q = EmpiricalOutputDistribution(mine, support);
        }
      }
      r.dkl = KlRegion(q, p);
      dkls.push_back(r.dkl);
      if (suppressed) {
        ++report.suppressed;
        report.fallback_dkl += r.dkl;
      } else {
        ++report.replaced;
      }
      report.regions.push_back(std::move(r));
    }
    if (!plan->sets.empty()) {
      sims.push_back(TrajSim(original.trajectories[plan->trajectory],
                             sanitized.trajectories[plan->trajectory]));
    }
  }
  report.total_dkl = KlTotal(dkls);
  report.trajsim.count = sims.size();
  if (!sims.empty()) {
    double sum = 0.0;
    report.trajsim.min = sims.front();
    report.trajsim.max = sims.front();
    for (double s : sims) {
      sum += s;
      report.trajsim.min = std::min(report.trajsim.min, s);
      report.trajsim.max = std::max(report.trajsim.max, s);
    }
    report.trajsim.mean = sum / static_cast<double>(sims.size());
  }
  return report;
}

void WriteReportJson(std::ostream& out, const UtilityReport& report) {
  nlohmann::ordered_json j;
  j["params"] = {{"epsilon", report.params.epsilon},
                 {"delta_speed", report.params.max_speed},
                 {"allocator", report.params.allocator},
                 {"strategy", report.params.strategy},
                 {"guess_floor", report.params.guess_floor}};
  auto regions = nlohmann::ordered_json::array();
  for (const RegionReport& r : report.regions) {
    regions.push_back({{"id", r.id},
                       {"trajectory", r.trajectory},
                       {"start", r.start},
                       {"end", r.end},
                       {"K", r.k},
                       {"epsilon_j", r.epsilon},
                       {"dkl", r.dkl},
                       {"mode", std::string(ModeName(r.mode))},
                       {"deterministic", r.deterministic}});
  }
  j["regions"] = std::move(regions);
  j["total_dkl"] = report.total_dkl;
  j["fallback_dkl"] = report.fallback_dkl;
  j["trajsim"] = {{"mean", report.trajsim.mean},
                  {"min", report.trajsim.min},
                  {"max", report.trajsim.max},
                  {"count", report.trajsim.count}};
  j["counts"] = {{"replaced", report.replaced}, {"suppressed_fallback", report.suppressed}};
  j["seed"] = report.params.seed;
  out << j.dump(2) << '\n';
}

}  // namespace trajsan
