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

#include "trajsan/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "trajsan/error.h"
#include "trajsan/rng.h"

namespace trajsan {
namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kConfig, message);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe Summarize(const std::vector<double>& values) {
  MeanSe out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

nlohmann::ordered_json PointJson(const std::optional<Point>& p) {
  if (!p) return nullptr;
  return {{"location_id", p->location_id}, {"time", FormatIsoTime(p->timestamp)}};
}

}  // namespace

void RunConfig::Validate() const {
  Require(std::isfinite(epsilon) && epsilon > 0.0, "--epsilon must be positive");
  Require(std::isfinite(max_speed) && max_speed > 0.0, "--delta-speed must be positive");
  Require(session_gap > 0, "--session-gap must be positive");
  Require(guess_floor >= 0.0 && guess_floor <= 1.0, "--guess-floor must lie in [0, 1]");
}

RunParams RunConfig::Params() const {
  RunParams p;
  p.epsilon = epsilon;
  p.max_speed = max_speed;
  p.allocator = baseline ? "baseline" : std::string(AllocatorName(allocator));
  p.strategy = std::string(StrategyName(strategy));
  p.guess_floor = guess_floor;
  p.seed = seed;
  return p;
}

PreparedCorpus Prepare(Dataset dataset, SensitiveSets sensitive, double max_speed,
                       double guess_floor) {
  PreparedCorpus corpus;
  corpus.dataset = std::move(dataset);
  corpus.sensitive = std::move(sensitive);
  corpus.stats = BuildStats(corpus.dataset, guess_floor);
  const auto regions = DetectAll(corpus.dataset, corpus.sensitive, corpus.stats);

  std::size_t max_len = 1;
  for (const auto& [t, rs] : regions) {
    for (const SensitiveRegion& r : rs) max_len = std::max(max_len, r.length());
  }
  corpus.index = PatternIndex::Build(corpus.dataset, max_len);

  for (const auto& [t, rs] : regions) {
    const auto& user_sensitive = corpus.sensitive.at(corpus.dataset.trajectories[t].user_id);
    TrajectoryPlan plan;
    plan.trajectory = t;
    for (const SensitiveRegion& r : rs) {
      plan.sets.push_back(
          CandidatesFor(r, corpus.index, corpus.stats, user_sensitive, max_speed));
    }
    corpus.plans.push_back(std::move(plan));
  }
  return corpus;
}

std::vector<BudgetAllocation> AssignBudgets(std::vector<TrajectoryPlan>& plans,
                                            double epsilon, Allocator allocator) {
  std::vector<BudgetAllocation> allocations;
  allocations.reserve(plans.size());
  for (TrajectoryPlan& plan : plans) {
    std::vector<std::size_t> sizes;
    for (const CandidateSet& cs : plan.sets) {
      if (cs.size() > 0) sizes.push_back(cs.size());
    }
    BudgetAllocation a = allocator == Allocator::kBr ? AllocateBr(epsilon, sizes.size())
                                                     : AllocateRatio(epsilon, sizes);
    std::size_t next = 0;
    for (CandidateSet& cs : plan.sets) {
      cs.epsilon = cs.size() > 0 ? a.per_region[next++] : 0.0;
    }
    allocations.push_back(std::move(a));
  }
  return allocations;
}

SanitizeRun RunSanitize(const PreparedCorpus& corpus, const RunConfig& config) {
  config.Validate();
  SanitizeRun run;
  run.plans = corpus.plans;
  const std::vector<BudgetAllocation> allocations =
      AssignBudgets(run.plans, config.epsilon, config.allocator);
  run.sanitized = corpus.dataset;

  for (std::size_t i = 0; i < run.plans.size(); ++i) {
    const TrajectoryPlan& plan = run.plans[i];
    const Trajectory& original = corpus.dataset.trajectories[plan.trajectory];
    Trajectory& target = run.sanitized.trajectories[plan.trajectory];
    if (config.baseline) {
      std::vector<SensitiveRegion> regions;
      for (const CandidateSet& cs : plan.sets) {
        regions.push_back(cs.region);
        ReplacementOutcome o;
        o.trajectory = cs.region.trajectory;
        o.region_start = cs.region.start;
        o.mode = ReplacementMode::kSuppressedFallback;
        o.chosen = {std::string(kSuppressedLocation)};
        o.strategy = config.strategy;
        run.outcomes.push_back(std::move(o));
      }
      target = BaselineSuppress(original, regions);
      continue;
    }
    Rng rng = Rng::ForStream(config.seed, plan.trajectory);
    SanitizedTrajectory s = Sanitize(original, plan.sets, allocations[i], config.strategy,
                                     corpus.dataset.poi_registry, rng);
    target = std::move(s.trajectory);
    for (ReplacementOutcome& o : s.outcomes) run.outcomes.push_back(std::move(o));
  }

  EvaluateOptions options;
  options.baseline = config.baseline;
  run.report = Evaluate(corpus.dataset, run.sanitized, run.plans, corpus.index,
                        config.strategy, config.Params(), options);
  return run;
}

std::vector<SweepRow> RunSweep(const PreparedCorpus& corpus, const RunConfig& config,
                               std::span<const double> epsilons, std::size_t trials) {
  Require(trials >= 1, "--trials must be at least 1");
  std::vector<double> sorted_eps(epsilons.begin(), epsilons.end());
  std::sort(sorted_eps.begin(), sorted_eps.end());

  struct Variant {
    const char* name;
    bool baseline;
    Allocator allocator;
  };
  // Alphabetical, matching the row order contract.
  const Variant variants[] = {{"baseline", true, Allocator::kBr},
                              {"br", false, Allocator::kBr},
                              {"ratio", false, Allocator::kRatio}};

  std::vector<SweepRow> rows;
  for (double eps : sorted_eps) {
    for (const Variant& v : variants) {
      std::vector<double> dkls;
      std::vector<double> sims;
      for (std::size_t t = 0; t < trials; ++t) {
        RunConfig c = config;
        c.epsilon = eps;
        c.baseline = v.baseline;
        c.allocator = v.allocator;
        c.seed = config.seed + t;
        const SanitizeRun run = RunSanitize(corpus, c);
        dkls.push_back(run.report.total_dkl);
        sims.push_back(run.report.trajsim.mean);
      }
      const MeanSe sim = Summarize(sims);
      rows.push_back({eps, v.name, Summarize(dkls).mean, sim.mean, sim.se, trials});
    }
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "epsilon,allocator,mean_total_dkl,mean_trajsim,trajsim_stderr,trials\n";
  for (const SweepRow& r : rows) {
    out << FormatDouble(r.epsilon) << ',' << r.allocator << ',' << FormatDouble(r.mean_total_dkl)
        << ',' << FormatDouble(r.mean_trajsim) << ',' << FormatDouble(r.trajsim_stderr) << ','
        << r.trials << '\n';
  }
}

void WriteRegionAuditJson(std::ostream& out, const PreparedCorpus& corpus,
                          const SanitizeRun& run) {
  auto regions = nlohmann::ordered_json::array();
  std::size_t next_outcome = 0;
  for (const TrajectoryPlan& plan : run.plans) {
    const Trajectory& t = corpus.dataset.trajectories[plan.trajectory];
    for (const CandidateSet& cs : plan.sets) {
      const SensitiveRegion& r = cs.region;
      nlohmann::ordered_json j;
      j["id"] = r.Id();
      j["user_id"] = t.user_id;
      j["trajectory"] = plan.trajectory;
      j["trajectory_index"] = t.index;
      j["span"] = {r.start, r.end};
      j["sequence"] = r.sequence;
      j["parent"] = PointJson(r.parent);
      j["child"] = PointJson(r.child);
      j["reasons"] = {{"sensitive", r.sensitive_indices},
                      {"strong_prev", r.strong_prev_indices},
                      {"strong_next", r.strong_next_indices}};
      auto candidates = nlohmann::ordered_json::array();
      for (const Candidate& c : cs.candidates) {
        candidates.push_back({{"sequence", c.sequence}, {"count", c.count}});
      }
      j["K"] = cs.size();
      j["candidates"] = std::move(candidates);
      j["epsilon_j"] = cs.epsilon;
      if (next_outcome < run.outcomes.size()) {
        const ReplacementOutcome& o = run.outcomes[next_outcome++];
        j["mode"] = std::string(ModeName(o.mode));
        j["chosen"] = o.chosen;
        j["input_index"] = o.input ? nlohmann::ordered_json(*o.input) : nullptr;
      }
      regions.push_back(std::move(j));
    }
  }
  nlohmann::ordered_json doc;
  doc["regions"] = std::move(regions);
  out << doc.dump(2) << '\n';
}

void SyntheticConfig::Validate() const {
  Require(users > 0 && pois > 1 && traj_per_user > 0 && points_per_traj > 0,
          "synthetic sizes must be positive (and pois > 1)");
  Require(sensitive_fraction > 0.0 && sensitive_fraction < 1.0,
          "sensitive_fraction must lie in (0, 1)");
  Require(points_per_traj <= 24, "points_per_traj must be at most 24");
  Require(std::isfinite(skew) && skew >= 0.0, "skew must be non-negative");
}

SyntheticCorpus GenerateSynthetic(const SyntheticConfig& config) {
  config.Validate();
  Rng rng(config.seed);
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(config.pois))));
  constexpr double kBaseLat = 30.2672;
  constexpr double kBaseLon = -97.7431;
  constexpr double kSpacingDeg = 0.005;

  std::vector<LocationId> ids(config.pois);
  std::vector<LatLng> coords(config.pois);
  for (std::size_t i = 0; i < config.pois; ++i) {
    ids[i] = std::to_string(10000 + i);
    coords[i] = {kBaseLat + static_cast<double>(i / side) * kSpacingDeg,
                 kBaseLon + static_cast<double>(i % side) * kSpacingDeg};
  }

  // Successors: POIs within two grid steps, Zipf weights over a random order.
  std::vector<std::vector<std::size_t>> successors(config.pois);
  std::vector<std::vector<double>> cumulative(config.pois);
  for (std::size_t i = 0; i < config.pois; ++i) {
    const auto ri = static_cast<long>(i / side);
    const auto ci = static_cast<long>(i % side);
    for (std::size_t j = 0; j < config.pois; ++j) {
      const auto rj = static_cast<long>(j / side);
      const auto cj = static_cast<long>(j % side);
      if (j != i && std::abs(ri - rj) <= 2 && std::abs(ci - cj) <= 2) {
        successors[i].push_back(j);
      }
    }
    if (successors[i].empty()) {
      for (std::size_t j = 0; j < config.pois; ++j) {
        if (j != i) successors[i].push_back(j);
      }
    }
    auto& s = successors[i];
    for (std::size_t k = s.size(); k > 1; --k) std::swap(s[k - 1], s[rng.UniformIndex(k)]);
    double acc = 0.0;
    for (std::size_t rank = 0; rank < s.size(); ++rank) {
      acc += 1.0 / std::pow(static_cast<double>(rank + 1), config.skew);
      cumulative[i].push_back(acc);
    }
  }

  SyntheticCorpus corpus;
  constexpr int64_t kEpoch2010 = 1262304000;  // 2010-01-01T00:00:00Z
  constexpr int64_t kDay = 86400;
  for (std::size_t u = 0; u < config.users; ++u) {
    const UserId user = std::to_string(u + 1);
    std::vector<bool> visited(config.pois, false);
    std::vector<std::size_t> visit_order;
    for (std::size_t t = 0; t < config.traj_per_user; ++t) {
      int64_t ts = kEpoch2010 + static_cast<int64_t>(t) * 3 * kDay +
                   8 * 3600 + static_cast<int64_t>(rng.UniformIndex(4 * 3600));
      std::size_t poi = rng.UniformIndex(config.pois);
      for (std::size_t k = 0; k < config.points_per_traj; ++k) {
        if (k > 0) {
          const auto& cum = cumulative[poi];
          const double x = rng.Uniform01() * cum.back();
          const auto pos = static_cast<std::size_t>(
              std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
          poi = successors[poi][std::min(pos, cum.size() - 1)];
          ts += 20 * 60 + static_cast<int64_t>(rng.UniformIndex(70 * 60));
        }
        corpus.checkins.push_back({user, ts, coords[poi], ids[poi]});
        if (!visited[poi]) {
          visited[poi] = true;
          visit_order.push_back(poi);
        }
      }
    }
    const auto want = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(config.sensitive_fraction * static_cast<double>(visit_order.size()))));
    for (std::size_t k = visit_order.size(); k > 1; --k) {
      std::swap(visit_order[k - 1], visit_order[rng.UniformIndex(k)]);
    }
    for (std::size_t k = 0; k < want && k < visit_order.size(); ++k) {
      corpus.sensitive[user].insert(ids[visit_order[k]]);
    }
  }
  return corpus;
}

}  // namespace trajsan
