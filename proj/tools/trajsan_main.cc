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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trajsan/commands.h"
#include "trajsan/error.h"

namespace {

struct RunFlags {
  trajsan::RunConfig config;
  std::string allocator = "br";
  std::string strategy = "most-frequent";
  bool strict = false;
};

void AddRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--epsilon", f.config.epsilon, "Total privacy budget per trajectory")
      ->capture_default_str();
  cmd->add_option("--delta-speed", f.config.max_speed, "Maximum travel speed (m/s)")
      ->capture_default_str();
  cmd->add_option("--session-gap", f.config.session_gap,
                  "Seconds of inactivity that start a new trajectory")
      ->capture_default_str();
  cmd->add_option("--allocator", f.allocator, "Budget allocation: br | ratio")
      ->check(CLI::IsMember({"br", "ratio"}))
      ->capture_default_str();
  cmd->add_option("--strategy", f.strategy,
                  "Mechanism input: original-region | most-frequent | uniform-random")
      ->check(CLI::IsMember({"original-region", "most-frequent", "uniform-random"}))
      ->capture_default_str();
  cmd->add_option("--guess-floor", f.config.guess_floor, "Floor of the attacker prior")
      ->capture_default_str();
  cmd->add_option("--seed", f.config.seed, "Master random seed")->capture_default_str();
  cmd->add_flag("--baseline", f.config.baseline, "Publish regions as suppressed points");
  cmd->add_flag("--strict", f.strict, "Abort on the first malformed input line");
}

trajsan::RunConfig Resolve(const RunFlags& f) {
  trajsan::RunConfig c = f.config;
  c.allocator = *trajsan::ParseAllocator(f.allocator);
  c.strategy = *trajsan::ParseStrategy(f.strategy);
  return c;
}

void PrintSummary(const trajsan::UtilityReport& r) {
  std::printf("regions: %zu replaced, %zu suppressed-fallback\n", r.replaced, r.suppressed);
  std::printf("total DKL: %.6f\n", r.total_dkl);
  std::printf("trajectory similarity: mean %.4f min %.4f max %.4f over %zu trajectories\n",
              r.trajsim.mean, r.trajsim.min, r.trajsim.max, r.trajsim.count);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajsan: sanitize sensitive points in check-in trajectories under local "
               "differential privacy"};
  app.require_subcommand(1);

  trajsan::IngestPaths ingest_paths;
  int64_t ingest_gap = trajsan::kDefaultSessionGap;
  bool ingest_strict = false;
  auto* ingest = app.add_subcommand("ingest", "Parse check-ins and write trajectories");
  ingest->add_option("--input", ingest_paths.checkins, "Check-in TSV")->required();
  ingest->add_option("--output", ingest_paths.trajectories_out, "Trajectory TSV")->required();
  ingest->add_option("--stats", ingest_paths.stats_out, "Optional statistics JSON dump");
  ingest->add_option("--session-gap", ingest_gap, "Session gap in seconds")
      ->capture_default_str();
  ingest->add_flag("--strict", ingest_strict, "Abort on the first malformed line");

  trajsan::SanitizePaths sanitize_paths;
  RunFlags sanitize_flags;
  auto* sanitize = app.add_subcommand("sanitize", "Run the full sanitization pipeline");
  sanitize->add_option("--input", sanitize_paths.checkins, "Check-in TSV")->required();
  sanitize->add_option("--sensitive", sanitize_paths.sensitive, "Sensitive-set TSV")
      ->required();
  sanitize->add_option("--output", sanitize_paths.sanitized_out, "Sanitized trajectory TSV")
      ->required();
  sanitize->add_option("--report", sanitize_paths.report_out, "Utility report JSON")
      ->required();
  sanitize->add_option("--audit", sanitize_paths.audit_out, "Region audit JSON");
  AddRunFlags(sanitize, sanitize_flags);

  trajsan::EvaluatePaths evaluate_paths;
  RunFlags evaluate_flags;
  auto* evaluate = app.add_subcommand("evaluate", "Score a sanitized trajectory file");
  evaluate->add_option("--input", evaluate_paths.checkins, "Original check-in TSV")
      ->required();
  evaluate->add_option("--sensitive", evaluate_paths.sensitive, "Sensitive-set TSV")
      ->required();
  evaluate->add_option("--sanitized", evaluate_paths.sanitized, "Sanitized trajectory TSV")
      ->required();
  evaluate->add_option("--report", evaluate_paths.report_out, "Utility report JSON")
      ->required();
  AddRunFlags(evaluate, evaluate_flags);

  trajsan::SweepPaths sweep_paths;
  RunFlags sweep_flags;
  std::vector<double> sweep_eps{0.1, 0.3, 0.5, 0.7};
  std::size_t trials = 20;
  auto* sweep = app.add_subcommand("sweep", "Average metrics over epsilons and allocators");
  sweep->add_option("--input", sweep_paths.checkins, "Check-in TSV")->required();
  sweep->add_option("--sensitive", sweep_paths.sensitive, "Sensitive-set TSV")->required();
  sweep->add_option("--output", sweep_paths.csv_out, "Sweep CSV")->required();
  sweep->add_option("--epsilons", sweep_eps, "Budgets to sweep")->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--trials", trials, "Seeded repetitions per setting")
      ->capture_default_str();
  AddRunFlags(sweep, sweep_flags);

  trajsan::SyntheticPaths synth_paths;
  trajsan::SyntheticConfig synth;
  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic check-in corpus");
  gen->add_option("--output", synth_paths.checkins_out, "Check-in TSV")->required();
  gen->add_option("--sensitive-output", synth_paths.sensitive_out, "Sensitive-set TSV")
      ->required();
  gen->add_option("--users", synth.users)->capture_default_str();
  gen->add_option("--pois", synth.pois)->capture_default_str();
  gen->add_option("--traj-per-user", synth.traj_per_user)->capture_default_str();
  gen->add_option("--points-per-traj", synth.points_per_traj)->capture_default_str();
  gen->add_option("--sensitive-fraction", synth.sensitive_fraction)->capture_default_str();
  gen->add_option("--skew", synth.skew, "Zipf exponent of transition weights")
      ->capture_default_str();
  gen->add_option("--seed", synth.seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const std::size_t skipped = trajsan::CmdIngest(ingest_paths, ingest_gap, ingest_strict);
      if (skipped > 0) std::fprintf(stderr, "skipped %zu malformed line(s)\n", skipped);
    } else if (*sanitize) {
      PrintSummary(trajsan::CmdSanitize(sanitize_paths, Resolve(sanitize_flags),
                                        sanitize_flags.strict));
    } else if (*evaluate) {
      PrintSummary(trajsan::CmdEvaluate(evaluate_paths, Resolve(evaluate_flags),
                                        evaluate_flags.strict));
    } else if (*sweep) {
      const auto rows = trajsan::CmdSweep(sweep_paths, Resolve(sweep_flags), sweep_eps,
                                          trials, sweep_flags.strict);
      std::printf("wrote %zu rows to %s\n", rows.size(), sweep_paths.csv_out.c_str());
    } else if (*gen) {
      trajsan::CmdGenSynthetic(synth_paths, synth);
    }
  } catch (const trajsan::Error& e) {
    std::fprintf(stderr, "%s: %s\n", trajsan::ErrorCodeName(e.code()), e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
