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

#ifndef TRAJSAN_COMMANDS_H_
#define TRAJSAN_COMMANDS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "trajsan/pipeline.h"

namespace trajsan {

// File-level entry points behind the trajsan CLI. All throw trajsan::Error.

struct IngestPaths {
  std::string checkins;
  std::string trajectories_out;
  std::string stats_out;  // optional
};

// Returns the number of skipped (malformed) lines.
std::size_t CmdIngest(const IngestPaths& paths, int64_t session_gap, bool strict);

struct SanitizePaths {
  std::string checkins;
  std::string sensitive;
  std::string sanitized_out;
  std::string report_out;
  std::string audit_out;  // optional
};

UtilityReport CmdSanitize(const SanitizePaths& paths, const RunConfig& config, bool strict);

struct EvaluatePaths {
  std::string checkins;
  std::string sensitive;
  std::string sanitized;  // trajectory TSV produced by sanitize
  std::string report_out;
};

// Recomputes regions, candidate sets and budgets from the inputs and scores
// the given sanitized file against them.
UtilityReport CmdEvaluate(const EvaluatePaths& paths, const RunConfig& config, bool strict);

struct SweepPaths {
  std::string checkins;
  std::string sensitive;
  std::string csv_out;
};

std::vector<SweepRow> CmdSweep(const SweepPaths& paths, const RunConfig& config,
                               const std::vector<double>& epsilons, std::size_t trials,
                               bool strict);

struct SyntheticPaths {
  std::string checkins_out;
  std::string sensitive_out;
};

void CmdGenSynthetic(const SyntheticPaths& paths, const SyntheticConfig& config);

}  // namespace trajsan

#endif  // TRAJSAN_COMMANDS_H_
