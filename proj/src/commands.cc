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

#include "trajsan/commands.h"

#include <fstream>
#include <sstream>

#include "trajsan/error.h"

namespace trajsan {
namespace {

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  return out;
}

void Finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

Dataset LoadDataset(const std::string& path, int64_t session_gap, bool strict) {
  std::ifstream in = OpenIn(path);
  ParseResult parsed = ParseCheckins(in, strict);
  return SegmentTrajectories(parsed.checkins, session_gap);
}

SensitiveSets LoadSensitive(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return ReadSensitiveSets(in);
}

PreparedCorpus LoadCorpus(const std::string& checkins, const std::string& sensitive,
                          const RunConfig& config, bool strict) {
  config.Validate();
  return Prepare(LoadDataset(checkins, config.session_gap, strict), LoadSensitive(sensitive),
                 config.max_speed, config.guess_floor);
}

}  // namespace

std::size_t CmdIngest(const IngestPaths& paths, int64_t session_gap, bool strict) {
  std::ifstream in = OpenIn(paths.checkins);
  ParseResult parsed = ParseCheckins(in, strict);
  const Dataset dataset = SegmentTrajectories(parsed.checkins, session_gap);
  std::ofstream out = OpenOut(paths.trajectories_out);
  WriteTrajectories(out, dataset);
  Finish(out, paths.trajectories_out);
  if (!paths.stats_out.empty()) {
    std::ofstream stats_out = OpenOut(paths.stats_out);
    WriteStatsJson(stats_out, BuildStats(dataset));
    Finish(stats_out, paths.stats_out);
  }
  return parsed.diagnostics.size();
}

UtilityReport CmdSanitize(const SanitizePaths& paths, const RunConfig& config, bool strict) {
  const PreparedCorpus corpus = LoadCorpus(paths.checkins, paths.sensitive, config, strict);
  const SanitizeRun run = RunSanitize(corpus, config);

  std::ofstream out = OpenOut(paths.sanitized_out);
  WriteTrajectories(out, run.sanitized);
  Finish(out, paths.sanitized_out);

  std::ofstream report = OpenOut(paths.report_out);
  WriteReportJson(report, run.report);
  Finish(report, paths.report_out);

  if (!paths.audit_out.empty()) {
    std::ofstream audit = OpenOut(paths.audit_out);
    WriteRegionAuditJson(audit, corpus, run);
    Finish(audit, paths.audit_out);
  }
  return run.report;
}

UtilityReport CmdEvaluate(const EvaluatePaths& paths, const RunConfig& config, bool strict) {
  const PreparedCorpus corpus = LoadCorpus(paths.checkins, paths.sensitive, config, strict);
  std::ifstream in = OpenIn(paths.sanitized);
  const Dataset sanitized = ReadTrajectories(in);

  std::vector<TrajectoryPlan> plans = corpus.plans;
  AssignBudgets(plans, config.epsilon, config.allocator);
  EvaluateOptions options;
  options.baseline = config.baseline;
  const UtilityReport report = Evaluate(corpus.dataset, sanitized, plans, corpus.index,
                                        config.strategy, config.Params(), options);
  std::ofstream out = OpenOut(paths.report_out);
  WriteReportJson(out, report);
  Finish(out, paths.report_out);
  return report;
}

std::vector<SweepRow> CmdSweep(const SweepPaths& paths, const RunConfig& config,
                               const std::vector<double>& epsilons, std::size_t trials,
                               bool strict) {
  if (epsilons.empty()) throw Error(ErrorCode::kConfig, "sweep needs at least one epsilon");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw Error(ErrorCode::kConfig, "sweep epsilons must be positive");
  }
  const PreparedCorpus corpus = LoadCorpus(paths.checkins, paths.sensitive, config, strict);
  const std::vector<SweepRow> rows = RunSweep(corpus, config, epsilons, trials);
  std::ofstream out = OpenOut(paths.csv_out);
  WriteSweepCsv(out, rows);
  Finish(out, paths.csv_out);
  return rows;
}

void CmdGenSynthetic(const SyntheticPaths& paths, const SyntheticConfig& config) {
  const SyntheticCorpus corpus = GenerateSynthetic(config);
  std::ofstream checkins = OpenOut(paths.checkins_out);
  WriteCheckins(checkins, corpus.checkins);
  Finish(checkins, paths.checkins_out);
  std::ofstream sensitive = OpenOut(paths.sensitive_out);
  WriteSensitiveSets(sensitive, corpus.sensitive);
  Finish(sensitive, paths.sensitive_out);
}

}  // namespace trajsan
