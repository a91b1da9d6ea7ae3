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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trajsan/candidate_builder.h"
#include "trajsan/correlation_stats.h"
#include "trajsan/error.h"
#include "trajsan/evaluator.h"
#include "trajsan/ldp_replacer.h"
#include "trajsan/pipeline.h"
#include "trajsan/region_detector.h"
#include "trajsan/rng.h"
#include "trajsan/trajectory.h"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace trajsan;

namespace {

py::tuple ParseCheckinsText(const std::string& text, bool strict) {
  std::istringstream in(text);
  ParseResult r = ParseCheckins(in, strict);
  py::list diags;
  for (const LineDiagnostic& d : r.diagnostics) diags.append(py::make_tuple(d.line, d.reason));
  return py::make_tuple(r.checkins, diags);
}

std::string TrajectoriesText(const Dataset& d) {
  std::ostringstream out;
  WriteTrajectories(out, d);
  return out.str();
}

std::string ReportJson(const UtilityReport& r) {
  std::ostringstream out;
  WriteReportJson(out, r);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "trajsan: trajectory sanitization under local differential privacy";

  py::register_exception<Error>(m, "TrajsanError", PyExc_ValueError);

  // Trajectory core -----------------------------------------------------------
  py::class_<LatLng>(m, "LatLng")
      .def(py::init<double, double>(), py::arg("lat"), py::arg("lon"))
      .def_readwrite("lat", &LatLng::lat)
      .def_readwrite("lon", &LatLng::lon);

  py::class_<CheckIn>(m, "CheckIn")
      .def(py::init([](UserId u, int64_t ts, double lat, double lon, LocationId loc) {
             return CheckIn{std::move(u), ts, {lat, lon}, std::move(loc)};
           }),
           py::arg("user_id"), py::arg("timestamp"), py::arg("lat"), py::arg("lon"),
           py::arg("location_id"))
      .def_readonly("user_id", &CheckIn::user_id)
      .def_readonly("timestamp", &CheckIn::timestamp)
      .def_property_readonly("lat", [](const CheckIn& c) { return c.coords.lat; })
      .def_property_readonly("lon", [](const CheckIn& c) { return c.coords.lon; })
      .def_readonly("location_id", &CheckIn::location_id)
      .def("__eq__", [](const CheckIn& a, const CheckIn& b) { return a == b; })
      .def("__repr__", [](const CheckIn& c) { return "CheckIn(" + FormatCheckin(c) + ")"; });

  py::class_<Point>(m, "Point")
      .def(py::init([](LocationId loc, int64_t ts, double lat, double lon) {
             return Point{std::move(loc), ts, {lat, lon}};
           }),
           py::arg("location_id"), py::arg("timestamp"), py::arg("lat"), py::arg("lon"))
      .def_readonly("location_id", &Point::location_id)
      .def_readonly("timestamp", &Point::timestamp)
      .def_property_readonly("lat", [](const Point& p) { return p.coords.lat; })
      .def_property_readonly("lon", [](const Point& p) { return p.coords.lon; })
      .def("is_suppressed", &Point::IsSuppressed);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init([](UserId u, std::vector<Point> pts) {
             return Trajectory{std::move(u), 0, std::move(pts)};
           }),
           py::arg("user_id"), py::arg("points"))
      .def_readonly("user_id", &Trajectory::user_id)
      .def_readonly("index", &Trajectory::index)
      .def_readonly("points", &Trajectory::points)
      .def("locations", &Trajectory::Locations)
      .def("__len__", [](const Trajectory& t) { return t.points.size(); });

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("trajectories", &Dataset::trajectories)
      .def_readonly("user_count", &Dataset::user_count)
      .def("to_tsv", &TrajectoriesText);

  m.def("parse_checkins", &ParseCheckinsText, py::arg("text"), py::arg("strict") = false,
        "Parse check-in TSV text; returns (checkins, [(line, reason), ...]).");
  m.def("segment_trajectories", &SegmentTrajectories, py::arg("checkins"),
        py::arg("session_gap") = kDefaultSessionGap);
  m.def("haversine",
        [](std::pair<double, double> a, std::pair<double, double> b) {
          return Haversine({a.first, a.second}, {b.first, b.second});
        },
        py::arg("a"), py::arg("b"), "Great-circle distance in meters between (lat, lon) pairs.");
  m.def("reachable", &Reachable, py::arg("a"), py::arg("b"),
        py::arg("max_speed") = kDefaultMaxSpeed);
  m.def("parse_iso_time", &ParseIsoTime);
  m.def("format_iso_time", &FormatIsoTime);

  // Correlation statistics ----------------------------------------------------
  py::class_<CorrelationStats>(m, "CorrelationStats")
      .def_readonly("user_count", &CorrelationStats::user_count)
      .def_readonly("guess_floor", &CorrelationStats::guess_floor)
      .def("users_at", &CorrelationStats::UsersAt)
      .def("unigram", &CorrelationStats::Unigram)
      .def("bigram", &CorrelationStats::Bigram);
  m.def("build_stats", &BuildStats, py::arg("dataset"),
        py::arg("guess_floor") = kDefaultGuessFloor);
  m.def("guess_prob", &GuessProb);
  m.def("cond_prob_prev", &CondProbPrev);
  m.def("cond_prob_next", &CondProbNext);
  m.def("is_strong_prev", &IsStrongPrev);
  m.def("is_strong_next", &IsStrongNext);

  // Regions and candidates ----------------------------------------------------
  py::class_<SensitiveRegion>(m, "SensitiveRegion")
      .def_readonly("trajectory", &SensitiveRegion::trajectory)
      .def_readonly("start", &SensitiveRegion::start)
      .def_readonly("end", &SensitiveRegion::end)
      .def_readonly("sequence", &SensitiveRegion::sequence)
      .def_property_readonly("parent",
                             [](const SensitiveRegion& r) -> std::optional<LocationId> {
                               if (r.parent) return r.parent->location_id;
                               return std::nullopt;
                             })
      .def_property_readonly("child",
                             [](const SensitiveRegion& r) -> std::optional<LocationId> {
                               if (r.child) return r.child->location_id;
                               return std::nullopt;
                             });
  m.def("detect_regions", &DetectRegions, py::arg("trajectory"), py::arg("sensitive"),
        py::arg("stats"), py::arg("trajectory_id") = 0);

  py::class_<PatternIndex>(m, "PatternIndex")
      .def_static("build", &PatternIndex::Build, py::arg("dataset"), py::arg("max_len"))
      .def("count", &PatternIndex::Count)
      .def_property_readonly("max_len", &PatternIndex::max_len);

  py::class_<CandidateSet>(m, "CandidateSet")
      .def_readonly("region", &CandidateSet::region)
      .def_property_readonly("candidates",
                             [](const CandidateSet& cs) {
                               py::list out;
                               for (const Candidate& c : cs.candidates) {
                                 out.append(py::make_tuple(c.sequence, c.count));
                               }
                               return out;
                             })
      .def("__len__", &CandidateSet::size);
  m.def("candidates_for", &CandidatesFor, py::arg("region"), py::arg("index"),
        py::arg("stats"), py::arg("sensitive"), py::arg("max_speed") = kDefaultMaxSpeed);

  // Mechanism -----------------------------------------------------------------
  py::class_<Rng>(m, "Rng")
      .def(py::init<uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::Uniform01);

  py::class_<KriDistribution>(m, "KriDistribution")
      .def_readonly("k", &KriDistribution::k)
      .def_readonly("epsilon", &KriDistribution::epsilon)
      .def_readonly("input", &KriDistribution::input)
      .def_readonly("probs", &KriDistribution::probs);
  m.def("kri_distribution", &MakeKriDistribution, py::arg("k"), py::arg("epsilon"),
        py::arg("input") = std::nullopt);
  m.def("kri_sample", &KriSample, py::arg("dist"), py::arg("rng"));
  m.def("allocate_br",
        [](double total, std::size_t n) { return AllocateBr(total, n).per_region; });
  m.def("allocate_ratio", [](double total, std::vector<std::size_t> sizes) {
    return AllocateRatio(total, sizes).per_region;
  });

  // Metrics -------------------------------------------------------------------
  m.def("kl_region", [](std::vector<double> q, std::vector<double> p) { return KlRegion(q, p); });
  m.def("kl_total", [](std::vector<double> v) { return KlTotal(v); });
  m.def("traj_sim", &TrajSim);

  // Pipeline ------------------------------------------------------------------
  m.def(
      "sanitize",
      [](const std::vector<CheckIn>& checkins, const SensitiveSets& sensitive, double epsilon,
         const std::string& allocator, const std::string& strategy, uint64_t seed,
         double max_speed, int64_t session_gap, double guess_floor, bool baseline) {
        RunConfig c;
        c.epsilon = epsilon;
        const auto a = ParseAllocator(allocator);
        const auto s = ParseStrategy(strategy);
        if (!a || !s) throw Error(ErrorCode::kConfig, "unknown allocator or strategy");
        c.allocator = *a;
        c.strategy = *s;
        c.seed = seed;
        c.max_speed = max_speed;
        c.session_gap = session_gap;
        c.guess_floor = guess_floor;
        c.baseline = baseline;
        c.Validate();
        const PreparedCorpus corpus =
            Prepare(SegmentTrajectories(checkins, session_gap), sensitive, max_speed, guess_floor);
        SanitizeRun run = RunSanitize(corpus, c);
        return py::make_tuple(std::move(run.sanitized), ReportJson(run.report));
      },
      py::arg("checkins"), py::arg("sensitive"), py::arg("epsilon") = 1.0,
      py::arg("allocator") = "br", py::arg("strategy") = "most-frequent", py::arg("seed") = 0,
      py::arg("max_speed") = kDefaultMaxSpeed, py::arg("session_gap") = kDefaultSessionGap,
      py::arg("guess_floor") = kDefaultGuessFloor, py::arg("baseline") = false,
      "Run the full pipeline; returns (sanitized Dataset, report JSON text).");

  m.def(
      "generate_synthetic",
      [](std::size_t users, std::size_t pois, std::size_t traj_per_user,
         std::size_t points_per_traj, double sensitive_fraction, double skew, uint64_t seed) {
        SyntheticConfig c;
        c.users = users;
        c.pois = pois;
        c.traj_per_user = traj_per_user;
        c.points_per_traj = points_per_traj;
        c.sensitive_fraction = sensitive_fraction;
        c.skew = skew;
        c.seed = seed;
        SyntheticCorpus corpus = GenerateSynthetic(c);
        return py::make_tuple(std::move(corpus.checkins), std::move(corpus.sensitive));
      },
      py::arg("users") = 200, py::arg("pois") = 25, py::arg("traj_per_user") = 10,
      py::arg("points_per_traj") = 6, py::arg("sensitive_fraction") = 0.1,
      py::arg("skew") = 0.8, py::arg("seed") = 1);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
