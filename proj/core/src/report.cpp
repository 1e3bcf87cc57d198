// Copyright 2026 The combcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "combcert/report.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <map>

#include "combcert/channel.hpp"
#include "combcert/comb.hpp"
#include "combcert/domination.hpp"
#include "combcert/error.hpp"

#ifndef COMBCERT_VERSION
#define COMBCERT_VERSION "0.0.0"
#endif

namespace combcert {

std::string artifact_version() { return COMBCERT_VERSION; }

Json tolerance_table() {
  return Json{
      {"exact_identity_rel", 1e-9},
      {"psd_floor_rel", kPsdTol},
      {"comb_certify", kCombTol},
      {"gamma_comb", 1e-8},
      {"twirled_comb", 1e-7},
      {"gamma_recursion", 1e-9},
      {"link_vs_kraus", 1e-9},
      {"contraction", 1e-8},
      {"choi_rank_rel", kRankTol},
      {"twirl_invariance_rel", 1e-8},
      {"support_orthogonality_rel", 1e-8},
      {"projector_idempotence", 1e-10},
      {"trace_bound_rel", 1e-6},
      {"exact_vs_weingarten", 1e-8},
      {"exact_vs_mc_sigmas", 5.0},
      {"domination_psd_rel", 1e-8},
      {"fact_log_space", 1e-12},
      {"isometry", 1e-10},
      {"gram_slack", 1e-9},
      {"image_orthogonality", 1e-10},
      {"f_two_ways", 1e-10},
      {"trace_identity", 1e-8},
      {"moment_sigmas", 4.0},
      {"lipschitz_slack", 1e-8},
  };
}

CheckOutcome CheckOutcome::at_most(double measured, double threshold) {
  CheckOutcome o;
  o.measured = measured;
  o.threshold = threshold;
  o.pass = measured <= threshold;
  o.residual = measured;
  return o;
}

CheckOutcome CheckOutcome::at_least(double measured, double threshold) {
  CheckOutcome o;
  o.measured = measured;
  o.threshold = threshold;
  o.pass = measured >= threshold;
  o.residual = threshold - measured;
  return o;
}

VerificationReport::VerificationReport(std::string suite, Json params)
    : suite_(std::move(suite)), params_(std::move(params)) {}

void VerificationReport::add(CheckRecord r) { records_.push_back(std::move(r)); }

void VerificationReport::run(const std::string& id, const std::string& anchor,
                             std::uint64_t seed,
                             const std::function<CheckOutcome()>& fn) {
  CheckRecord r;
  r.id = id;
  r.anchor = anchor;
  r.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    CheckOutcome o = fn();
    r.measured = std::move(o.measured);
    r.threshold = std::move(o.threshold);
    // NaN never passes.
    r.pass = o.pass && !std::isnan(o.residual);
    r.residual = o.residual;
    r.note = std::move(o.note);
  } catch (const std::exception& e) {
    r.pass = false;
    r.residual = NAN;
    r.note = std::string("error: ") + e.what();
  }
  r.wall_time_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  records_.push_back(std::move(r));
}

void VerificationReport::skip(const std::string& id, const std::string& anchor,
                              std::uint64_t seed, const std::string& reason) {
  CheckRecord r;
  r.id = id;
  r.anchor = anchor;
  r.seed = seed;
  r.pass = true;
  r.skipped = true;
  r.note = reason;
  records_.push_back(std::move(r));
}

void VerificationReport::append(const VerificationReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::size_t VerificationReport::failed() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.pass ? 0 : 1;
  return n;
}

std::size_t VerificationReport::skipped() const {
  std::size_t n = 0;
  for (const auto& r : records_) n += r.skipped ? 1 : 0;
  return n;
}

bool VerificationReport::pass(bool strict) const {
  return failed() == 0 && (!strict || skipped() == 0);
}

Json VerificationReport::to_json(bool strict) const {
  Json recs = Json::array();
  for (const auto& r : records_) {
    Json j{{"id", r.id},          {"anchor", r.anchor},
           {"measured", r.measured}, {"threshold", r.threshold},
           {"pass", r.pass},      {"residual", r.residual},
           {"seed", r.seed},      {"wall_time_s", r.wall_time_s}};
    if (r.skipped) j["skipped"] = true;
    if (!r.note.empty()) j["note"] = r.note;
    recs.push_back(std::move(j));
  }
  return Json{{"schema", 1},
              {"version", artifact_version()},
              {"suite", suite_},
              {"params", params_},
              {"tolerances", tolerance_table()},
              {"strict", strict},
              {"summary",
               {{"checks", records_.size()},
                {"failed", failed()},
                {"skipped", skipped()}}},
              {"pass", pass(strict)},
              {"records", recs}};
}

VerificationReport VerificationReport::from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", 0) != 1 || !j.contains("suite") ||
      !j.contains("records") || !j.at("records").is_array()) {
    throw Error(ErrorCode::kParse, "not a schema-1 verification report");
  }
  VerificationReport rep(j.at("suite").get<std::string>(),
                         j.value("params", Json::object()));
  for (const auto& x : j.at("records")) {
    CheckRecord r;
    r.id = x.value("id", "");
    r.anchor = x.value("anchor", "");
    r.measured = x.value("measured", Json());
    r.threshold = x.value("threshold", Json());
    r.pass = x.value("pass", false);
    r.residual = x.contains("residual") && x.at("residual").is_number()
                     ? x.at("residual").get<double>()
                     : NAN;
    r.seed = x.value("seed", std::uint64_t{0});
    r.wall_time_s = x.value("wall_time_s", 0.0);
    r.skipped = x.value("skipped", false);
    r.note = x.value("note", "");
    rep.add(std::move(r));
  }
  return rep;
}

Json strip_timing(Json j) {
  if (j.is_object()) {
    j.erase("wall_time_s");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

Json merge_reports(const std::vector<Json>& reports) {
  if (reports.empty()) throw Error(ErrorCode::kParse, "no reports to merge");
  Json suites = Json::array();
  struct Cov {
    std::vector<std::string> checks;
    std::size_t failed = 0;
  };
  std::map<std::string, Cov> cov;
  bool all = true;
  for (const auto& j : reports) {
    const VerificationReport rep = VerificationReport::from_json(j);
    const bool ok = j.value("pass", rep.pass());
    all = all && ok;
    suites.push_back({{"suite", rep.suite()},
                      {"pass", ok},
                      {"checks", rep.records().size()},
                      {"failed", rep.failed()},
                      {"skipped", rep.skipped()}});
    for (const auto& r : rep.records()) {
      Cov& c = cov[r.anchor];
      c.checks.push_back(rep.suite() + "/" + r.id);
      c.failed += r.pass ? 0 : 1;
    }
  }
  Json coverage = Json::array();
  for (const auto& [anchor, c] : cov) {
    coverage.push_back({{"anchor", anchor},
                        {"checks", c.checks.size()},
                        {"failed", c.failed},
                        {"ids", c.checks}});
  }
  return Json{{"schema", 1},
              {"version", artifact_version()},
              {"suite", "merged"},
              {"pass", all},
              {"suites", suites},
              {"coverage", coverage}};
}

}  // namespace combcert
