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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "combcert/json_io.hpp"

namespace combcert {

std::string artifact_version();

/// Every tolerance used by the suites, keyed by check family.
Json tolerance_table();

struct CheckRecord {
  std::string id;
  std::string anchor;  // the mathematical statement the check exercises
  Json measured;
  Json threshold;
  bool pass = false;
  double residual = 0.0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  bool skipped = false;
  std::string note;
};

struct CheckOutcome {
  Json measured;
  Json threshold;
  bool pass = false;
  double residual = 0.0;
  std::string note;

  /// measured ≤ threshold, residual = measured.
  static CheckOutcome at_most(double measured, double threshold);
  /// measured ≥ threshold, residual = threshold − measured.
  static CheckOutcome at_least(double measured, double threshold);
};

class VerificationReport {
 public:
  explicit VerificationReport(std::string suite, Json params = Json::object());

  const std::string& suite() const { return suite_; }
  const std::vector<CheckRecord>& records() const { return records_; }
  Json& params() { return params_; }

  void add(CheckRecord r);
  /// Times `fn`; a thrown exception becomes a failing record.
  void run(const std::string& id, const std::string& anchor, std::uint64_t seed,
           const std::function<CheckOutcome()>& fn);
  /// Passing-but-skipped record; a failure under strict mode.
  void skip(const std::string& id, const std::string& anchor,
            std::uint64_t seed, const std::string& reason);
  void append(const VerificationReport& other);

  std::size_t failed() const;
  std::size_t skipped() const;
  bool pass(bool strict = false) const;

  Json to_json(bool strict = false) const;
  static VerificationReport from_json(const Json& j);

 private:
  std::string suite_;
  Json params_;
  std::vector<CheckRecord> records_;
};

/// Drops every "wall_time_s" field, recursively.
Json strip_timing(Json j);

/// Suite summaries plus a coverage table keyed by anchor. Throws
/// Error(kParse) for documents that are not reports.
Json merge_reports(const std::vector<Json>& reports);

}  // namespace combcert
