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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combcert/net.hpp"
#include "combcert/report.hpp"
#include "combcert/twirl.hpp"

namespace combcert {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

/// A report plus the auxiliary documents a suite persists (file name → body).
struct SuiteOutput {
  VerificationReport report;
  std::vector<std::pair<std::string, Json>> artifacts;
};

struct CombsConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t channels = 50;
  std::size_t max_dim = 4;
  std::size_t pairs = 50;
  double tol = 1e-8;            // comb certification / contraction
  double link_tol = 1e-9;       // link product vs Kraus composition
  std::size_t jobs = 1;
};

struct DimPair {
  std::size_t d1 = 1;
  std::size_t d2 = 2;
};

struct HardConfig {
  std::uint64_t seed = kDefaultSeed;
  std::vector<DimPair> comb_cells{{1, 2}, {1, 3}, {2, 4}, {2, 5}};
  std::size_t n_max = 3;
  /// Family used for the Γ checks; kExactCommutant falls back to Weingarten
  /// past the commutant cap.
  TwirlMethod method = TwirlMethod::kExactCommutant;
  std::size_t mc_samples = kDefaultMcSamples;
  std::vector<std::size_t> domination_d2{2, 3};
  std::size_t domination_d1 = 1;
  std::vector<double> epsilons{0.01, 0.05};
  std::size_t domination_n_max = 3;
  std::size_t u_samples = 20;
  double tamper_lambda = 1.0;
  std::size_t trace_trials = 30;
  std::size_t trace_max_d = 6;
  std::size_t span_max_d = 4;
  std::size_t span_max_n = 5;
  std::size_t quadratic_trials = 100;
  bool embed_matrices = false;
  std::size_t jobs = 1;
};

struct NetCell {
  std::size_t d1 = 4, d2 = 3, r = 3;
  NetMode mode = NetMode::kAuto;
};

struct NetConfig {
  std::uint64_t seed = kDefaultSeed;
  std::vector<NetCell> cells{{4, 3, 3, NetMode::kAuto},
                             {6, 3, 4, NetMode::kAuto},
                             {2, 4, 2, NetMode::kAuto}};
  double epsilon = 0.005;
  std::size_t moment_samples = 10000;
  std::size_t lipschitz_trials = 500;
  std::size_t separation_pairs = 100;
  std::size_t budget = 200;
  bool embed_matrices = false;
  std::size_t jobs = 1;
};

/// Reads the "combs" / "hard" / "net" sections of a run configuration; any
/// field may be omitted. Throws Error(kParse) or Error(kInvalidArgument) on
/// malformed input, and kRegimeViolation for cells whose explicit mode is
/// inadmissible.
CombsConfig combs_config_from_json(const Json& j);
HardConfig hard_config_from_json(const Json& j);
NetConfig net_config_from_json(const Json& j);

Json to_json(const CombsConfig& c);
Json to_json(const HardConfig& c);
Json to_json(const NetConfig& c);

SuiteOutput run_combs_suite(const CombsConfig& c);
SuiteOutput run_hard_suite(const HardConfig& c);
SuiteOutput run_net_suite(const NetConfig& c);

}  // namespace combcert
