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
#include <string>

#include <nlohmann/json.hpp>

#include "combcert/channel.hpp"
#include "combcert/comb.hpp"
#include "combcert/hard_instance.hpp"
#include "combcert/labeled_operator.hpp"
#include "combcert/linalg.hpp"

namespace combcert {

using Json = nlohmann::ordered_json;

/// {"rows":n,"cols":m,"re":[...],"im":[...]}, row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Matrix JSON plus "spaces":[{"label":..,"dim":..}].
Json to_json(const LabeledOperator& x);
LabeledOperator labeled_from_json(const Json& j);

/// {"d_in":..,"d_out":..,"kraus":[...]}.
Json to_json(const Channel& ch);
Channel channel_from_json(const Json& j);

/// LabeledOperator form plus "space_sequence" and "certificate".
Json to_json(const Comb& c);

/// FNV-1a 64 over (rows, cols, re/im doubles in row-major order).
std::uint64_t fnv1a64(const ComplexMatrix& m);
std::string matrix_hash(const ComplexMatrix& m);

/// {"hash":..,"rows":..,"cols":..}, plus the entries when `embed` is set.
Json matrix_ref(const ComplexMatrix& m, bool embed);

/// Parameters and every realized matrix, inline.
Json to_json(const HardInstanceSpec& spec);

/// Reads a JSON document; throws Error(kParse) on I/O or syntax failures.
Json read_json_file(const std::string& path);
/// Writes with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace combcert
