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
#include <string>
#include <vector>

#include "combcert/labeled_operator.hpp"
#include "combcert/linalg.hpp"
#include "combcert/random.hpp"

namespace combcert {

/// CPTP map in Kraus form; every operator is d_out × d_in.
struct Channel {
  std::size_t d_in = 1;
  std::size_t d_out = 1;
  std::vector<ComplexMatrix> kraus;

  /// Throws unless shapes agree, no Kraus operator is zero and
  /// ‖Σ E†E − I‖_F ≤ 1e-9·d_in.
  void validate() const;
  double trace_preservation_residual() const;
};

struct StinespringIsometry {
  ComplexMatrix v;  // (anc_dim·d_out) × d_in, ancilla index most significant
  std::size_t anc_dim = 1;
};

inline constexpr double kRankTol = 1e-8;

Channel make_channel(std::vector<ComplexMatrix> kraus);
Channel identity_channel(std::size_t d);
Channel unitary_channel(const ComplexMatrix& u);
/// ρ ↦ tr(ρ)·I/d, as d² weighted matrix units.
Channel completely_depolarizing(std::size_t d);
/// Stinespring channel of a Haar isometry d_in → rank·d_out.
Channel random_channel(std::size_t d_in, std::size_t d_out, std::size_t rank,
                       Rng& rng);

/// Σ |E_i⟩⟩⟨⟨E_i| on spaces (out, in).
LabeledOperator choi_from_kraus(const Channel& ch, const std::string& out = "B",
                                const std::string& in = "A");
/// Orthogonal Kraus operators from the Choi spectrum. The Choi must be on
/// exactly two spaces, output first.
Channel kraus_from_choi(const LabeledOperator& choi, double rank_tol = kRankTol);

StinespringIsometry stinespring(const Channel& ch);
Channel channel_from_isometry(const ComplexMatrix& v, std::size_t anc_dim);

std::size_t kraus_rank(const Channel& ch, double rank_tol = kRankTol);
ComplexMatrix apply_channel(const Channel& ch, const ComplexMatrix& rho);

/// Sequential composition second ∘ first by multiplying Kraus operators.
Channel compose(const Channel& second, const Channel& first);

/// (1/d_in)·‖C₁ − C₂‖₁, a lower bound on the diamond distance.
double choi_distance_lb(const Channel& ch1, const Channel& ch2);

}  // namespace combcert
