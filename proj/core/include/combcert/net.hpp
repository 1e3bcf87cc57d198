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
#include <string_view>
#include <vector>

#include "combcert/channel.hpp"
#include "combcert/linalg.hpp"
#include "combcert/random.hpp"

namespace combcert {

enum class NetMode { kAuto, kEven, kOdd };

std::string_view to_string(NetMode m);
NetMode parse_net_mode(std::string_view s);

struct NetParams {
  std::size_t d1 = 1;
  std::size_t d2 = 2;
  std::size_t r = 1;
  double epsilon = 0.005;
  NetMode mode = NetMode::kAuto;
  std::uint64_t seed = 0;
  std::size_t budget = 200;  // block-isometry rejection attempts
};

/// Picks odd mode when d2 is odd and r(d2−1) < 2d1, even otherwise.
NetMode resolve_mode(const NetParams& p);
/// Throws kRegimeViolation when the (resolved) mode's preconditions fail.
NetMode validate(const NetParams& p);

/// Which ε-regime hypotheses hold: ε < 1e-4 (even construction) and
/// ε ≤ 1e-2 (odd construction).
struct EpsilonRegime {
  bool even_construction = false;
  bool odd_construction = false;
};
EpsilonRegime epsilon_regime(double epsilon);

/// Subspace dimensions of the odd construction.
struct OddDims {
  std::size_t a = 0;        // r(d2−1)/2
  std::size_t a_prime = 0;  // η
  std::size_t b0 = 0;
  std::size_t b1 = 0;
  std::size_t b_prime = 1;
  std::size_t b0_prime = 0;  // ⌊r/2⌋
  std::size_t b1_prime = 0;  // r − ⌊r/2⌋
};
OddDims odd_dims(std::size_t d1, std::size_t d2, std::size_t r);

/// V̂₀ = Σ_i |i⟩_anc ⊗ K_i and the fixed Δ (Δ′) pieces. Matrices act into
/// anc ⊗ B with row index anc·d2 + b.
struct BlockIsometry {
  NetMode mode = NetMode::kEven;
  std::size_t d1 = 1, d2 = 2, r = 1;
  std::size_t attempts = 0;
  ComplexMatrix v0hat;            // (r·d2) × d1
  std::vector<ComplexMatrix> kraus;  // K_i (K_i′ in odd mode), d2 × d1
  ComplexMatrix gram;             // tr(K_i†K_j)
  double gram_bound = 0.0;        // 2d1/r or 3d1/r
  std::vector<std::size_t> twirl_rows;  // rows of anc⊗B on which U acts
  ComplexMatrix delta_local;      // twirl_dim × d1
  ComplexMatrix delta_prime;      // (r·d2) × d1, zero in even mode
  std::optional<OddDims> dims;

  std::size_t twirl_dim() const { return twirl_rows.size(); }
  /// max over (i,j) of |G_ij| − bound·1_{i=j}; ≤ 1e-9 when the bound holds.
  double gram_excess() const;
};

BlockIsometry build_block_isometry(const NetParams& p, Rng& rng);

/// U·Δ scattered into anc ⊗ B (no Δ′).
ComplexMatrix rotated_delta(const BlockIsometry& b, const ComplexMatrix& u);

struct NetIsometry {
  ComplexMatrix v;          // (r·out_dim) × d1, ancilla most significant
  std::size_t anc_dim = 1;
  std::size_t out_dim = 1;  // 2·d2 (even) or d2 (odd)
  Channel channel;
  double isometry_residual = 0.0;
  double orthogonality_residual = 0.0;  // V₀-part vs Δ-part images
  std::size_t kraus_rank = 0;
};

NetIsometry build_net_isometry(const NetParams& p, const ComplexMatrix& u,
                               const BlockIsometry& blocks);

/// (1/d1)·tr_anc(|V̂₀⟩⟩(⟨⟨UxΔ| − ⟨⟨UyΔ|)) on B ⊗ A, via the partial trace.
ComplexMatrix f_operator(const BlockIsometry& b, const ComplexMatrix& ux,
                         const ComplexMatrix& uy);
/// Same operator from (1/d1) Σ_i |K_i′⟩⟩(⟨⟨K_{x,i}| − ⟨⟨K_{y,i}|).
ComplexMatrix f_operator_blockwise(const BlockIsometry& b,
                                   const ComplexMatrix& ux,
                                   const ComplexMatrix& uy);

struct MomentReport {
  std::size_t samples = 0;
  double mean2 = 0.0, stderr2 = 0.0, expected2 = 0.0;
  double mean4 = 0.0, stderr4 = 0.0, bound4 = 0.0;
  bool pass2 = false;
  bool pass4 = false;
};

MomentReport moment_audit(const BlockIsometry& b, std::size_t samples,
                          std::uint64_t seed, std::size_t jobs = 1);

struct LipschitzReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double constant = 0.0;   // √(2/d1)
  double max_ratio = 0.0;  // max |Δf| / dist
  bool pass() const { return trials > 0 && violations == 0; }
};

LipschitzReport lipschitz_audit(const BlockIsometry& b, std::size_t trials,
                                std::uint64_t seed, std::size_t jobs = 1);

struct SeparationReport {
  std::size_t pairs = 0;
  double min_choi = 0.0;          // min (1/d1)‖C₁ − C₂‖₁
  double min_f = 0.0;             // min ‖F(U₁,U₂)‖₁
  double min_intermediate = 0.0;  // min 2ε√(1−ε²)·f − 2ε²
  double choi_threshold = 0.0;    // 0.07ε
  double f_threshold = 0.05;
  std::size_t chain_violations = 0;  // pairs with distance < intermediate
  std::size_t max_kraus_rank = 0;
  double max_isometry_residual = 0.0;
  double max_orthogonality_residual = 0.0;
  double max_delta_trace_residual = 0.0;  // |‖tr_anc|Δ_U⟩⟩⟨⟨Δ_U|‖₁ − d1|
  double max_cross_residual = 0.0;        // |‖X+X†‖₁ − 2‖X‖₁|
  bool outputs_ok = true;
};

SeparationReport separation_audit(const NetParams& p, const BlockIsometry& b,
                                  std::size_t pairs, std::uint64_t seed,
                                  std::size_t jobs = 1);

}  // namespace combcert
