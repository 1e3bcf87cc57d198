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

#include "combcert/hard_instance.hpp"
#include "combcert/labeled_operator.hpp"
#include "combcert/random.hpp"

namespace combcert {

enum class TwirlMethod { kExactCommutant, kWeingarten, kMonteCarlo };

std::string_view to_string(TwirlMethod m);
/// Accepts "exact", "weingarten", "mc" (and the long spellings).
TwirlMethod parse_twirl_method(std::string_view s);

/// Largest dimension of the acted-on space for which the commutant is
/// computed by a dense nullspace (the linear problem has side cap²).
inline constexpr std::size_t kCommutantCap = 48;
/// Largest i for which S_i is enumerated.
inline constexpr std::size_t kWeingartenCap = 4;
inline constexpr std::size_t kDefaultMcSamples = 100000;

/// Hilbert–Schmidt projection onto {X : gX = Xg for all generators}. Inputs to
/// apply() live on (group space) ⊗ (spectator) with the group factor first;
/// the spectator is untouched.
class CommutantProjector {
 public:
  explicit CommutantProjector(const std::vector<ComplexMatrix>& generators,
                              double tol = 1e-6);

  std::size_t group_dim() const { return dim_; }
  std::size_t commutant_dim() const {
    return static_cast<std::size_t>(basis_.cols());
  }
  /// Columns are row-major vectorizations of an orthonormal commutant basis.
  const ComplexMatrix& basis() const { return basis_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  std::size_t dim_ = 0;
  ComplexMatrix basis_;
};

/// (R(U))^{⊗n} on B1..Bn for `count` Haar-sampled U.
std::vector<ComplexMatrix> hard_action_generators(const HardInstanceSpec& spec,
                                                  std::size_t n,
                                                  std::size_t count, Rng& rng);

/// Exact twirl of an operator on hard_spaces(n) via the commutant projector.
ComplexMatrix commutant_twirl(const CommutantProjector& proj,
                              const ComplexMatrix& x, std::size_t n,
                              std::size_t d1, std::size_t d2);

CommutantProjector hard_commutant(const HardInstanceSpec& spec, std::size_t n,
                                  std::uint64_t seed);

/// Γ_i by Weingarten calculus over S_i, blockwise over subset pairs.
ComplexMatrix weingarten_twirl(std::size_t n, std::size_t i,
                               const HardInstanceSpec& spec);

/// Gram matrix G_{στ} = k^{#cycles(σ⁻¹τ)} over S_i in lexicographic order.
ComplexMatrix permutation_gram(std::size_t i, std::size_t k);
std::vector<std::vector<std::size_t>> permutations(std::size_t i);

/// Average of (R(U)⊗I)^{⊗n}|v⟩⟨v|(·)† over `samples` Haar draws, split into
/// fixed seeded chunks.
ComplexMatrix monte_carlo_twirl(const HardInstanceSpec& spec, std::size_t n,
                                const ComplexVector& v, std::size_t samples,
                                std::uint64_t seed, std::size_t jobs = 1);

struct TwirlOptions {
  TwirlMethod method = TwirlMethod::kExactCommutant;
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultMcSamples;
  std::size_t jobs = 1;
};

struct GammaFamily {
  std::size_t n = 0;
  TwirlMethod method = TwirlMethod::kExactCommutant;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  SpaceList spaces;
  std::vector<ComplexVector> gamma;  // unnormalized, ‖γ_i‖² = d1ⁿ
  std::vector<ComplexMatrix> twirled;
  double standard_error = 0.0;        // Monte Carlo only
  std::size_t commutant_dim = 0;      // exact-commutant only
};

/// Γ_0..Γ_n. Exact-commutant mode throws kCapExceeded when d2ⁿ > cap.
GammaFamily gamma_family(const HardInstanceSpec& spec, std::size_t n,
                         const TwirlOptions& opt);

ComplexMatrix gamma_twirl(std::size_t n, std::size_t i,
                          const HardInstanceSpec& spec, const TwirlOptions& opt);

/// True when the exact-commutant route fits within the cap.
bool exact_commutant_fits(std::size_t n, std::size_t d2);

}  // namespace combcert
