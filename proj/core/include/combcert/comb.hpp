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
#include <optional>
#include <string>
#include <vector>

#include "combcert/channel.hpp"
#include "combcert/labeled_operator.hpp"
#include "combcert/random.hpp"

namespace combcert {

inline constexpr double kCombTol = 1e-8;
inline constexpr double kPsdTol = 1e-9;

/// X ★ Y = tr_shared(X^{T_shared} Y), identity-padded. The result carries
/// X's private labels followed by Y's private labels.
LabeledOperator link_product(const LabeledOperator& x, const LabeledOperator& y);

/// Outcome of walking the recursive X^{(j)} chain. `level` names the first
/// failing level (n..1), 0 for the final scalar check, -1 for PSD failure.
struct CombCheck {
  bool ok = false;
  int level = 0;
  double residual = 0.0;      // worst identity-factor residual seen
  double min_eigenvalue = 0.0;
  std::string message;
  std::vector<LabeledOperator> chain;  // X^{(n)}, ..., X^{(1)} on success
};

struct Comb {
  LabeledOperator op;
  std::vector<std::string> sequence;  // H_0, ..., H_{2n-1}
  std::vector<LabeledOperator> certificate;

  std::size_t n() const { return sequence.size() / 2; }
};

/// Checks Σ-structure and positivity. `sequence` must name every space of X
/// exactly once and have even length.
CombCheck certify_comb(const LabeledOperator& x,
                       const std::vector<std::string>& sequence,
                       double tol = kCombTol);

/// Throws kNotPositive / kInvalidArgument when certification fails.
Comb make_comb(LabeledOperator x, std::vector<std::string> sequence,
               double tol = kCombTol);

/// Tester outcomes on the spaces A_1, B_1, ..., A_n, B_n (channel input,
/// channel output of each use).
struct Tester {
  std::vector<LabeledOperator> outcomes;
  std::vector<std::string> uses;  // A_1, B_1, ..., A_n, B_n
  std::size_t n() const { return uses.size() / 2; }
};

inline const std::string kTesterStart = "#start";
inline const std::string kTesterEnd = "#end";

struct TesterCheck {
  bool ok = false;
  std::size_t failing_outcome = 0;  // when PSD fails
  double min_eigenvalue = 0.0;
  CombCheck comb;
  std::string message;
};

TesterCheck validate_tester(const Tester& t, double tol = kCombTol);

/// p_i = T_i ★ N for an n-comb N on the tester's use spaces.
std::vector<double> success_probability(const Tester& t,
                                        const LabeledOperator& network);
/// Network = Choi^{⊗n} of one channel on (B_j, A_j).
std::vector<double> success_probability(const Tester& t, const Channel& ch);

/// Choi of ch^{⊗n} with labels a[j], b[j].
LabeledOperator choi_power(const Channel& ch, const std::vector<std::string>& a,
                           const std::vector<std::string>& b);

/// Canonical labels A1, B1, ..., An, Bn.
std::vector<std::string> use_labels(std::size_t n);

/// Causal network of Haar-isometry channels H_{2j-2}⊗M_{j-1} → H_{2j-1}⊗M_j
/// linked along memory registers of dimension mem_dim.
Comb random_comb(const SpaceList& sequence, std::size_t mem_dim, Rng& rng);

/// Prepares rho on A⊗R, measures the POVM on B⊗R. `rho` lives on
/// (a_label, "R") and each POVM element on (b_label, "R").
Tester prepare_measure_tester(const ComplexMatrix& rho_ar,
                              const std::vector<ComplexMatrix>& povm_br,
                              std::size_t d_a, std::size_t d_b, std::size_t d_r,
                              const std::string& a_label = "A1",
                              const std::string& b_label = "B1");

/// Random (n+1)-comb Y split by a random POVM: T_i = Y^{1/2} E_i Y^{1/2}.
Tester random_tester(std::size_t n, std::size_t d_a, std::size_t d_b,
                     std::size_t outcomes, Rng& rng);

/// Random POVM with `outcomes` elements on dimension d.
std::vector<ComplexMatrix> random_povm(std::size_t d, std::size_t outcomes,
                                       Rng& rng);

}  // namespace combcert
