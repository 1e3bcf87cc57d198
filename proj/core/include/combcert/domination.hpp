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
#include <functional>
#include <optional>
#include <vector>

#include "combcert/hard_instance.hpp"
#include "combcert/random.hpp"
#include "combcert/twirl.hpp"

namespace combcert {

/// B = 2e⁴.
double schedule_constant();

struct LambdaSchedule {
  std::size_t n = 0;
  std::size_t d1 = 1;
  std::size_t d2 = 2;
  double epsilon = 0.0;
  std::vector<double> lambdas;  // λ_0..λ_n

  double sum() const;
  /// 3·d1²·d2²·exp(√(8nε²d1d2)).
  double sum_bound() const;
};

/// Largest n with n ≤ d1d2/(Bε²).
std::size_t schedule_cap(std::size_t d1, std::size_t d2, double epsilon);

/// Throws kRegimeViolation when d1d2 < 2 or n exceeds schedule_cap.
LambdaSchedule lambda_schedule(std::size_t n, std::size_t d1, std::size_t d2,
                               double epsilon);

struct DominationReport {
  double q = 0.0;                    // Σ (1/λ_i) ⟨V^n|Γ_i⁺|V^n⟩
  std::vector<double> q_terms;
  double support_residual = 0.0;     // ‖(I − ⊕P_i)|V⟩⟩^{⊗n}‖
  std::optional<double> min_eigenvalue;  // of Σλ_iΓ_i − |V⟩⟩⟨⟨V|^{⊗n}
  double min_eigenvalue_floor = 0.0; // −tol·Σλ_i
  bool support_ok = false;
  bool q_ok = false;
  bool psd_ok = true;
  bool pass() const { return support_ok && q_ok && psd_ok; }
};

/// Largest side for which the direct eigenvalue check is attempted.
inline constexpr std::size_t kDirectPsdCap = 2048;

/// Requires a family from an exact mode; throws kInvalidArgument for
/// Monte Carlo families.
DominationReport domination_check(const HardInstanceSpec& spec,
                                  const GammaFamily& family,
                                  const LambdaSchedule& schedule,
                                  double tol = 1e-8, bool direct_psd = true);

/// tr(Γ_i⁺|γ_i⟩⟨γ_i|) per i, to compare with binom(d1d2+i−2, i).
std::vector<double> gamma_trace_values(const GammaFamily& family);
double gamma_trace_formula(std::size_t d1, std::size_t d2, std::size_t i);

struct TraceBoundReport {
  double value = 0.0;   // tr(twirl(X)⁺ X)
  double dim = 0.0;
  bool pass = false;
};

TraceBoundReport twirl_trace_bound_check(
    const ComplexMatrix& x,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& twirl,
    double tol = 1e-6);

struct SpanDimension {
  std::size_t oracle = 0;
  std::size_t formula = 0;
  bool pass() const { return oracle == formula; }
};

/// Rank of {Σ_{|S|=m} |ψ⟩^{⊗S}|0⟩^{⊗[n]∖S}} over generic ψ ⊥ |0⟩ in C^{d+1}.
SpanDimension symmetric_span_dim(std::size_t d, std::size_t n, std::size_t m,
                                 Rng& rng);

}  // namespace combcert
