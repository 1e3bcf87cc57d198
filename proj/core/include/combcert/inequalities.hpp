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

#include "combcert/random.hpp"

namespace combcert {

/// H(p) in nats with H(0) = H(1) = 0.
double binary_entropy(double p);
/// D(q‖p) in nats for Bernoulli distributions; +inf when unsupported.
double kl_divergence(double q, double p);

struct AuditResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // min over checks of (rhs − lhs), in the check's units
  std::string first_violation;

  bool pass() const { return checks > 0 && violations == 0; }
};

/// binom(n,k) ≤ exp(nH(k/n)) and binom(n,k)p^k(1−p)^{n−k} ≤ exp(−nD(k/n‖p))
/// for n ≤ 30, 0 ≤ k ≤ n, p ∈ {0.1,…,0.9}; compared in log space.
AuditResult fact_binomial_audit(double tol = 1e-12);

/// M ⊒ |ψ⟩⟨ψ| ⟺ ⟨ψ|M⁻¹|ψ⟩ ≤ 1 for ψ ∈ supp(M), over random pairs on both
/// sides of the boundary plus the diag(1,0) equality case.
AuditResult fact_quadratic_form_audit(Rng& rng, std::size_t trials = 100);

/// x ln(M/x) ≤ M/e on a log grid, and equality at x = M/e.
AuditResult fact_xlog_audit(double tol = 1e-12);

/// Term-by-term chain behind the λ-schedule, for sampled admissible
/// (n, i, d1, d2, ε):
///   binom(n,i)(1−ε²)^{n−i}ε^{2i}binom(d1d2+i−2,i)
///     ≤ exp(−nD(i/n‖ε²) + (d1d2+i)H(i/(d1d2+i)))
///     ≤ exp(−i ln(i/(nε²)) + i ln(1+d1d2/i) + 2i)
///     ≤ exp(√(8nε²d1d2)) for i < d1d2,  exp(−2i) otherwise,
/// and Σ_i (last)/λ_i ≤ 1/2 + e^{−d1d2}·e/(e−1) < 1.
AuditResult schedule_chain_audit(double tol = 1e-12);

}  // namespace combcert
