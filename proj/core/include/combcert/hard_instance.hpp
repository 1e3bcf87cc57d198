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
#include <string>
#include <vector>

#include "combcert/labeled_operator.hpp"
#include "combcert/linalg.hpp"

namespace combcert {

/// V_{ε,U} = √(1−ε²)·V₀ + ε·R(U)·Δ with R(U) = Q·(I_{d1} ⊕ U)·Q†.
/// For the basis-aligned pair Q = I; for an abstract pair the first d1
/// columns of Q span range(V₀) and the next d1 span range(Δ).
struct HardInstanceSpec {
  std::size_t d1 = 1;
  std::size_t d2 = 2;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  ComplexMatrix v0;     // d2 × d1
  ComplexMatrix delta;  // d2 × d1
  ComplexMatrix u;      // (d2−d1) × (d2−d1)
  ComplexMatrix frame;  // d2 × d2 unitary Q
  ComplexMatrix v;      // realized isometry, d2 × d1

  std::size_t k() const { return d2 - d1; }
  /// Q·(I ⊕ w)·Q† for an arbitrary unitary w on the complement block.
  ComplexMatrix rotation(const ComplexMatrix& w) const;
};

struct HardInstanceResiduals {
  double v0_isometry = 0.0;
  double delta_isometry = 0.0;
  double orthogonality = 0.0;  // ‖V₀†Δ‖_F
  double v_isometry = 0.0;
  double u_unitarity = 0.0;
};

HardInstanceResiduals residuals(const HardInstanceSpec& spec);

/// Basis-aligned pair V₀ = Σ|i⟩⟨i|, Δ = Σ|d1+i⟩⟨i|.
HardInstanceSpec build_hard_isometry(std::size_t d1, std::size_t d2,
                                     double epsilon, const ComplexMatrix& u,
                                     std::uint64_t seed = 0);
/// Arbitrary isometries with orthogonal images.
HardInstanceSpec build_hard_isometry(const ComplexMatrix& v0,
                                     const ComplexMatrix& delta, double epsilon,
                                     const ComplexMatrix& u,
                                     std::uint64_t seed = 0);
/// Basis-aligned pair with U Haar-sampled from `seed`.
HardInstanceSpec sample_hard_instance(std::size_t d1, std::size_t d2,
                                      double epsilon, std::uint64_t seed);

/// Labels B1, A1, ..., Bn, An (the order used by γ vectors).
SpaceList hard_spaces(std::size_t n, std::size_t d1, std::size_t d2);
/// Every subset of {0..n-1} of size i, lexicographic.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t i);
double binomial(std::size_t n, std::size_t k);

/// binom(n,i)^{-1/2} Σ_{|S|=i} |V₀⟩⟩^{[n]∖S} ⊗ |Δ⟩⟩^{S}; squared norm d1ⁿ.
ComplexVector gamma_state(std::size_t n, std::size_t i,
                          const HardInstanceSpec& spec);
/// |V⟩⟩^{⊗n} on hard_spaces(n).
ComplexVector hard_vector(const HardInstanceSpec& spec, std::size_t n);
/// c_i = (√(1−ε²))^{n−i} ε^i √binom(n,i).
std::vector<double> hard_vector_coefficients(double epsilon, std::size_t n);
/// (R(U) ⊗ I_A)^{⊗n} applied to a vector on hard_spaces(n).
ComplexVector apply_rotation(const ComplexMatrix& rotation,
                             const ComplexVector& v, std::size_t n,
                             std::size_t d1);
/// ‖Σ c_i R(U)^{⊗n}γ_i − |V⟩⟩^{⊗n}‖.
double expansion_residual(const HardInstanceSpec& spec, std::size_t n);

/// Comb sequence A1, B1, ..., An, Bn.
std::vector<std::string> hard_comb_sequence(std::size_t n);

/// ‖tr_{Bn}|γ_iⁿ⟩⟨γ_iⁿ| − (a·I⊗|γ_i^{n−1}⟩⟨·| + b·I⊗|γ_{i−1}^{n−1}⟩⟨·|)‖_F.
double gamma_recursion_residual(std::size_t n, std::size_t i,
                                const HardInstanceSpec& spec);

}  // namespace combcert
