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
#include <random>

#include "combcert/linalg.hpp"

namespace combcert {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64). Uniform and normal
/// variates are derived here rather than through <random> distributions so
/// that streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box–Muller.
  double normal();
  /// Complex Gaussian with E|z|² = 1.
  Complex complex_normal();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic per-task seed: splitmix64 applied to (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
ComplexMatrix haar_isometry(std::size_t d_in, std::size_t d_out, Rng& rng);
ComplexVector haar_state(std::size_t d, Rng& rng);
/// GUE-like Hermitian matrix (G + G†)/2.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);
/// G G† normalized to unit trace, optionally with a rank cap.
ComplexMatrix random_density(std::size_t d, Rng& rng, std::size_t rank = 0);

}  // namespace combcert
