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

#include <gtest/gtest.h>

#include <cmath>

#include "combcert/comb.hpp"
#include "combcert/domination.hpp"
#include "combcert/error.hpp"
#include "combcert/hard_instance.hpp"
#include "combcert/random.hpp"
#include "combcert/twirl.hpp"
#include "test_util.hpp"

namespace combcert {
namespace {

using testing::max_abs;

double naive_binom(int n, int k) {
  double r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

TEST(HardInstance, BasisAlignedPairResiduals) {
  const HardInstanceSpec s = sample_hard_instance(2, 5, 0.1, 7);
  const auto r = residuals(s);
  EXPECT_LT(r.v0_isometry, 1e-14);
  EXPECT_LT(r.delta_isometry, 1e-14);
  EXPECT_LT(r.orthogonality, 1e-14);
  EXPECT_LT(r.v_isometry, 1e-13);
  EXPECT_LT(r.u_unitarity, 1e-13);
  EXPECT_EQ(s.k(), 3u);
  // V = √(1−ε²)V₀ + ε(I⊕U)Δ, by hand.
  ComplexMatrix r_u = identity(5);
  r_u.bottomRightCorner(3, 3) = s.u;
  EXPECT_LT(max_abs(s.v - (std::sqrt(1 - 0.01) * s.v0 + 0.1 * r_u * s.delta)), 1e-14);
}

TEST(HardInstance, RejectsBadArguments) {
  Rng rng(1);
  EXPECT_THROW(build_hard_isometry(2, 3, 0.1, haar_unitary(1, rng)), Error);  // d2 < 2d1
  EXPECT_THROW(build_hard_isometry(1, 2, 1.5, haar_unitary(1, rng)), Error);
  EXPECT_THROW(build_hard_isometry(1, 3, 0.1, ginibre(2, 2, rng)), Error);  // not unitary
}

TEST(HardInstance, HardVectorIsTensorPowerOfVec) {
  const HardInstanceSpec s = sample_hard_instance(1, 3, 0.2, 3);
  const ComplexVector v = vectorize(s.v);
  const ComplexVector want = kron(kron(v, v), v);
  EXPECT_LT((hard_vector(s, 3) - want).norm(), 1e-14);
}

TEST(HardInstance, GammaStatesOrthogonalWithNormD1PowN) {
  const HardInstanceSpec s = sample_hard_instance(2, 4, 0.1, 4);
  const std::size_t n = 3;
  for (std::size_t i = 0; i <= n; ++i) {
    const ComplexVector gi = gamma_state(n, i, s);
    EXPECT_NEAR(gi.squaredNorm(), 8.0, 1e-12);
    for (std::size_t j = 0; j < i; ++j) EXPECT_LT(std::abs(gamma_state(n, j, s).dot(gi)), 1e-13);
  }
  EXPECT_LT(expansion_residual(s, n), 1e-13);
}

TEST(HardInstance, CoefficientsAreBinomialWeights) {
  const auto c = hard_vector_coefficients(0.3, 4);
  double total = 0;
  for (int i = 0; i <= 4; ++i) {
    const double want = std::pow(std::sqrt(1 - 0.09), 4 - i) * std::pow(0.3, i) * std::sqrt(naive_binom(4, i));
    EXPECT_NEAR(c[i], want, 1e-15);
    total += c[i] * c[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-14);  // (1−ε² + ε²)^n
}

TEST(HardInstance, SubsetsAndBinomial) {
  EXPECT_EQ(subsets(5, 2).size(), 10u);
  EXPECT_EQ(subsets(4, 0).size(), 1u);
  EXPECT_EQ(subsets(3, 2).front(), (std::vector<std::size_t>{0, 1}));
  for (int n = 0; n < 12; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_DOUBLE_EQ(binomial(n, k), naive_binom(n, k));
}

TEST(HardInstance, GammaProjectorsAreCombs) {
  const HardInstanceSpec s = sample_hard_instance(1, 3, 0.05, 5);
  for (std::size_t n : {1, 2}) {
    for (std::size_t i = 0; i <= n; ++i) {
      const ComplexVector g = gamma_state(n, i, s);
      const LabeledOperator x(g * g.adjoint(), hard_spaces(n, 1, 3));
      EXPECT_TRUE(certify_comb(x, hard_comb_sequence(n)).ok) << "n=" << n << " i=" << i;
    }
    for (std::size_t i = 1; i <= n && n >= 2; ++i) EXPECT_LT(gamma_recursion_residual(n, i, s), 1e-12);
  }
}

// For n = 1: Γ₀ = |V₀>><<V₀| (invariant) and Γ₁ = P_⊥/k ⊗ I_A.
TEST(Twirl, SingleUseClosedForm) {
  const std::size_t d1 = 2, d2 = 5, k = 3;
  const HardInstanceSpec s = sample_hard_instance(d1, d2, 0.1, 6);
  ComplexMatrix perp = ComplexMatrix::Zero(d2, d2);
  perp.bottomRightCorner(k, k) = identity(k);
  const ComplexMatrix gamma1 = testing::naive_kron(perp / double(k), identity(d1));
  const ComplexVector v0 = vectorize(s.v0);
  for (auto m : {TwirlMethod::kExactCommutant, TwirlMethod::kWeingarten}) {
    TwirlOptions opt;
    opt.method = m;
    opt.seed = 1;
    const GammaFamily f = gamma_family(s, 1, opt);
    EXPECT_LT(max_abs(f.twirled[0] - v0 * v0.adjoint()), 1e-12) << to_string(m);
    EXPECT_LT(max_abs(f.twirled[1] - gamma1), 1e-12) << to_string(m);
  }
}

TEST(Twirl, PermutationGramEntries) {
  // S_2: identity and swap, #cycles(σ⁻¹τ) = 2 on the diagonal, 1 off it.
  const ComplexMatrix g = permutation_gram(2, 3);
  EXPECT_EQ(g(0, 0), Complex(9));
  EXPECT_EQ(g(0, 1), Complex(3));
  EXPECT_EQ(permutations(3).size(), 6u);
}

TEST(Twirl, CommutantOfUTensorUIsIdentityAndSwap) {
  Rng rng(7);
  std::vector<ComplexMatrix> gens;
  for (int t = 0; t < 4; ++t) {
    const ComplexMatrix u = haar_unitary(2, rng);
    gens.push_back(kron(u, u));
  }
  const CommutantProjector p(gens);
  EXPECT_EQ(p.commutant_dim(), 2u);
  // Projection of |00><00|: (I + SWAP)/6 (Weingarten for S_2, d = 2).
  ComplexMatrix x = ComplexMatrix::Zero(4, 4);
  x(0, 0) = 1;
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) swap(a * 2 + b, b * 2 + a) = 1;
  EXPECT_LT(max_abs(p.apply(x) - (identity(4) + swap) / 6.0), 1e-10);
  EXPECT_LT(max_abs(p.apply(p.apply(x)) - p.apply(x)), 1e-12);
}

TEST(Twirl, MonteCarloConvergesToExact) {
  const HardInstanceSpec s = sample_hard_instance(1, 2, 0.1, 8);
  TwirlOptions exact;
  const GammaFamily f = gamma_family(s, 2, exact);
  const std::size_t samples = 4000;
  const ComplexMatrix mc = monte_carlo_twirl(s, 2, f.gamma[1], samples, 9);
  EXPECT_LT((mc - f.twirled[1]).norm(), 10.0 / std::sqrt(double(samples)));
  // Chunked seeding: thread count must not change the result.
  EXPECT_LT(max_abs(monte_carlo_twirl(s, 2, f.gamma[1], samples, 9, 3) - mc), 1e-13);
}

TEST(Twirl, ExactCapIsEnforced) {
  EXPECT_TRUE(exact_commutant_fits(2, 5));
  EXPECT_FALSE(exact_commutant_fits(3, 5));
  const HardInstanceSpec s = sample_hard_instance(2, 5, 0.1, 9);
  TwirlOptions exact;
  EXPECT_THROW(gamma_family(s, 3, exact), Error);
  EXPECT_EQ(parse_twirl_method("mc"), TwirlMethod::kMonteCarlo);
  EXPECT_THROW(parse_twirl_method("nope"), Error);
}

TEST(Domination, ScheduleAndQuadraticForm) {
  const HardInstanceSpec s = sample_hard_instance(1, 3, 0.05, 10);
  const LambdaSchedule sch = lambda_schedule(2, 1, 3, 0.05);
  EXPECT_LE(sch.sum(), sch.sum_bound());
  EXPECT_NEAR(sch.sum_bound(), 3 * 9 * std::exp(std::sqrt(8 * 2 * 0.0025 * 3)), 1e-12);
  const GammaFamily f = gamma_family(s, 2, TwirlOptions{});
  const DominationReport r = domination_check(s, f, sch);
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.q, 1.0);
  ASSERT_TRUE(r.min_eigenvalue.has_value());
  // Q recomputed from the pieces.
  double q = 0;
  const ComplexVector v = hard_vector(s, 2);
  for (std::size_t i = 0; i <= 2; ++i)
    q += v.dot(pseudo_inverse(f.twirled[i]) * v).real() / sch.lambdas[i];
  EXPECT_NEAR(r.q, q, 1e-9);
}

TEST(Domination, ShrunkScheduleFails) {
  const HardInstanceSpec s = sample_hard_instance(1, 2, 0.05, 11);
  LambdaSchedule sch = lambda_schedule(1, 1, 2, 0.05);
  for (double& l : sch.lambdas) l *= 1e-6;
  const DominationReport r = domination_check(s, gamma_family(s, 1, TwirlOptions{}), sch);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.q, 1.0);
}

TEST(Domination, RegimeGuard) {
  EXPECT_THROW(lambda_schedule(schedule_cap(1, 2, 0.3) + 1, 1, 2, 0.3), Error);
  EXPECT_NEAR(schedule_constant(), 2 * std::exp(4.0), 1e-12);
}

TEST(TraceBound, FullUnitaryTwirlGivesDimension) {
  Rng rng(12);
  const std::size_t d = 4;
  auto twirl = [d](const ComplexMatrix& x) -> ComplexMatrix { return x.trace() / double(d) * identity(d); };
  const ComplexVector psi = haar_state(d, rng);
  const auto pure = twirl_trace_bound_check(psi * psi.adjoint(), twirl);
  EXPECT_NEAR(pure.value, double(d), 1e-12);
  EXPECT_TRUE(pure.pass);
  EXPECT_NEAR(gamma_trace_formula(1, 3, 2), naive_binom(3, 2), 1e-12);
}

TEST(SymmetricSpan, MatchesBinomial) {
  Rng rng(13);
  for (std::size_t d : {1, 2, 3})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t m = 0; m <= n; ++m) {
        const SpanDimension sd = symmetric_span_dim(d, n, m, rng);
        EXPECT_EQ(sd.oracle, static_cast<std::size_t>(naive_binom(int(d + m - 1), int(m))))
            << d << " " << n << " " << m;
      }
}

}  // namespace
}  // namespace combcert
