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

#include "combcert/error.hpp"
#include "combcert/linalg.hpp"
#include "combcert/random.hpp"
#include "test_util.hpp"

namespace combcert {
namespace {

using testing::max_abs;
using testing::naive_kron;

TEST(Kron, MatchesIndexFormula) {
  Rng rng(1);
  const ComplexMatrix a = ginibre(2, 3, rng);
  const ComplexMatrix b = ginibre(3, 2, rng);
  EXPECT_LT(max_abs(kron(a, b) - naive_kron(a, b)), 1e-15);
}

TEST(Kron, Associative) {
  Rng rng(2);
  const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng), c = ginibre(2, 3, rng);
  EXPECT_LT(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-13);
  EXPECT_LT(max_abs(kron_all({a, b, c}) - kron(a, kron(b, c))), 1e-13);
}

TEST(Kron, MixedProduct) {
  Rng rng(3);
  const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
  const ComplexMatrix c = ginibre(2, 2, rng), d = ginibre(3, 3, rng);
  EXPECT_LT(max_abs(kron(a, b) * kron(c, d) - kron(ComplexMatrix(a * c), ComplexMatrix(b * d))), 1e-12);
}

TEST(Vectorize, RowMajorFlattenAndInverse) {
  ComplexMatrix x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  const ComplexVector v = vectorize(x);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(v(k), Complex(k + 1, 0));
  EXPECT_EQ(devectorize(v, 2, 3), x);
  EXPECT_THROW(devectorize(v, 4, 2), Error);
}

TEST(Vectorize, InnerProductIsHilbertSchmidt) {
  Rng rng(4);
  const ComplexMatrix x = ginibre(3, 2, rng), y = ginibre(3, 2, rng);
  const Complex lhs = vectorize(x).dot(vectorize(y));  // conjugates x
  const Complex rhs = (x.adjoint() * y).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-13);
}

TEST(HermEig, ClosedForm2x2) {
  // [[a, b],[b*, c]]: eigenvalues (a+c)/2 ± sqrt(((a-c)/2)^2 + |b|^2)
  const double a = 1.3, c = -0.4;
  const Complex b(0.7, -0.2);
  ComplexMatrix h(2, 2);
  h << a, b, std::conj(b), c;
  const double m = 0.5 * (a + c);
  const double r = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  for (auto method : {EigMethod::kHouseholderQR, EigMethod::kJacobi}) {
    const auto eig = herm_eig(h, method);
    EXPECT_NEAR(eig.values(0), m - r, 1e-14);
    EXPECT_NEAR(eig.values(1), m + r, 1e-14);
  }
}

TEST(HermEig, ReconstructsAndMethodsAgree) {
  Rng rng(5);
  for (std::size_t d : {1, 2, 5, 9}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const auto q = herm_eig(h, EigMethod::kHouseholderQR);
    const auto j = herm_eig(h, EigMethod::kJacobi);
    EXPECT_LT(max_abs(q.vectors * q.values.asDiagonal() * q.vectors.adjoint() - h), 1e-12);
    EXPECT_LT(max_abs(j.vectors * j.values.asDiagonal() * j.vectors.adjoint() - h), 1e-12);
    EXPECT_LT((q.values - j.values).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(isometry_residual(j.vectors), 1e-12);
    for (Eigen::Index k = 1; k < q.values.size(); ++k) EXPECT_LE(q.values(k - 1), q.values(k));
  }
}

TEST(HermEig, RejectsNonHermitianAndNonFinite) {
  ComplexMatrix x(2, 2);
  x << 1, 2, 0, 1;
  EXPECT_THROW(herm_eig(x), Error);
  x << 1, 0, 0, std::nan("");
  EXPECT_THROW(herm_eig(x), Error);
}

TEST(Norms, TraceNormOfKnownMatrices) {
  // diag(3, -2) has trace norm 5; a rank-one |u><v| has norm |u||v|.
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -2;
  EXPECT_NEAR(trace_norm(d), 5.0, 1e-14);
  Rng rng(6);
  const ComplexVector u = ginibre(4, 1, rng), v = ginibre(4, 1, rng);
  EXPECT_NEAR(trace_norm(u * v.adjoint()), u.norm() * v.norm(), 1e-12);
  EXPECT_NEAR(operator_norm(u * v.adjoint()), u.norm() * v.norm(), 1e-12);
}

TEST(Norms, TraceNormTriangleInequality) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix x = ginibre(4, 4, rng), y = ginibre(4, 4, rng);
    const double lhs = trace_norm(x + y), rhs = trace_norm(x) + trace_norm(y);
    EXPECT_LE(lhs, rhs * (1 + 1e-9));
  }
}

TEST(Norms, SingularValuesOfUnitaryTimesDiag) {
  Rng rng(7);
  const ComplexMatrix u = haar_unitary(4, rng), w = haar_unitary(4, rng);
  RealVector s(4);
  s << 4, 3, 1, 0.5;
  const ComplexMatrix x = u * s.cast<Complex>().asDiagonal() * w;
  const RealVector got = singular_values(x);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(got(k), s(k), 1e-12);
}

TEST(PseudoInverse, MoorePenroseConditions) {
  Rng rng(8);
  const ComplexMatrix g = ginibre(5, 2, rng);
  const ComplexMatrix x = g * g.adjoint();  // rank 2
  const ComplexMatrix p = pseudo_inverse(x);
  EXPECT_LT(max_abs(x * p * x - x), 1e-10);
  EXPECT_LT(max_abs(p * x * p - p), 1e-10);
  const ComplexMatrix s = support_projector(x);
  EXPECT_LT(max_abs(s * s - s), 1e-12);
  EXPECT_NEAR(s.trace().real(), 2.0, 1e-12);
  EXPECT_EQ(numerical_rank(x, 1e-10), 2u);
  EXPECT_EQ(static_cast<std::size_t>(nullspace(x, 1e-8).cols()), 3u);
  EXPECT_LT(max_abs(x * nullspace(x, 1e-8)), 1e-10);
}

TEST(PsdSqrt, SquaresBack) {
  Rng rng(9);
  const ComplexMatrix rho = random_density(4, rng);
  const ComplexMatrix s = psd_sqrt(rho);
  EXPECT_LT(max_abs(s * s - rho), 1e-13);
  EXPECT_TRUE(is_psd(rho, 1e-12));
  EXPECT_FALSE(is_psd(-rho, 1e-12));
}

TEST(UnitaryExp, PauliRotation) {
  // exp(iθZ) = diag(e^{iθ}, e^{-iθ})
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  const ComplexMatrix u = unitary_exp(z, 0.3);
  EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, 0.3)), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, -0.3)), 1e-15);
}

TEST(Random, HaarUnitaryIsUnitaryAndDeterministic) {
  Rng a(10), b(10);
  const ComplexMatrix u = haar_unitary(5, a);
  EXPECT_LT(isometry_residual(u), 1e-13);
  EXPECT_EQ(u, haar_unitary(5, b));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

// E|U_11|^2 = 1/d and E|U_11|^4 = 2/(d(d+1)) under the Haar measure.
TEST(Random, HaarMoments) {
  const std::size_t d = 3, n = 20000;
  Rng rng(11);
  double m2 = 0, m4 = 0, m4sq = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double p = std::norm(haar_unitary(d, rng)(0, 0));
    m2 += p;
    m4 += p * p;
    m4sq += p * p * p * p;
  }
  m2 /= n;
  m4 /= n;
  const double se4 = std::sqrt((m4sq / n - m4 * m4) / n);
  EXPECT_NEAR(m2, 1.0 / d, 5 * std::sqrt(1.0 / n));
  EXPECT_NEAR(m4, 2.0 / (d * (d + 1.0)), 5 * se4);
}

// The phase of U_11 must be uniform too: E[U_11^2] = 0.
TEST(Random, HaarPhaseIsUniform) {
  Rng rng(12);
  Complex acc = 0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const Complex u = haar_unitary(2, rng)(0, 0);
    acc += u * u;
  }
  EXPECT_LT(std::abs(acc / double(n)), 0.03);
}

TEST(Random, DensityIsState) {
  Rng rng(13);
  const ComplexMatrix rho = random_density(4, rng, 2);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  EXPECT_TRUE(is_hermitian(rho));
  EXPECT_EQ(numerical_rank(rho, 1e-10), 2u);
}

}  // namespace
}  // namespace combcert
