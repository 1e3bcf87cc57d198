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

#include "combcert/hard_instance.hpp"

#include <cmath>
#include <string>

#include "combcert/random.hpp"

namespace combcert {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
}

void check_u(const ComplexMatrix& u, std::size_t k) {
  if (static_cast<std::size_t>(u.rows()) != k ||
      static_cast<std::size_t>(u.cols()) != k) {
    throw Error(ErrorCode::kDimensionMismatch,
                "U must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  const double res = isometry_residual(u);
  if (res > 1e-9 * std::max<double>(1.0, static_cast<double>(k))) {
    throw Error(ErrorCode::kNotUnitary,
                "U is not unitary: ‖U†U − I‖_F = " + std::to_string(res));
  }
}

HardInstanceSpec assemble(ComplexMatrix v0, ComplexMatrix delta,
                          ComplexMatrix frame, double epsilon,
                          const ComplexMatrix& u, std::uint64_t seed) {
  HardInstanceSpec s;
  s.d1 = static_cast<std::size_t>(v0.cols());
  s.d2 = static_cast<std::size_t>(v0.rows());
  s.epsilon = epsilon;
  s.seed = seed;
  s.v0 = std::move(v0);
  s.delta = std::move(delta);
  s.u = u;
  s.frame = std::move(frame);
  s.v = std::sqrt(1.0 - epsilon * epsilon) * s.v0 +
        epsilon * s.rotation(u) * s.delta;
  const double res = isometry_residual(s.v);
  if (res > 1e-10 * std::max<double>(1.0, static_cast<double>(s.d1))) {
    throw Error(ErrorCode::kNotIsometry,
                "realized V is not an isometry: " + std::to_string(res));
  }
  return s;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace

ComplexMatrix HardInstanceSpec::rotation(const ComplexMatrix& w) const {
  ComplexMatrix block = identity(d2);
  block.bottomRightCorner(static_cast<Eigen::Index>(k()),
                          static_cast<Eigen::Index>(k())) = w;
  return frame * block * frame.adjoint();
}

HardInstanceResiduals residuals(const HardInstanceSpec& spec) {
  return {isometry_residual(spec.v0), isometry_residual(spec.delta),
          (spec.v0.adjoint() * spec.delta).norm(), isometry_residual(spec.v),
          isometry_residual(spec.u)};
}

HardInstanceSpec build_hard_isometry(std::size_t d1, std::size_t d2,
                                     double epsilon, const ComplexMatrix& u,
                                     std::uint64_t seed) {
  if (d1 == 0 || d2 < 2 * d1) {
    throw Error(ErrorCode::kInvalidArgument,
                "hard instance needs d2 >= 2*d1, got d1=" + std::to_string(d1) +
                    ", d2=" + std::to_string(d2));
  }
  check_epsilon(epsilon);
  check_u(u, d2 - d1);
  const auto r = static_cast<Eigen::Index>(d2);
  const auto c = static_cast<Eigen::Index>(d1);
  ComplexMatrix v0 = ComplexMatrix::Zero(r, c);
  ComplexMatrix delta = ComplexMatrix::Zero(r, c);
  for (Eigen::Index i = 0; i < c; ++i) {
    v0(i, i) = 1.0;
    delta(c + i, i) = 1.0;
  }
  return assemble(std::move(v0), std::move(delta), identity(d2), epsilon, u,
                  seed);
}

HardInstanceSpec build_hard_isometry(const ComplexMatrix& v0,
                                     const ComplexMatrix& delta, double epsilon,
                                     const ComplexMatrix& u,
                                     std::uint64_t seed) {
  if (v0.rows() != delta.rows() || v0.cols() != delta.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "V0 and Delta shapes differ");
  }
  const auto d1 = static_cast<std::size_t>(v0.cols());
  const auto d2 = static_cast<std::size_t>(v0.rows());
  if (d1 == 0 || d2 < 2 * d1) {
    throw Error(ErrorCode::kInvalidArgument, "hard instance needs d2 >= 2*d1");
  }
  check_epsilon(epsilon);
  check_u(u, d2 - d1);
  if (isometry_residual(v0) > 1e-10 || isometry_residual(delta) > 1e-10) {
    throw Error(ErrorCode::kNotIsometry, "V0 and Delta must be isometries");
  }
  const double overlap = (v0.adjoint() * delta).norm();
  if (overlap > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument,
                "images of V0 and Delta are not orthogonal: ‖V0†Δ‖_F = " +
                    std::to_string(overlap));
  }
  ComplexMatrix both(v0.rows(), 2 * v0.cols());
  both << v0, delta;
  const ComplexMatrix rest = nullspace(both.adjoint(), 1e-8);
  ComplexMatrix frame(v0.rows(), v0.rows());
  frame << both, rest;
  if (isometry_residual(frame) > 1e-9) {
    throw Error(ErrorCode::kNotConverged, "could not complete the frame");
  }
  return assemble(v0, delta, std::move(frame), epsilon, u, seed);
}

HardInstanceSpec sample_hard_instance(std::size_t d1, std::size_t d2,
                                      double epsilon, std::uint64_t seed) {
  if (d2 <= d1) {
    throw Error(ErrorCode::kInvalidArgument, "hard instance needs d2 > d1");
  }
  Rng rng(seed);
  return build_hard_isometry(d1, d2, epsilon, haar_unitary(d2 - d1, rng), seed);
}

SpaceList hard_spaces(std::size_t n, std::size_t d1, std::size_t d2) {
  SpaceList out;
  for (std::size_t j = 1; j <= n; ++j) {
    out.push_back({"B" + std::to_string(j), d2});
    out.push_back({"A" + std::to_string(j), d1});
  }
  return out;
}

std::vector<std::string> hard_comb_sequence(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) {
    out.push_back("A" + std::to_string(j));
    out.push_back("B" + std::to_string(j));
  }
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t i) {
  std::vector<std::vector<std::size_t>> out;
  if (i > n) return out;
  std::vector<std::size_t> cur(i);
  for (std::size_t k = 0; k < i; ++k) cur[k] = k;
  while (true) {
    out.push_back(cur);
    std::size_t k = i;
    while (k > 0 && cur[k - 1] == n - i + (k - 1)) --k;
    if (k == 0) break;
    ++cur[k - 1];
    for (std::size_t m = k; m < i; ++m) cur[m] = cur[m - 1] + 1;
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t m = 1; m <= k; ++m) {
    r *= static_cast<double>(n - k + m) / static_cast<double>(m);
  }
  return std::round(r);
}

ComplexVector gamma_state(std::size_t n, std::size_t i,
                          const HardInstanceSpec& spec) {
  if (i > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma index i=" + std::to_string(i) + " exceeds n=" +
                    std::to_string(n));
  }
  const ComplexVector a = vectorize(spec.v0);
  const ComplexVector b = vectorize(spec.delta);
  ComplexVector sum = ComplexVector::Zero(
      static_cast<Eigen::Index>(ipow(spec.d1 * spec.d2, n)));
  for (const auto& s : subsets(n, i)) {
    ComplexVector term = ComplexVector::Ones(1);
    std::size_t next = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool in = next < s.size() && s[next] == j;
      if (in) ++next;
      term = kron(term, in ? b : a);
    }
    sum += term;
  }
  return sum / std::sqrt(binomial(n, i));
}

ComplexVector hard_vector(const HardInstanceSpec& spec, std::size_t n) {
  const ComplexVector v = vectorize(spec.v);
  ComplexVector out = ComplexVector::Ones(1);
  for (std::size_t j = 0; j < n; ++j) out = kron(out, v);
  return out;
}

std::vector<double> hard_vector_coefficients(double epsilon, std::size_t n) {
  std::vector<double> c(n + 1);
  const double s = std::sqrt(1.0 - epsilon * epsilon);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i] = std::pow(s, static_cast<double>(n - i)) *
           std::pow(epsilon, static_cast<double>(i)) *
           std::sqrt(binomial(n, i));
  }
  return c;
}

ComplexVector apply_rotation(const ComplexMatrix& rotation,
                             const ComplexVector& v, std::size_t n,
                             std::size_t d1) {
  const auto d2 = static_cast<std::size_t>(rotation.rows());
  if (static_cast<std::size_t>(v.size()) != ipow(d1 * d2, n)) {
    throw Error(ErrorCode::kDimensionMismatch, "apply_rotation: size mismatch");
  }
  ComplexVector cur = v;
  ComplexVector tmp(v.size());
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t post = ipow(d1 * d2, n - 1 - j);
    const std::size_t inner = d1 * post;          // stride of B_j
    const std::size_t block = d2 * inner;         // one (B_j, A_j, ...) block
    const std::size_t outer = static_cast<std::size_t>(v.size()) / block;
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t b = 0; b < d2; ++b) {
        for (std::size_t t = 0; t < inner; ++t) {
          Complex s = 0.0;
          for (std::size_t bp = 0; bp < d2; ++bp) {
            s += rotation(static_cast<Eigen::Index>(b),
                          static_cast<Eigen::Index>(bp)) *
                 cur(static_cast<Eigen::Index>(o * block + bp * inner + t));
          }
          tmp(static_cast<Eigen::Index>(o * block + b * inner + t)) = s;
        }
      }
    }
    std::swap(cur, tmp);
  }
  return cur;
}

double expansion_residual(const HardInstanceSpec& spec, std::size_t n) {
  const auto c = hard_vector_coefficients(spec.epsilon, n);
  const ComplexMatrix rot = spec.rotation(spec.u);
  ComplexVector sum = ComplexVector::Zero(
      static_cast<Eigen::Index>(ipow(spec.d1 * spec.d2, n)));
  for (std::size_t i = 0; i <= n; ++i) {
    sum += c[i] * apply_rotation(rot, gamma_state(n, i, spec), n, spec.d1);
  }
  return (sum - hard_vector(spec, n)).norm();
}

double gamma_recursion_residual(std::size_t n, std::size_t i,
                                const HardInstanceSpec& spec) {
  if (n == 0 || i > n) {
    throw Error(ErrorCode::kInvalidArgument, "recursion needs 0 <= i <= n, n >= 1");
  }
  const SpaceList full = hard_spaces(n, spec.d1, spec.d2);
  const LabeledOperator g =
      LabeledOperator::projector(gamma_state(n, i, spec), full);
  const LabeledOperator lhs = partial_trace(g, {"B" + std::to_string(n)});

  const SpaceList prev = hard_spaces(n - 1, spec.d1, spec.d2);
  const SpaceList a_n{{"A" + std::to_string(n), spec.d1}};
  ComplexMatrix rhs = ComplexMatrix::Zero(static_cast<Eigen::Index>(lhs.dim()),
                                          static_cast<Eigen::Index>(lhs.dim()));
  const double bn = binomial(n, i);
  if (i <= n - 1) {
    const ComplexVector p = gamma_state(n - 1, i, spec);
    rhs += (binomial(n - 1, i) / bn) * kron(ComplexMatrix(p * p.adjoint()),
                                            identity(spec.d1));
  }
  if (i >= 1) {
    const ComplexVector p = gamma_state(n - 1, i - 1, spec);
    rhs += (binomial(n - 1, i - 1) / bn) *
           kron(ComplexMatrix(p * p.adjoint()), identity(spec.d1));
  }
  SpaceList rhs_spaces = prev;
  rhs_spaces.insert(rhs_spaces.end(), a_n.begin(), a_n.end());
  return frobenius_distance(lhs, LabeledOperator(std::move(rhs), rhs_spaces));
}

}  // namespace combcert
