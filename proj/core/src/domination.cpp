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

#include "combcert/domination.hpp"

#include <cmath>
#include <string>

namespace combcert {

double schedule_constant() { return 2.0 * std::exp(4.0); }

double LambdaSchedule::sum() const {
  double s = 0.0;
  for (double l : lambdas) s += l;
  return s;
}

double LambdaSchedule::sum_bound() const {
  const double dd = static_cast<double>(d1 * d2);
  return 3.0 * dd * dd *
         std::exp(std::sqrt(8.0 * static_cast<double>(n) * epsilon * epsilon * dd));
}

std::size_t schedule_cap(std::size_t d1, std::size_t d2, double epsilon) {
  if (epsilon <= 0.0) return static_cast<std::size_t>(-1);
  const double cap = static_cast<double>(d1 * d2) /
                     (schedule_constant() * epsilon * epsilon);
  return static_cast<std::size_t>(std::floor(cap));
}

LambdaSchedule lambda_schedule(std::size_t n, std::size_t d1, std::size_t d2,
                               double epsilon) {
  if (d1 * d2 < 2) {
    throw Error(ErrorCode::kRegimeViolation, "schedule needs d1*d2 >= 2");
  }
  if (n > schedule_cap(d1, d2, epsilon)) {
    throw Error(ErrorCode::kRegimeViolation,
                "hypothesis n <= d1*d2/(B*eps^2) violated (n=" +
                    std::to_string(n) + ", cap=" +
                    std::to_string(schedule_cap(d1, d2, epsilon)) + ")");
  }
  LambdaSchedule s{n, d1, d2, epsilon, {}};
  const double dd = static_cast<double>(d1 * d2);
  const double big = 2.0 * dd *
                     std::exp(std::sqrt(8.0 * static_cast<double>(n) *
                                        epsilon * epsilon * dd));
  for (std::size_t i = 0; i <= n; ++i) {
    s.lambdas.push_back(i < d1 * d2 ? big : std::exp(-static_cast<double>(i)));
  }
  return s;
}

DominationReport domination_check(const HardInstanceSpec& spec,
                                  const GammaFamily& family,
                                  const LambdaSchedule& schedule, double tol,
                                  bool direct_psd) {
  if (family.method == TwirlMethod::kMonteCarlo) {
    throw Error(ErrorCode::kInvalidArgument,
                "domination_check needs exact Gamma (exact-commutant or "
                "weingarten); Monte Carlo estimates are never inverted");
  }
  if (schedule.lambdas.size() != family.twirled.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "schedule and Gamma family have different lengths");
  }
  DominationReport rep;
  const ComplexVector v = hard_vector(spec, family.n);
  const auto d = v.size();
  ComplexMatrix proj = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < family.twirled.size(); ++i) {
    const ComplexMatrix& g = family.twirled[i];
    const ComplexMatrix gi = pseudo_inverse(g);
    const double term = (v.adjoint() * gi * v)(0, 0).real() / schedule.lambdas[i];
    rep.q_terms.push_back(term);
    rep.q += term;
    proj += support_projector(g);
  }
  rep.support_residual = (v - proj * v).norm();
  rep.support_ok = rep.support_residual <= tol * std::max(1.0, v.norm());
  rep.q_ok = rep.q <= 1.0;
  rep.min_eigenvalue_floor = -tol * schedule.sum();
  if (direct_psd && static_cast<std::size_t>(d) <= kDirectPsdCap) {
    ComplexMatrix m = -(v * v.adjoint());
    for (std::size_t i = 0; i < family.twirled.size(); ++i) {
      m += schedule.lambdas[i] * family.twirled[i];
    }
    rep.min_eigenvalue = min_eigenvalue(hermitian_part(m));
    rep.psd_ok = *rep.min_eigenvalue >= rep.min_eigenvalue_floor;
  }
  return rep;
}

std::vector<double> gamma_trace_values(const GammaFamily& family) {
  std::vector<double> out;
  for (std::size_t i = 0; i < family.twirled.size(); ++i) {
    const ComplexVector& g = family.gamma[i];
    out.push_back((g.adjoint() * pseudo_inverse(family.twirled[i]) * g)(0, 0).real());
  }
  return out;
}

double gamma_trace_formula(std::size_t d1, std::size_t d2, std::size_t i) {
  return binomial(d1 * d2 + i - 2, i);
}

TraceBoundReport twirl_trace_bound_check(
    const ComplexMatrix& x,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& twirl,
    double tol) {
  if (!is_psd(x, 1e-9)) {
    throw Error(ErrorCode::kNotPositive, "trace bound needs a PSD operator");
  }
  TraceBoundReport r;
  const ComplexMatrix t = hermitian_part(twirl(x));
  r.value = (pseudo_inverse(t) * x).trace().real();
  r.dim = static_cast<double>(x.rows());
  r.pass = r.value <= r.dim * (1.0 + tol);
  return r;
}

SpanDimension symmetric_span_dim(std::size_t d, std::size_t n, std::size_t m,
                                 Rng& rng) {
  if (m > n || d < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "symmetric_span_dim needs n >= m and d >= 1");
  }
  SpanDimension out;
  out.formula = static_cast<std::size_t>(binomial(d + m - 1, m));
  const std::size_t samples = out.formula + 5;
  std::size_t side = 1;
  for (std::size_t j = 0; j < n; ++j) side *= d + 1;
  ComplexMatrix cols(static_cast<Eigen::Index>(side),
                     static_cast<Eigen::Index>(samples));
  ComplexVector zero = ComplexVector::Zero(static_cast<Eigen::Index>(d + 1));
  zero(0) = 1.0;
  const auto subs = subsets(n, m);
  for (std::size_t s = 0; s < samples; ++s) {
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d + 1));
    for (std::size_t q = 1; q <= d; ++q) {
      psi(static_cast<Eigen::Index>(q)) = rng.complex_normal();
    }
    psi /= psi.norm();
    ComplexVector sum = ComplexVector::Zero(static_cast<Eigen::Index>(side));
    for (const auto& sub : subs) {
      ComplexVector term = ComplexVector::Ones(1);
      std::size_t next = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const bool in = next < sub.size() && sub[next] == j;
        if (in) ++next;
        term = kron(term, in ? psi : zero);
      }
      sum += term;
    }
    cols.col(static_cast<Eigen::Index>(s)) = sum;
  }
  out.oracle = numerical_rank(cols, 1e-9);
  return out;
}

}  // namespace combcert
