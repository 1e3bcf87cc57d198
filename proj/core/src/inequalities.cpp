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

#include "combcert/inequalities.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "combcert/domination.hpp"
#include "combcert/hard_instance.hpp"
#include "combcert/linalg.hpp"

namespace combcert {

namespace {

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// lhs ≤ rhs for quantities compared in log space.
void record(AuditResult& r, double lhs, double rhs, double tol,
            const std::string& where) {
  ++r.checks;
  const double slack = rhs - lhs;
  if (r.checks == 1 || slack < r.worst_slack) r.worst_slack = slack;
  if (lhs > rhs + tol * std::max(1.0, std::abs(rhs))) {
    if (r.violations == 0) r.first_violation = where;
    ++r.violations;
  }
}

std::string tag(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ", ";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

}  // namespace

double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

double kl_divergence(double q, double p) {
  double d = 0.0;
  if (q > 0.0) {
    if (p <= 0.0) return INFINITY;
    d += q * std::log(q / p);
  }
  if (q < 1.0) {
    if (p >= 1.0) return INFINITY;
    d += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
  }
  return d;
}

AuditResult fact_binomial_audit(double tol) {
  AuditResult r;
  r.name = "binomial-entropy-bounds";
  for (int n = 1; n <= 30; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double nn = n, kk = k;
      const double lb = log_binomial(nn, kk);
      record(r, lb, nn * binary_entropy(kk / nn), tol,
             tag({{"n", nn}, {"k", kk}}));
      for (int pi = 1; pi <= 9; ++pi) {
        const double p = pi / 10.0;
        const double lhs = lb + kk * std::log(p) + (nn - kk) * std::log(1.0 - p);
        record(r, lhs, -nn * kl_divergence(kk / nn, p), tol,
               tag({{"n", nn}, {"k", kk}, {"p", p}}));
      }
    }
  }
  return r;
}

AuditResult fact_quadratic_form_audit(Rng& rng, std::size_t trials) {
  AuditResult r;
  r.name = "quadratic-form-equivalence";
  auto check = [&](const ComplexMatrix& m, const ComplexVector& psi,
                   const std::string& where) {
    const double q = (psi.adjoint() * pseudo_inverse(m) * psi)(0, 0).real();
    const double lmin = min_eigenvalue(hermitian_part(m - psi * psi.adjoint()));
    const double scale = std::max(1.0, operator_norm(m));
    const bool dominated = lmin >= -1e-10 * scale;
    const bool form = q <= 1.0 + 1e-10;
    ++r.checks;
    const double slack = dominated == form ? std::abs(1.0 - q) : -std::abs(1.0 - q);
    if (r.checks == 1 || slack < r.worst_slack) r.worst_slack = slack;
    if (dominated != form) {
      if (r.violations == 0) r.first_violation = where;
      ++r.violations;
    }
  };

  ComplexMatrix m0 = ComplexMatrix::Zero(2, 2);
  m0(0, 0) = 1.0;
  ComplexVector e0 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  check(m0, e0, "diag(1,0), |0>");

  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 2 + rng.below(5);
    const std::size_t rank = 1 + rng.below(d);
    const ComplexMatrix g = ginibre(d, rank, rng);
    const ComplexMatrix m = hermitian_part(g * g.adjoint());
    // ψ in supp(M), scaled so ⟨ψ|M⁻¹|ψ⟩ lands on either side of 1.
    ComplexVector c(static_cast<Eigen::Index>(rank));
    for (Eigen::Index q = 0; q < c.size(); ++q) c(q) = rng.complex_normal();
    ComplexVector psi = g * c;
    const double q0 = (psi.adjoint() * pseudo_inverse(m) * psi)(0, 0).real();
    const double target = (t % 2 == 0) ? 0.5 + 0.45 * rng.uniform()
                                       : 1.05 + 0.45 * rng.uniform();
    psi *= std::sqrt(target / q0);
    check(m, psi, "trial " + std::to_string(t));
  }
  return r;
}

AuditResult fact_xlog_audit(double tol) {
  AuditResult r;
  r.name = "xlog-bound";
  for (int a = -12; a <= 12; ++a) {
    const double big_m = std::pow(10.0, a / 2.0);
    for (int b = -40; b <= 40; ++b) {
      const double x = big_m * std::pow(10.0, b / 10.0);
      record(r, x * std::log(big_m / x), big_m / std::numbers::e, tol,
             tag({{"x", x}, {"M", big_m}}));
    }
    // Stationary point: equality up to rounding.
    const double xs = big_m / std::numbers::e;
    const double lhs = xs * std::log(big_m / xs);
    ++r.checks;
    const double gap = std::abs(lhs - big_m / std::numbers::e);
    if (gap > tol * std::max(1.0, big_m)) {
      if (r.violations == 0) r.first_violation = tag({{"x=M/e, M", big_m}});
      ++r.violations;
    }
  }
  return r;
}

AuditResult schedule_chain_audit(double tol) {
  AuditResult r;
  r.name = "schedule-chain";
  const std::size_t dims[][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5},
                                 {3, 6}, {4, 8}, {4, 3}, {6, 3}};
  const double eps_grid[] = {0.005, 0.01, 0.05, 0.1};
  for (const auto& dd : dims) {
    const std::size_t d1 = dd[0], d2 = dd[1];
    const double dp = static_cast<double>(d1 * d2);
    for (double eps : eps_grid) {
      const std::size_t cap = schedule_cap(d1, d2, eps);
      std::vector<std::size_t> ns;
      for (std::size_t n : {1u, 2u, 3u, 5u, 10u, 30u, 100u, 300u, 1000u}) {
        if (n <= cap) ns.push_back(n);
      }
      if (cap >= 1 && (ns.empty() || ns.back() != cap) && cap <= 5000) {
        ns.push_back(cap);
      }
      for (std::size_t n : ns) {
        const LambdaSchedule sched = lambda_schedule(n, d1, d2, eps);
        const double nn = static_cast<double>(n);
        const double root = std::sqrt(8.0 * nn * eps * eps * dp);
        double total_last = 0.0, total_first = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
          const double ii = static_cast<double>(i);
          const std::string where =
              tag({{"d1", double(d1)}, {"d2", double(d2)}, {"eps", eps},
                   {"n", nn}, {"i", ii}});
          const double l1 = log_binomial(nn, ii) +
                            (nn - ii) * std::log(1.0 - eps * eps) +
                            (i == 0 ? 0.0 : 2.0 * ii * std::log(eps)) +
                            log_binomial(dp + ii - 2.0, ii);
          const double l2 = -nn * kl_divergence(ii / nn, eps * eps) +
                            (dp + ii) * binary_entropy(ii / (dp + ii));
          const double l3 = i == 0 ? 0.0
                                   : -ii * std::log(ii / (nn * eps * eps)) +
                                         ii * std::log(1.0 + dp / ii) + 2.0 * ii;
          const double l4 = i < d1 * d2 ? root : -2.0 * ii;
          record(r, l1, l2, tol, where + " [tail]");
          record(r, l2, l3, tol, where + " [relax]");
          record(r, l3, l4, tol, where + " [summand]");
          total_first += std::exp(l1) / sched.lambdas[i];
          total_last += std::exp(l4) / sched.lambdas[i];
        }
        const double bound = 0.5 + std::exp(-dp) * std::numbers::e /
                                       (std::numbers::e - 1.0);
        const std::string where =
            tag({{"d1", double(d1)}, {"d2", double(d2)}, {"eps", eps}, {"n", nn}});
        record(r, total_first, total_last, tol, where + " [sum-chain]");
        record(r, total_last, bound, tol, where + " [sum]");
        record(r, bound, 1.0, 0.0, where + " [below-one]");
        record(r, sched.sum(), sched.sum_bound(), tol, where + " [lambda-sum]");
      }
    }
  }
  return r;
}

}  // namespace combcert
