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
#include <limits>

#include "combcert/inequalities.hpp"
#include "combcert/random.hpp"

namespace combcert {
namespace {

TEST(Entropy, KnownValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), std::log(2.0), 1e-15);
  EXPECT_NEAR(kl_divergence(0.3, 0.3), 0.0, 1e-15);
  // D(1‖p) = −ln p
  EXPECT_NEAR(kl_divergence(1.0, 0.25), std::log(4.0), 1e-14);
  EXPECT_TRUE(std::isinf(kl_divergence(0.5, 0.0)));
}

TEST(Entropy, KlIsNonNegativeOnGrid) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 1; j < 20; ++j) EXPECT_GE(kl_divergence(i / 20.0, j / 20.0), -1e-15);
}

TEST(Audits, AllPassWithZeroViolations) {
  Rng rng(1);
  for (const AuditResult& r : {fact_binomial_audit(), fact_quadratic_form_audit(rng, 50),
                               fact_xlog_audit(), schedule_chain_audit()}) {
    EXPECT_TRUE(r.pass()) << r.name << ": " << r.first_violation;
    EXPECT_GT(r.checks, 0u) << r.name;
  }
}

TEST(Audits, XlogMaximumAtMOverE) {
  // x ln(M/x) peaks at x = M/e with value M/e.
  const double m = 7.0, x = m / std::exp(1.0);
  EXPECT_NEAR(x * std::log(m / x), m / std::exp(1.0), 1e-14);
}

}  // namespace
}  // namespace combcert
