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

#include <numeric>

#include "combcert/channel.hpp"
#include "combcert/comb.hpp"
#include "combcert/error.hpp"
#include "combcert/random.hpp"
#include "test_util.hpp"

namespace combcert {
namespace {

TEST(Comb, ChoiOfChannelIsOneComb) {
  Rng rng(1);
  const Channel ch = random_channel(3, 2, 2, rng);
  const CombCheck c = certify_comb(choi_from_kraus(ch), {"A", "B"});
  EXPECT_TRUE(c.ok) << c.message;
  EXPECT_LT(c.residual, 1e-12);
}

TEST(Comb, TraceDecreasingMapFailsAtLastLevel) {
  // 0.9 × channel: tr_B C = 0.9·I_A, not I.
  Rng rng(2);
  const LabeledOperator c = choi_from_kraus(random_channel(2, 2, 2, rng));
  const CombCheck check = certify_comb(Complex(0.9) * c, {"A", "B"});
  EXPECT_FALSE(check.ok);
  EXPECT_GT(check.residual, 0.05);
}

TEST(Comb, NonPositiveOperatorFlagged) {
  // The partial transpose of |I>><<I| is the swap, with eigenvalue −1.
  const LabeledOperator c = choi_from_kraus(identity_channel(2));
  const CombCheck check = certify_comb(partial_transpose(c, {"A"}), {"A", "B"});
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.level, -1);
  EXPECT_NEAR(check.min_eigenvalue, -1.0, 1e-12);
  EXPECT_THROW(make_comb(partial_transpose(c, {"A"}), {"A", "B"}), Error);
}

TEST(Comb, SequenceMustCoverEverySpace) {
  const LabeledOperator c = choi_from_kraus(identity_channel(2));
  EXPECT_THROW(certify_comb(c, {"A"}), Error);
  EXPECT_THROW(certify_comb(c, {"A", "C"}), Error);
}

// Two channels with a memory line: A1 → B1⊗M, then A2⊗M → B2.
LabeledOperator two_step_network(Rng& rng) {
  const Channel first = random_channel(2, 2 * 3, 2, rng);
  const Channel second = random_channel(2 * 3, 2, 3, rng);
  // Split the composite spaces into labelled factors (B1,M) and (A2,M).
  const LabeledOperator c1(choi_from_kraus(first).matrix(), {{"B1", 2}, {"M", 3}, {"A1", 2}});
  const LabeledOperator c2(choi_from_kraus(second).matrix(), {{"B2", 2}, {"A2", 2}, {"M", 3}});
  return link_product(c1, c2);
}

TEST(Comb, SequentialNetworkIsTwoComb) {
  Rng rng(3);
  const LabeledOperator net = two_step_network(rng);
  const CombCheck c = certify_comb(net, {"A1", "B1", "A2", "B2"});
  EXPECT_TRUE(c.ok) << c.message;
  EXPECT_EQ(c.chain.size(), 2u);
  EXPECT_NEAR(net.trace().real(), 4.0, 1e-11);  // d_A1 · d_A2
}

TEST(Comb, SignallingBackwardsIsNotAComb) {
  // B1 receives A2: violates the causal order A1 B1 A2 B2.
  const LabeledOperator back = choi_from_kraus(identity_channel(2), "B1", "A2");
  const LabeledOperator fwd = choi_from_kraus(identity_channel(2), "B2", "A1");
  const CombCheck c = certify_comb(tensor(back, fwd), {"A1", "B1", "A2", "B2"});
  EXPECT_FALSE(c.ok);
  EXPECT_GE(c.level, 1);
  // ... but it is a valid comb in the order A2 B1 A1 B2.
  EXPECT_TRUE(certify_comb(tensor(back, fwd), {"A2", "B1", "A1", "B2"}).ok);
}

TEST(Comb, RandomCombsCertify) {
  Rng rng(4);
  for (std::size_t n : {1, 2, 3}) {
    SpaceList seq;
    for (std::size_t j = 0; j < n; ++j) {
      seq.push_back({"A" + std::to_string(j + 1), 2});
      seq.push_back({"B" + std::to_string(j + 1), 2});
    }
    const Comb c = random_comb(seq, 2, rng);
    EXPECT_EQ(c.n(), n);
    EXPECT_TRUE(certify_comb(c.op, c.sequence).ok);
  }
}

TEST(Tester, ProbabilitiesMatchDirectBornRule) {
  Rng rng(5);
  const std::size_t da = 2, db = 3, dr = 2;
  const Channel ch = random_channel(da, db, 2, rng);
  const ComplexMatrix rho = random_density(da * dr, rng);
  const auto povm = random_povm(db * dr, 3, rng);
  const Tester t = prepare_measure_tester(rho, povm, da, db, dr);
  EXPECT_TRUE(validate_tester(t).ok);
  const auto p = success_probability(t, ch);
  // (E ⊗ id_R)(ρ) by hand.
  ComplexMatrix out = ComplexMatrix::Zero(db * dr, db * dr);
  for (const auto& k : ch.kraus) {
    const ComplexMatrix kk = testing::naive_kron(k, identity(dr));
    out += kk * rho * kk.adjoint();
  }
  double total = 0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    EXPECT_NEAR(p[i], (povm[i] * out).trace().real(), 1e-12);
    total += p[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Tester, RandomTesterSumsToOneOnEveryComb) {
  Rng rng(6);
  const Tester t = random_tester(2, 2, 2, 4, rng);
  EXPECT_TRUE(validate_tester(t).ok);
  SpaceList seq{{"A1", 2}, {"B1", 2}, {"A2", 2}, {"B2", 2}};
  for (int k = 0; k < 3; ++k) {
    const auto p = success_probability(t, random_comb(seq, 3, rng).op);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-10);
    for (double pi : p) EXPECT_GE(pi, -1e-12);
  }
}

TEST(Tester, ChoiPowerIsTensorOfChois) {
  Rng rng(7);
  const Channel ch = random_channel(2, 2, 2, rng);
  const LabeledOperator p = choi_power(ch, {"A1", "A2"}, {"B1", "B2"});
  const ComplexMatrix c = choi_from_kraus(ch).matrix();
  const LabeledOperator want(testing::naive_kron(c, c), {{"B1", 2}, {"A1", 2}, {"B2", 2}, {"A2", 2}});
  EXPECT_LT(testing::max_abs(p.aligned_to(want.spaces()).matrix() - want.matrix()), 1e-13);
}

}  // namespace
}  // namespace combcert
