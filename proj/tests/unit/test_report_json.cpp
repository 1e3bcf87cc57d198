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
#include <stdexcept>

#include "combcert/channel.hpp"
#include "combcert/error.hpp"
#include "combcert/json_io.hpp"
#include "combcert/random.hpp"
#include "combcert/report.hpp"
#include "combcert/suites.hpp"

namespace combcert {
namespace {

TEST(JsonIo, MatrixRoundTripIsExact) {
  Rng rng(1);
  const ComplexMatrix m = ginibre(3, 2, rng);
  const Json j = to_json(m);
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(matrix_from_json(Json::parse(j.dump())), m);
}

TEST(JsonIo, LabeledAndChannelRoundTrip) {
  Rng rng(2);
  const LabeledOperator x(ginibre(6, 6, rng), {{"A", 2}, {"B", 3}});
  const LabeledOperator y = labeled_from_json(Json::parse(to_json(x).dump()));
  EXPECT_EQ(y.spaces(), x.spaces());
  EXPECT_EQ(y.matrix(), x.matrix());
  const Channel ch = random_channel(2, 3, 2, rng);
  const Channel back = channel_from_json(to_json(ch));
  EXPECT_EQ(back.kraus.size(), 2u);
  EXPECT_EQ(back.kraus[1], ch.kraus[1]);
}

TEST(JsonIo, MalformedMatrixRejected) {
  Json j = {{"rows", 2}, {"cols", 2}, {"re", {1, 2, 3}}, {"im", {0, 0, 0}}};
  EXPECT_THROW(matrix_from_json(j), std::exception);
}

TEST(JsonIo, HashIsContentAddressed) {
  Rng rng(3);
  ComplexMatrix m = ginibre(2, 2, rng);
  const std::string h = matrix_hash(m);
  EXPECT_EQ(h.rfind("fnv1a64:", 0), 0u);
  EXPECT_EQ(h.size(), 8u + 16u);
  EXPECT_EQ(matrix_hash(m), h);
  m(1, 1) += 1e-15;
  EXPECT_NE(matrix_hash(m), h);
  // Shape participates: a 1x4 and 4x1 view of the same data differ.
  const ComplexMatrix row = ComplexMatrix::Ones(1, 4), col = ComplexMatrix::Ones(4, 1);
  EXPECT_NE(fnv1a64(row), fnv1a64(col));
  EXPECT_FALSE(matrix_ref(m, false).contains("re"));
  EXPECT_TRUE(matrix_ref(m, true).contains("re"));
}

TEST(JsonIo, UnreadableFileIsParseError) {
  try {
    read_json_file("/nonexistent/dir/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(Report, OutcomesAndSkips) {
  VerificationReport rep("demo");
  rep.run("a", "small residual", 1, [] { return CheckOutcome::at_most(1e-12, 1e-9); });
  rep.run("b", "large margin", 2, [] { return CheckOutcome::at_least(0.5, 0.05); });
  rep.skip("c", "not applicable here", 3, "regime");
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(rep.pass(/*strict=*/true));
  EXPECT_EQ(rep.skipped(), 1u);
  rep.run("d", "throws", 4, []() -> CheckOutcome { throw std::runtime_error("boom"); });
  rep.run("e", "nan", 5, [] { return CheckOutcome::at_most(std::nan(""), 1.0); });
  EXPECT_EQ(rep.failed(), 2u);
  EXPECT_FALSE(rep.pass());
  EXPECT_NE(rep.records()[3].note.find("boom"), std::string::npos);
}

TEST(Report, JsonRoundTripAndTimingStrip) {
  VerificationReport rep("demo", Json{{"seed", 9}});
  rep.run("a", "x", 1, [] { return CheckOutcome::at_most(0.1, 1.0); });
  const Json j = rep.to_json();
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_TRUE(j.at("pass").get<bool>());
  const VerificationReport back = VerificationReport::from_json(j);
  EXPECT_EQ(back.records().size(), 1u);
  EXPECT_EQ(back.records()[0].id, "a");
  const Json s = strip_timing(j);
  EXPECT_FALSE(s.at("records")[0].contains("wall_time_s"));
  EXPECT_TRUE(j.at("records")[0].contains("wall_time_s"));
}

TEST(Report, MergeBuildsCoverageAndPropagatesFailure) {
  VerificationReport a("one"), b("two");
  a.run("x", "shared statement", 1, [] { return CheckOutcome::at_most(0, 1); });
  b.run("y", "shared statement", 1, [] { return CheckOutcome::at_most(2, 1); });
  const Json m = merge_reports({a.to_json(), b.to_json()});
  EXPECT_FALSE(m.at("pass").get<bool>());
  ASSERT_EQ(m.at("coverage").size(), 1u);
  EXPECT_EQ(m.at("coverage")[0].at("checks"), 2);
  EXPECT_EQ(m.at("coverage")[0].at("failed"), 1);
  EXPECT_THROW(merge_reports({}), Error);
  EXPECT_THROW(merge_reports({Json{{"hello", 1}}}), std::exception);
}

TEST(Suites, CombsSuiteIsDeterministic) {
  CombsConfig c;
  c.channels = 5;
  c.pairs = 5;
  c.max_dim = 3;
  const Json a = strip_timing(run_combs_suite(c).report.to_json());
  const Json b = strip_timing(run_combs_suite(c).report.to_json());
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_TRUE(a.at("pass").get<bool>());
  c.seed += 1;
  EXPECT_NE(strip_timing(run_combs_suite(c).report.to_json()).dump(), a.dump());
}

TEST(Suites, ConfigParsing) {
  const CombsConfig c = combs_config_from_json(Json{{"channels", 7}, {"tol", 1e-6}});
  EXPECT_EQ(c.channels, 7u);
  EXPECT_DOUBLE_EQ(c.tol, 1e-6);
  EXPECT_THROW(combs_config_from_json(Json{{"channels", "many"}}), Error);
  EXPECT_THROW(net_config_from_json(Json::parse(R"({"cells":[{"d1":2,"d2":3,"r":3,"mode":"odd"}]})")), Error);
  const NetConfig n = net_config_from_json(Json::parse(R"({"cells":[{"d1":4,"d2":3,"r":3}]})"));
  ASSERT_EQ(n.cells.size(), 1u);
  EXPECT_EQ(n.cells[0].mode, NetMode::kAuto);
}

}  // namespace
}  // namespace combcert
