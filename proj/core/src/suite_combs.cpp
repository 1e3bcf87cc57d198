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

#include <algorithm>
#include <cmath>

#include "combcert/channel.hpp"
#include "combcert/comb.hpp"
#include "combcert/error.hpp"
#include "combcert/suites.hpp"

namespace combcert {

namespace {

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::size_t at_least_rank(std::size_t d_in, std::size_t d_out) {
  return (d_in + d_out - 1) / d_out;
}

Channel sample_channel(std::size_t d_in, std::size_t d_out, Rng& rng) {
  const std::size_t lo = at_least_rank(d_in, d_out);
  const std::size_t hi = d_in * d_out;
  const std::size_t rank = lo + rng.below(hi - lo + 1);
  return random_channel(d_in, d_out, rank, rng);
}

double rel(double x, double scale) { return x / std::max(1.0, scale); }

}  // namespace

CombsConfig combs_config_from_json(const Json& j) {
  CombsConfig c;
  if (j.is_null()) return c;
  try {
    read(j, "seed", c.seed);
    read(j, "channels", c.channels);
    read(j, "max_dim", c.max_dim);
    read(j, "pairs", c.pairs);
    read(j, "jobs", c.jobs);
    if (j.contains("tol")) {
      c.tol = j.at("tol").get<double>();
      c.link_tol = c.tol;
    }
    read(j, "link_tol", c.link_tol);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("combs config: ") + e.what());
  }
  if (c.max_dim < 1 || c.channels < 1 || c.pairs < 1 || !(c.tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "combs config: bad sizes or tol");
  }
  return c;
}

Json to_json(const CombsConfig& c) {
  return Json{{"seed", c.seed},         {"channels", c.channels},
              {"max_dim", c.max_dim},   {"pairs", c.pairs},
              {"tol", c.tol},           {"link_tol", c.link_tol}};
}

SuiteOutput run_combs_suite(const CombsConfig& c) {
  SuiteOutput out{VerificationReport("combs", to_json(c)), {}};
  VerificationReport& rep = out.report;

  // Channel representations.
  const std::uint64_t ch_seed = derive_seed(c.seed, 1);
  rep.run("channel-choi-is-1-comb", "Choi operator of a channel is a 1-comb",
          ch_seed, [&] {
            Rng rng(ch_seed);
            double worst = 0.0;
            bool ok = true;
            for (std::size_t t = 0; t < c.channels; ++t) {
              const std::size_t a = 1 + rng.below(c.max_dim);
              const std::size_t b = 1 + rng.below(c.max_dim);
              const Channel ch = sample_channel(a, b, rng);
              const CombCheck chk = certify_comb(choi_from_kraus(ch), {"A", "B"}, c.tol);
              worst = std::max(worst, chk.residual);
              ok = ok && chk.ok;
            }
            CheckOutcome o = CheckOutcome::at_most(worst, c.tol);
            o.pass = o.pass && ok;
            o.note = std::to_string(c.channels) + " channels, d <= " +
                     std::to_string(c.max_dim);
            return o;
          });

  const std::uint64_t rt_seed = derive_seed(c.seed, 2);
  rep.run("channel-kraus-choi-roundtrip",
          "Kraus -> Choi -> Kraus preserves the channel", rt_seed, [&] {
            Rng rng(rt_seed);
            double worst = 0.0;
            bool rank_ok = true;
            for (std::size_t t = 0; t < c.channels; ++t) {
              const std::size_t a = 1 + rng.below(c.max_dim);
              const std::size_t b = 1 + rng.below(c.max_dim);
              const Channel ch = sample_channel(a, b, rng);
              const LabeledOperator c1 = choi_from_kraus(ch);
              const Channel back = kraus_from_choi(c1);
              back.validate();
              const LabeledOperator c2 = choi_from_kraus(back);
              worst = std::max(worst, rel(frobenius_distance(c1, c2),
                                          c1.matrix().norm()));
              const std::size_t k = kraus_rank(ch);
              rank_ok = rank_ok && k >= at_least_rank(a, b) && k <= a * b &&
                        back.kraus.size() == k;
            }
            CheckOutcome o = CheckOutcome::at_most(worst, 1e-9);
            o.pass = o.pass && rank_ok;
            if (!rank_ok) o.note = "Kraus rank outside [d_in/d_out, d_in*d_out]";
            return o;
          });

  const std::uint64_t mix_seed = derive_seed(c.seed, 3);
  rep.run("channel-kraus-remixing", "Choi is invariant under unitary Kraus remixing",
          mix_seed, [&] {
            Rng rng(mix_seed);
            double worst = 0.0;
            for (std::size_t t = 0; t < c.channels; ++t) {
              const std::size_t a = 1 + rng.below(c.max_dim);
              const std::size_t b = 1 + rng.below(c.max_dim);
              const Channel ch = sample_channel(a, b, rng);
              const ComplexMatrix u = haar_unitary(ch.kraus.size(), rng);
              std::vector<ComplexMatrix> mixed;
              for (std::size_t i = 0; i < ch.kraus.size(); ++i) {
                ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(ch.d_out),
                                                  static_cast<Eigen::Index>(ch.d_in));
                for (std::size_t j = 0; j < ch.kraus.size(); ++j) {
                  e += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                       ch.kraus[j];
                }
                mixed.push_back(e);
              }
              worst = std::max(worst, frobenius_distance(choi_from_kraus(ch),
                                                         choi_from_kraus(make_channel(mixed))));
            }
            return CheckOutcome::at_most(worst, 1e-9);
          });

  const std::uint64_t st_seed = derive_seed(c.seed, 4);
  rep.run("channel-stinespring-gauge",
          "Stinespring dilations agree up to an ancilla unitary", st_seed, [&] {
            Rng rng(st_seed);
            double worst = 0.0;
            for (std::size_t t = 0; t < c.channels; ++t) {
              const std::size_t a = 1 + rng.below(c.max_dim);
              const std::size_t b = 1 + rng.below(c.max_dim);
              const Channel ch = sample_channel(a, b, rng);
              const StinespringIsometry s = stinespring(ch);
              const ComplexMatrix w = haar_unitary(s.anc_dim, rng);
              const ComplexMatrix v2 = kron(w, identity(ch.d_out)) * s.v;
              const LabeledOperator c0 = choi_from_kraus(ch);
              worst = std::max(
                  {worst,
                   frobenius_distance(c0, choi_from_kraus(channel_from_isometry(s.v, s.anc_dim))),
                   frobenius_distance(c0, choi_from_kraus(channel_from_isometry(v2, s.anc_dim)))});
            }
            return CheckOutcome::at_most(worst, 1e-8);
          });

  // Link product.
  const std::uint64_t link_seed = derive_seed(c.seed, 5);
  rep.run("link-vs-kraus-composition",
          "Link product of Choi operators equals the Choi of the composition",
          link_seed, [&] {
            Rng rng(link_seed);
            double worst = 0.0;
            for (std::size_t t = 0; t < c.channels; ++t) {
              const std::size_t a = 1 + rng.below(c.max_dim);
              const std::size_t b = 1 + rng.below(c.max_dim);
              const std::size_t d = 1 + rng.below(c.max_dim);
              const Channel e1 = sample_channel(a, b, rng);
              const Channel e2 = sample_channel(b, d, rng);
              const LabeledOperator l =
                  link_product(choi_from_kraus(e2, "C", "B"), choi_from_kraus(e1, "B", "A"));
              worst = std::max(worst, frobenius_distance(
                                          l, choi_from_kraus(compose(e2, e1), "C", "A")));
            }
            return CheckOutcome::at_most(worst, c.link_tol);
          });

  const std::uint64_t alg_seed = derive_seed(c.seed, 6);
  rep.run("link-commutativity", "X*Y = Y*X up to label order", alg_seed, [&] {
    Rng rng(alg_seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < c.pairs; ++t) {
      const std::size_t a = 1 + rng.below(c.max_dim), b = 1 + rng.below(c.max_dim),
                        d = 1 + rng.below(c.max_dim);
      const LabeledOperator x(random_density(a * b, rng), {{"B", b}, {"A", a}});
      const LabeledOperator y(random_density(d * b, rng), {{"C", d}, {"B", b}});
      worst = std::max(worst, frobenius_distance(link_product(x, y), link_product(y, x)));
    }
    return CheckOutcome::at_most(worst, 1e-12);
  });

  rep.run("link-positivity", "X,Y PSD implies X*Y PSD", alg_seed + 1, [&] {
    Rng rng(alg_seed + 1);
    double worst = INFINITY;
    for (std::size_t t = 0; t < c.pairs; ++t) {
      const std::size_t a = 1 + rng.below(c.max_dim), b = 1 + rng.below(c.max_dim),
                        d = 1 + rng.below(c.max_dim);
      const LabeledOperator x(random_density(a * b, rng, 1 + rng.below(a * b)),
                              {{"B", b}, {"A", a}});
      const LabeledOperator y(random_density(d * b, rng, 1 + rng.below(d * b)),
                              {{"C", d}, {"B", b}});
      const ComplexMatrix z = link_product(x, y).matrix();
      worst = std::min(worst, min_eigenvalue(hermitian_part(z)) /
                                  std::max(1.0, operator_norm(z)));
    }
    return CheckOutcome::at_least(worst, -1e-9);
  });

  rep.run("link-associativity",
          "(X*Y)*Z = X*(Y*Z) without a common subsystem", alg_seed + 2, [&] {
            Rng rng(alg_seed + 2);
            double worst = 0.0;
            for (std::size_t t = 0; t < c.pairs; ++t) {
              const std::size_t a = 1 + rng.below(3), b = 1 + rng.below(3),
                                d = 1 + rng.below(3), e = 1 + rng.below(3);
              const LabeledOperator x(random_density(a * b, rng), {{"B", b}, {"A", a}});
              const LabeledOperator y(random_density(d * b, rng), {{"C", d}, {"B", b}});
              const LabeledOperator z(random_density(e * d, rng), {{"D", e}, {"C", d}});
              worst = std::max(worst,
                               frobenius_distance(link_product(link_product(x, y), z),
                                                  link_product(x, link_product(y, z))));
            }
            return CheckOutcome::at_most(worst, 1e-10);
          });

  // Combs and testers.
  const std::uint64_t comb_seed = derive_seed(c.seed, 7);
  rep.run("comb-convexity", "Convex mixtures of n-combs are n-combs", comb_seed, [&] {
    Rng rng(comb_seed);
    double worst = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t < c.pairs; ++t) {
      const std::size_t n = 1 + rng.below(2);
      SpaceList seq;
      for (std::size_t j = 1; j <= n; ++j) {
        seq.push_back({"A" + std::to_string(j), 1 + rng.below(3)});
        seq.push_back({"B" + std::to_string(j), 1 + rng.below(3)});
      }
      const Comb x = random_comb(seq, 2, rng);
      const Comb y = random_comb(seq, 3, rng);
      const double p = rng.uniform();
      const LabeledOperator mix = Complex(p) * x.op + Complex(1.0 - p) * y.op;
      const CombCheck chk = certify_comb(mix, x.sequence, c.tol);
      worst = std::max(worst, chk.residual);
      ok = ok && chk.ok;
    }
    CheckOutcome o = CheckOutcome::at_most(worst, c.tol);
    o.pass = o.pass && ok;
    return o;
  });

  const std::uint64_t ct_seed = derive_seed(c.seed, 8);
  rep.run("tester-contraction",
          "sum_i T_i * N = 1 for a tester and an n-comb", ct_seed, [&] {
            Rng rng(ct_seed);
            double worst = 0.0, min_p = INFINITY;
            bool valid = true;
            for (std::size_t t = 0; t < c.pairs; ++t) {
              const std::size_t n = 1 + rng.below(2);
              const std::size_t da = 1 + rng.below(3), db = 1 + rng.below(3);
              const Tester tester = random_tester(n, da, db, 2 + rng.below(3), rng);
              const TesterCheck chk = validate_tester(tester, c.tol);
              valid = valid && chk.ok;
              SpaceList seq;
              for (const auto& l : tester.uses) seq.push_back({l, l[0] == 'A' ? da : db});
              const Comb net = random_comb(seq, 1 + rng.below(3), rng);
              const std::vector<double> p = success_probability(tester, net.op);
              double s = 0.0;
              for (double q : p) {
                s += q;
                min_p = std::min(min_p, q);
              }
              worst = std::max(worst, std::abs(s - 1.0));
            }
            CheckOutcome o = CheckOutcome::at_most(worst, c.tol);
            o.pass = o.pass && valid && min_p >= -1e-12;
            o.note = "min outcome probability " + std::to_string(min_p);
            return o;
          });

  const std::uint64_t pm_seed = derive_seed(c.seed, 9);
  rep.run("tester-prepare-measure",
          "Prepare-and-measure strategies are valid 1-testers", pm_seed, [&] {
            Rng rng(pm_seed);
            double worst = 0.0;
            bool valid = true;
            for (std::size_t t = 0; t < c.pairs; ++t) {
              const std::size_t da = 1 + rng.below(3), db = 1 + rng.below(3),
                                dr = 1 + rng.below(3);
              const Tester tester = prepare_measure_tester(
                  random_density(da * dr, rng), random_povm(db * dr, 2 + rng.below(3), rng),
                  da, db, dr);
              const TesterCheck chk = validate_tester(tester, c.tol);
              valid = valid && chk.ok;
              double s = 0.0;
              for (double q : success_probability(tester, sample_channel(da, db, rng))) s += q;
              worst = std::max(worst, std::abs(s - 1.0));
            }
            CheckOutcome o = CheckOutcome::at_most(worst, c.tol);
            o.pass = o.pass && valid;
            return o;
          });

  return out;
}

}  // namespace combcert
