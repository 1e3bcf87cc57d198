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
#include "combcert/error.hpp"
#include "combcert/parallel.hpp"
#include "combcert/suites.hpp"

namespace combcert {

namespace {

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string cell_id(const NetCell& c) {
  return "d1=" + std::to_string(c.d1) + ",d2=" + std::to_string(c.d2) +
         ",r=" + std::to_string(c.r);
}

NetParams params_of(const NetConfig& c, const NetCell& cell, std::uint64_t seed) {
  NetParams p;
  p.d1 = cell.d1;
  p.d2 = cell.d2;
  p.r = cell.r;
  p.epsilon = c.epsilon;
  p.mode = cell.mode;
  p.seed = seed;
  p.budget = c.budget;
  return p;
}

Json dims_json(const OddDims& o) {
  return Json{{"a", o.a},   {"a_prime", o.a_prime},   {"b0", o.b0},
              {"b1", o.b1}, {"b_prime", o.b_prime},   {"b0_prime", o.b0_prime},
              {"b1_prime", o.b1_prime}};
}

void net_cell(const NetConfig& c, const NetCell& cell, std::size_t index,
              VerificationReport& rep, Json& params_doc) {
  const std::string id = cell_id(cell);
  const std::uint64_t seed = derive_seed(c.seed, 100 + index);
  const NetParams p = params_of(c, cell, seed);
  const EpsilonRegime regime = epsilon_regime(p.epsilon);
  params_doc = Json{{"d1", p.d1}, {"d2", p.d2}, {"r", p.r}, {"epsilon", p.epsilon},
                    {"requested_mode", std::string(to_string(p.mode))}, {"seed", seed},
                    {"epsilon_regime", {{"even_construction_eps_below_1e-4", regime.even_construction},
                                        {"odd_construction_eps_at_most_1e-2", regime.odd_construction}}}};
  NetMode mode;
  try {
    mode = validate(p);
  } catch (const Error& e) {
    params_doc["skipped"] = e.what();
    rep.skip("regime/" + id, "Parameter regime of the net construction", seed,
             std::string("regime guard: ") + e.what());
    return;
  }
  const std::string mid = std::string(to_string(mode)) + "/" + id;
  params_doc["mode"] = std::string(to_string(mode));

  Rng rng(derive_seed(seed, 1));
  BlockIsometry blocks;
  bool built = false;
  rep.run("block-gram/" + mid,
          mode == NetMode::kEven ? "|tr(K_i^+ K_j)| <= (2 d1/r) 1_{i=j}"
                                 : "|tr(K_i'^+ K_j')| <= (3 d1/r) 1_{i=j}",
          seed, [&] {
            blocks = build_block_isometry(p, rng);
            built = true;
            CheckOutcome o = CheckOutcome::at_most(blocks.gram_excess(), 1e-9);
            o.note = "attempts " + std::to_string(blocks.attempts);
            return o;
          });
  if (!built) return;
  params_doc["attempts"] = blocks.attempts;
  params_doc["gram_bound"] = blocks.gram_bound;
  params_doc["gram"] = matrix_ref(blocks.gram, c.embed_matrices);
  params_doc["v0hat"] = matrix_ref(blocks.v0hat, c.embed_matrices);
  params_doc["twirl_dim"] = blocks.twirl_dim();
  if (blocks.dims) params_doc["subspace_dims"] = dims_json(*blocks.dims);

  rep.run("block-isometry/" + mid, "V0_hat is an isometry", seed, [&] {
    return CheckOutcome::at_most(isometry_residual(blocks.v0hat), 1e-10);
  });
  if (blocks.dims) {
    rep.run("block-subspaces/" + mid,
            "Odd decomposition: dim H_a = r(d2-1)/2, 1 <= eta <= floor(r/2), B = b0+b'+b1",
            seed, [&] {
              const OddDims& o = *blocks.dims;
              const bool ok = o.a == p.r * (p.d2 - 1) / 2 && o.a + o.a_prime == p.d1 &&
                              o.a_prime >= 1 && o.a_prime <= p.r / 2 &&
                              o.b0 + o.b1 + o.b_prime == p.d2 &&
                              o.b0_prime + o.b1_prime == p.r &&
                              o.a == o.b0 * p.r && o.a == o.b1 * p.r;
              CheckOutcome out;
              out.measured = dims_json(o);
              out.threshold = "consistent decomposition";
              out.pass = ok;
              return out;
            });
  }

  // Channel construction on one sampled U.
  const std::uint64_t u_seed = derive_seed(seed, 2);
  rep.run("net-channel/" + mid,
          "V = sqrt(1-eps^2) V0 + eps U Delta is an isometry; Kraus rank <= r; images orthogonal",
          u_seed, [&] {
            Rng urng(u_seed);
            const NetIsometry net =
                build_net_isometry(p, haar_unitary(blocks.twirl_dim(), urng), blocks);
            CheckOutcome o;
            o.measured = Json{{"isometry_residual", net.isometry_residual},
                              {"orthogonality_residual", net.orthogonality_residual},
                              {"kraus_rank", net.kraus_rank},
                              {"d_out", net.channel.d_out}};
            o.threshold = Json{{"isometry", 1e-10}, {"orthogonality", 1e-10}, {"kraus_rank", p.r},
                               {"d_out", mode == NetMode::kEven ? 2 * p.d2 : p.d2}};
            o.pass = net.isometry_residual <= 1e-10 && net.orthogonality_residual <= 1e-10 &&
                     net.kraus_rank <= p.r && net.channel.d_out == net.out_dim &&
                     net.out_dim == (mode == NetMode::kEven ? 2 * p.d2 : p.d2);
            o.residual = std::max(net.isometry_residual, net.orthogonality_residual);
            return o;
          });
  rep.run("net-eps-zero/" + mid, "At eps = 0 the channel does not depend on U", u_seed, [&] {
    Rng urng(derive_seed(u_seed, 1));
    NetParams z = p;
    z.epsilon = 0.0;
    const NetIsometry a = build_net_isometry(z, haar_unitary(blocks.twirl_dim(), urng), blocks);
    const NetIsometry b = build_net_isometry(z, haar_unitary(blocks.twirl_dim(), urng), blocks);
    return CheckOutcome::at_most(
        frobenius_distance(choi_from_kraus(a.channel), choi_from_kraus(b.channel)), 1e-10);
  });
  rep.run("f-operator-two-ways/" + mid,
          "F from the partial-trace definition equals the blockwise sum", u_seed, [&] {
            Rng urng(derive_seed(u_seed, 2));
            const ComplexMatrix ux = haar_unitary(blocks.twirl_dim(), urng);
            const ComplexMatrix uy = haar_unitary(blocks.twirl_dim(), urng);
            const double d = (f_operator(blocks, ux, uy) -
                              f_operator_blockwise(blocks, ux, uy)).norm();
            const double zero = f_operator(blocks, ux, ux).norm();
            CheckOutcome o = CheckOutcome::at_most(std::max(d, zero), 1e-10);
            o.measured = Json{{"definition_vs_blockwise", d}, {"same_pair_norm", zero}};
            return o;
          });

  if (mode == NetMode::kOdd) {
    const std::uint64_t m_seed = derive_seed(seed, 3);
    MomentReport mom;
    bool have = false;
    auto moments = [&] {
      if (!have) {
        mom = moment_audit(blocks, c.moment_samples, m_seed, c.jobs);
        have = true;
      }
      return mom;
    };
    rep.run("moment-second/" + mid, "E tr|F|^2 = (d2-1)/d1", m_seed, [&] {
      const MomentReport m = moments();
      const double target = static_cast<double>(p.d2 - 1) / static_cast<double>(p.d1);
      CheckOutcome o;
      o.measured = Json{{"mean", m.mean2}, {"stderr", m.stderr2}, {"samples", m.samples}};
      o.threshold = Json{{"expected", target}, {"sigmas", 4.0}};
      o.residual = std::abs(m.mean2 - target) / m.stderr2;
      o.pass = o.residual <= 4.0 && std::abs(m.expected2 - target) <= 1e-12;
      return o;
    });
    rep.run("moment-fourth/" + mid, "E tr|F|^4 <= 288/r^3", m_seed, [&] {
      const MomentReport m = moments();
      CheckOutcome o;
      o.measured = Json{{"mean", m.mean4}, {"stderr", m.stderr4}, {"samples", m.samples}};
      o.threshold = m.bound4;
      o.residual = m.mean4 - m.bound4;
      o.pass = m.mean4 <= m.bound4;
      return o;
    });
    const std::uint64_t l_seed = derive_seed(seed, 4);
    rep.run("lipschitz/" + mid, "f = tr|F| is sqrt(2/d1)-Lipschitz", l_seed, [&] {
      const LipschitzReport l = lipschitz_audit(blocks, c.lipschitz_trials, l_seed, c.jobs);
      CheckOutcome o;
      o.measured = Json{{"max_ratio", l.max_ratio}, {"violations", l.violations},
                        {"trials", l.trials}};
      o.threshold = Json{{"constant", l.constant}, {"slack", 1e-8}};
      o.residual = l.max_ratio - l.constant;
      o.pass = l.pass();
      return o;
    });
  }

  const std::uint64_t s_seed = derive_seed(seed, 5);
  SeparationReport sep;
  bool have_sep = false;
  auto separation = [&] {
    if (!have_sep) {
      sep = separation_audit(p, blocks, c.separation_pairs, s_seed, c.jobs);
      have_sep = true;
    }
    return sep;
  };
  const std::string choi_anchor = "min (1/d1)||C1 - C2||_1 >= 0.07 eps over sampled pairs";
  if (p.epsilon > 1e-2) {
    rep.skip("separation-choi/" + mid, choi_anchor, s_seed,
             "0.07 eps threshold assumes eps <= 0.01");
  } else {
    rep.run("separation-choi/" + mid, choi_anchor, s_seed, [&] {
      const SeparationReport s = separation();
      CheckOutcome o = CheckOutcome::at_least(s.min_choi, s.choi_threshold);
      o.note = "sampled surrogate over " + std::to_string(s.pairs) + " pairs";
      return o;
    });
  }
  rep.run("separation-f/" + mid, "min ||F(U1,U2)||_1 >= 0.05 over sampled pairs", s_seed, [&] {
    const SeparationReport s = separation();
    return CheckOutcome::at_least(s.min_f, s.f_threshold);
  });
  rep.run("separation-chain/" + mid,
          "(1/d1)||C1 - C2||_1 >= 2 eps sqrt(1-eps^2) ||F||_1 - 2 eps^2 per pair", s_seed, [&] {
            const SeparationReport s = separation();
            CheckOutcome o;
            o.measured = Json{{"violations", s.chain_violations},
                              {"min_intermediate", s.min_intermediate}};
            o.threshold = 0;
            o.pass = s.chain_violations == 0;
            o.residual = static_cast<double>(s.chain_violations);
            return o;
          });
  rep.run("separation-identities/" + mid,
          "||tr_anc|Delta_U>><<Delta_U| ||_1 = d1 and ||X + X^+||_1 = 2||X||_1", s_seed, [&] {
            const SeparationReport s = separation();
            CheckOutcome o;
            o.measured = Json{{"delta_trace", s.max_delta_trace_residual},
                              {"cross_term", s.max_cross_residual}};
            o.threshold = 1e-8;
            o.residual = std::max(s.max_delta_trace_residual, s.max_cross_residual);
            o.pass = o.residual <= 1e-8;
            return o;
          });
  rep.run("separation-channels/" + mid,
          "Every built channel: isometric, Kraus rank <= r, outputs in declared spaces",
          s_seed, [&] {
            const SeparationReport s = separation();
            CheckOutcome o;
            o.measured = Json{{"max_kraus_rank", s.max_kraus_rank},
                              {"max_isometry_residual", s.max_isometry_residual},
                              {"max_orthogonality_residual", s.max_orthogonality_residual},
                              {"outputs_ok", s.outputs_ok}};
            o.threshold = Json{{"kraus_rank", p.r}, {"residuals", 1e-10}};
            o.residual = std::max(s.max_isometry_residual, s.max_orthogonality_residual);
            o.pass = s.max_kraus_rank <= p.r && o.residual <= 1e-10 && s.outputs_ok;
            return o;
          });
  if (have_sep) {
    params_doc["separation"] = Json{{"min_choi", sep.min_choi}, {"min_f", sep.min_f},
                                    {"min_intermediate", sep.min_intermediate},
                                    {"pairs", sep.pairs}, {"seed", s_seed}};
  }
}

}  // namespace

NetConfig net_config_from_json(const Json& j) {
  NetConfig c;
  if (j.is_null()) return c;
  try {
    read(j, "seed", c.seed);
    if (j.contains("cells")) {
      c.cells.clear();
      for (const auto& x : j.at("cells")) {
        NetCell cell;
        cell.d1 = x.at("d1").get<std::size_t>();
        cell.d2 = x.at("d2").get<std::size_t>();
        cell.r = x.at("r").get<std::size_t>();
        if (x.contains("mode")) cell.mode = parse_net_mode(x.at("mode").get<std::string>());
        c.cells.push_back(cell);
      }
    }
    read(j, "epsilon", c.epsilon);
    read(j, "moment_samples", c.moment_samples);
    read(j, "lipschitz_trials", c.lipschitz_trials);
    read(j, "separation_pairs", c.separation_pairs);
    read(j, "budget", c.budget);
    read(j, "jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("net config: ") + e.what());
  }
  if (!(c.epsilon >= 0.0 && c.epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "net config: epsilon must lie in [0,1]");
  }
  if (c.moment_samples < 1000 || c.lipschitz_trials < 100 || c.separation_pairs < 50) {
    throw Error(ErrorCode::kInvalidArgument,
                "net config: need moment_samples >= 1000, lipschitz_trials >= 100, "
                "separation_pairs >= 50");
  }
  // An explicitly requested mode must be admissible; auto cells are skipped.
  for (const auto& cell : c.cells) {
    if (cell.mode != NetMode::kAuto) validate(params_of(c, cell, 0));
  }
  return c;
}

Json to_json(const NetConfig& c) {
  Json cells = Json::array();
  for (const auto& x : c.cells) {
    cells.push_back({{"d1", x.d1}, {"d2", x.d2}, {"r", x.r},
                     {"mode", std::string(to_string(x.mode))}});
  }
  return Json{{"seed", c.seed},
              {"cells", cells},
              {"epsilon", c.epsilon},
              {"moment_samples", c.moment_samples},
              {"lipschitz_trials", c.lipschitz_trials},
              {"separation_pairs", c.separation_pairs},
              {"budget", c.budget},
              {"cardinality_exponents", {{"even", "r d1 d2 / 1201"}, {"odd", "r d1 d2 / 100001"}}}};
}

SuiteOutput run_net_suite(const NetConfig& c) {
  SuiteOutput out{VerificationReport("net-instantiation", to_json(c)), {}};
  Json cells = Json::array();
  for (std::size_t k = 0; k < c.cells.size(); ++k) {
    Json doc;
    net_cell(c, c.cells[k], k, out.report, doc);
    cells.push_back(std::move(doc));
  }
  out.artifacts.push_back({"net_params.json", Json{{"schema", 1},
                                                   {"version", artifact_version()},
                                                   {"cells", cells}}});
  return out;
}

}  // namespace combcert
