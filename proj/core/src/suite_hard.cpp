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
#include <map>
#include <stdexcept>

#include "combcert/comb.hpp"
#include "combcert/domination.hpp"
#include "combcert/error.hpp"
#include "combcert/hard_instance.hpp"
#include "combcert/inequalities.hpp"
#include "combcert/parallel.hpp"
#include "combcert/suites.hpp"

namespace combcert {

namespace {

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string cell_id(std::size_t d1, std::size_t d2, std::size_t n) {
  return "d1=" + std::to_string(d1) + ",d2=" + std::to_string(d2) +
         ",n=" + std::to_string(n);
}

std::string eps_str(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", e);
  return buf;
}

// G·M for G = (R ⊗ I_A)^{⊗n}, column by column.
ComplexMatrix rotate_left(const ComplexMatrix& rot, const ComplexMatrix& m,
                          std::size_t n, std::size_t d1) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    out.col(c) = apply_rotation(rot, m.col(c), n, d1);
  }
  return out;
}

// ‖GΓ − ΓG‖_F for Hermitian Γ, with ΓG = (G†Γ)†.
double commutator_norm(const ComplexMatrix& rot, const ComplexMatrix& g,
                       std::size_t n, std::size_t d1) {
  const ComplexMatrix left = rotate_left(rot, g, n, d1);
  const ComplexMatrix right = rotate_left(rot.adjoint(), g, n, d1).adjoint();
  return (left - right).norm();
}

GammaFamily family_for(const HardInstanceSpec& spec, std::size_t n,
                       TwirlMethod requested, std::uint64_t seed,
                       std::size_t samples, std::string& note) {
  TwirlOptions opt;
  opt.method = requested;
  opt.seed = seed;
  opt.samples = samples;
  if (requested == TwirlMethod::kExactCommutant &&
      !exact_commutant_fits(n, spec.d2)) {
    opt.method = TwirlMethod::kWeingarten;
    note = "d2^n exceeds the commutant cap; Weingarten used";
  }
  return gamma_family(spec, n, opt);
}

// One (d1, d2, n) cell of the γ / Γ checks.
void hard_cell(const HardConfig& c, std::size_t d1, std::size_t d2,
               std::size_t n, VerificationReport& rep, Json& gamma_json,
               Json& instance_json) {
  const std::string id = cell_id(d1, d2, n);
  const std::uint64_t seed = derive_seed(c.seed, 1000 + 100 * d1 + 10 * d2 + n);
  const HardInstanceSpec spec = sample_hard_instance(d1, d2, 0.1, seed);
  instance_json = to_json(spec);
  const double vnorm = std::pow(static_cast<double>(d1), 0.5 * static_cast<double>(n));

  rep.run("instance-residuals/" + id, "Hard isometry: V0, Delta isometries with orthogonal images",
          seed, [&] {
            const HardInstanceResiduals r = residuals(spec);
            return CheckOutcome::at_most(
                std::max({r.v0_isometry, r.delta_isometry, r.orthogonality,
                          r.v_isometry, r.u_unitarity}),
                1e-10);
          });
  rep.run("expansion/" + id,
          "|V>>^n = sum_i c_i R(U)^n gamma_i (binomial expansion over subsets)",
          seed, [&] {
            return CheckOutcome::at_most(expansion_residual(spec, n),
                                         1e-9 * std::max(1.0, vnorm));
          });
  rep.run("gamma-comb/" + id, "|gamma_i><gamma_i| is an n-comb", seed, [&] {
    double worst = 0.0;
    bool ok = true;
    const auto seq = hard_comb_sequence(n);
    for (std::size_t i = 0; i <= n; ++i) {
      const LabeledOperator g = LabeledOperator::projector(
          gamma_state(n, i, spec), hard_spaces(n, d1, d2));
      const CombCheck chk = certify_comb(g, seq, 1e-8);
      worst = std::max(worst, chk.residual);
      ok = ok && chk.ok;
    }
    CheckOutcome o = CheckOutcome::at_most(worst, 1e-8);
    o.pass = o.pass && ok;
    return o;
  });
  if (n >= 2) {
    rep.run("gamma-recursion/" + id,
            "tr_Bn |gamma_i^n><gamma_i^n| splits into the (n-1) gamma_i and gamma_{i-1} terms",
            seed, [&] {
              double worst = 0.0;
              for (std::size_t i = 0; i <= n; ++i) {
                worst = std::max(worst, gamma_recursion_residual(n, i, spec));
              }
              return CheckOutcome::at_most(worst, 1e-9);
            });
  }

  std::string note;
  const std::uint64_t fam_seed = derive_seed(seed, 1);
  GammaFamily fam;
  try {
    fam = family_for(spec, n, c.method, fam_seed, c.mc_samples, note);
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    rep.run("twirled-comb/" + id, "Gamma_i is an n-comb", fam_seed,
            [&]() -> CheckOutcome { throw std::runtime_error(msg); });
    return;
  }
  const bool exact = fam.method != TwirlMethod::kMonteCarlo;
  Json per_i = Json::array();

  rep.run("twirled-comb/" + id, "Gamma_i is an n-comb", fam_seed, [&] {
    double worst = 0.0;
    bool ok = true;
    const auto seq = hard_comb_sequence(n);
    for (std::size_t i = 0; i <= n; ++i) {
      const CombCheck chk =
          certify_comb(LabeledOperator(fam.twirled[i], fam.spaces), seq, 1e-7);
      worst = std::max(worst, chk.residual);
      ok = ok && chk.ok;
    }
    CheckOutcome o = CheckOutcome::at_most(worst, 1e-7);
    o.pass = o.pass && ok;
    o.note = std::string("method ") + std::string(to_string(fam.method)) +
             (note.empty() ? "" : "; " + note);
    return o;
  });

  std::vector<double> trace_values;
  if (!exact) {
    const std::string why = "Monte Carlo estimates are not exact (method mc)";
    rep.skip("twirl-invariance/" + id, "Gamma_i commutes with the group action", fam_seed, why);
    rep.skip("support-orthogonality/" + id, "tr(Gamma_i Gamma_j) = 0 for i != j", fam_seed, why);
    rep.skip("trace-bound/" + id, "tr(Gamma_i^+ |gamma_i><gamma_i|) <= binom(d1 d2 + i - 2, i)",
             fam_seed, why);
  } else {
    const std::uint64_t inv_seed = derive_seed(seed, 2);
    rep.run("twirl-invariance/" + id, "Gamma_i commutes with the group action", inv_seed, [&] {
      Rng rng(inv_seed);
      double worst = 0.0;
      for (int g = 0; g < 10; ++g) {
        const ComplexMatrix rot = spec.rotation(haar_unitary(spec.k(), rng));
        for (const auto& gm : fam.twirled) {
          worst = std::max(worst, commutator_norm(rot, gm, n, d1) /
                                      std::max(1e-300, gm.norm()));
        }
      }
      return CheckOutcome::at_most(worst, 1e-8);
    });
    rep.run("support-orthogonality/" + id, "tr(Gamma_i Gamma_j) = 0 for i != j", fam_seed, [&] {
      double worst = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
          const Complex t = (fam.twirled[i].adjoint().cwiseProduct(fam.twirled[j].transpose())).sum();
          worst = std::max(worst, std::abs(t) / (fam.twirled[i].norm() * fam.twirled[j].norm()));
        }
      }
      return CheckOutcome::at_most(worst, 1e-8);
    });
    rep.run("trace-bound/" + id,
            "tr(Gamma_i^+ |gamma_i><gamma_i|) <= binom(d1 d2 + i - 2, i)", fam_seed, [&] {
              trace_values = gamma_trace_values(fam);
              double worst = -INFINITY;
              for (std::size_t i = 0; i <= n; ++i) {
                worst = std::max(worst, trace_values[i] / gamma_trace_formula(d1, d2, i) - 1.0);
              }
              CheckOutcome o = CheckOutcome::at_most(worst, 1e-6);
              o.note = "measured is max_i value/formula - 1";
              return o;
            });
  }

  // Cross-validation wherever the commutant route applies.
  if (exact_commutant_fits(n, d2)) {
    const std::uint64_t proj_seed = derive_seed(seed, 3);
    const CommutantProjector proj = hard_commutant(spec, n, proj_seed);
    std::vector<ComplexMatrix> ex;
    for (std::size_t i = 0; i <= n; ++i) {
      const ComplexVector g = gamma_state(n, i, spec);
      ex.push_back(hermitian_part(commutant_twirl(proj, g * g.adjoint(), n, d1, d2)));
    }
    rep.run("projector-idempotence/" + id, "The commutant projection is idempotent",
            proj_seed, [&] {
              double worst = 0.0;
              for (std::size_t i = 0; i <= n; ++i) {
                worst = std::max(worst, (commutant_twirl(proj, ex[i], n, d1, d2) - ex[i]).norm());
              }
              return CheckOutcome::at_most(worst, 1e-10);
            });
    rep.run("exact-vs-weingarten/" + id,
            "Commutant projection and Weingarten sum give the same Gamma_i", proj_seed, [&] {
              double worst = 0.0;
              for (std::size_t i = 0; i <= n; ++i) {
                worst = std::max(worst, (ex[i] - weingarten_twirl(n, i, spec)).norm());
              }
              return CheckOutcome::at_most(worst, 1e-8);
            });
    const std::uint64_t mc_seed = derive_seed(seed, 4);
    rep.run("exact-vs-monte-carlo/" + id,
            "Monte Carlo twirl converges to Gamma_i at rate d1^n/sqrt(N)", mc_seed, [&] {
              double worst = 0.0;
              for (std::size_t i = 0; i <= n; ++i) {
                const ComplexMatrix mc = monte_carlo_twirl(
                    spec, n, gamma_state(n, i, spec), c.mc_samples,
                    derive_seed(mc_seed, i + 1), 1);
                worst = std::max(worst, (ex[i] - mc).norm());
              }
              const double se =
                  vnorm * vnorm / std::sqrt(static_cast<double>(c.mc_samples));
              CheckOutcome o = CheckOutcome::at_most(worst, 5.0 * se);
              o.note = "N=" + std::to_string(c.mc_samples);
              return o;
            });
  }

  for (std::size_t i = 0; i <= n; ++i) {
    Json r{{"i", i},
           {"gamma_norm2", gamma_state(n, i, spec).squaredNorm()},
           {"twirled", matrix_ref(fam.twirled[i], c.embed_matrices)},
           {"trace_formula", gamma_trace_formula(d1, d2, i)}};
    if (i < trace_values.size()) r["trace_value"] = trace_values[i];
    per_i.push_back(std::move(r));
  }
  gamma_json = Json{{"d1", d1},
                    {"d2", d2},
                    {"n", n},
                    {"method", std::string(to_string(fam.method))},
                    {"seed", fam_seed},
                    {"samples", fam.samples},
                    {"standard_error", fam.standard_error},
                    {"commutant_dim", fam.commutant_dim},
                    {"per_i", per_i}};
}

}  // namespace

HardConfig hard_config_from_json(const Json& j) {
  HardConfig c;
  if (j.is_null()) return c;
  try {
    read(j, "seed", c.seed);
    if (j.contains("comb_cells")) {
      c.comb_cells.clear();
      for (const auto& x : j.at("comb_cells")) {
        c.comb_cells.push_back({x.at("d1").get<std::size_t>(), x.at("d2").get<std::size_t>()});
      }
    }
    read(j, "n_max", c.n_max);
    if (j.contains("method")) c.method = parse_twirl_method(j.at("method").get<std::string>());
    read(j, "mc_samples", c.mc_samples);
    read(j, "domination_d1", c.domination_d1);
    read(j, "domination_d2", c.domination_d2);
    read(j, "epsilons", c.epsilons);
    read(j, "domination_n_max", c.domination_n_max);
    read(j, "u_samples", c.u_samples);
    read(j, "tamper_lambda", c.tamper_lambda);
    read(j, "trace_trials", c.trace_trials);
    read(j, "trace_max_d", c.trace_max_d);
    read(j, "span_max_d", c.span_max_d);
    read(j, "span_max_n", c.span_max_n);
    read(j, "quadratic_trials", c.quadratic_trials);
    read(j, "jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("hard config: ") + e.what());
  }
  for (const auto& d : c.comb_cells) {
    if (d.d1 < 1 || d.d2 <= d.d1) {
      throw Error(ErrorCode::kInvalidArgument, "hard config: need d2 > d1 >= 1");
    }
  }
  for (double e : c.epsilons) {
    if (!(e > 0.0 && e <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "hard config: epsilon must lie in (0,1]");
    }
  }
  if (c.domination_d1 < 1 || c.mc_samples < 1 || c.n_max < 1 || !(c.tamper_lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "hard config: bad sizes");
  }
  return c;
}

Json to_json(const HardConfig& c) {
  Json cells = Json::array();
  for (const auto& d : c.comb_cells) cells.push_back({{"d1", d.d1}, {"d2", d.d2}});
  return Json{{"seed", c.seed},
              {"comb_cells", cells},
              {"n_max", c.n_max},
              {"method", std::string(to_string(c.method))},
              {"mc_samples", c.mc_samples},
              {"domination_d1", c.domination_d1},
              {"domination_d2", c.domination_d2},
              {"epsilons", c.epsilons},
              {"domination_n_max", c.domination_n_max},
              {"u_samples", c.u_samples},
              {"tamper_lambda", c.tamper_lambda},
              {"trace_trials", c.trace_trials},
              {"trace_max_d", c.trace_max_d},
              {"span_max_d", c.span_max_d},
              {"span_max_n", c.span_max_n},
              {"quadratic_trials", c.quadratic_trials},
              {"cardinality_constant_C", "not fixed; exposed as a report parameter"}};
}

SuiteOutput run_hard_suite(const HardConfig& c) {
  SuiteOutput out{VerificationReport("hard-instance", to_json(c)), {}};
  VerificationReport& rep = out.report;

  // γ / Γ cells, in parallel; gathered in grid order.
  struct Cell {
    std::size_t d1, d2, n;
  };
  std::vector<Cell> cells;
  for (const auto& d : c.comb_cells) {
    for (std::size_t n = 1; n <= c.n_max; ++n) cells.push_back({d.d1, d.d2, n});
  }
  std::vector<VerificationReport> cell_reps(cells.size(), VerificationReport("cell"));
  std::vector<Json> gamma_docs(cells.size()), inst_docs(cells.size());
  parallel_for(cells.size(), c.jobs, [&](std::size_t k) {
    hard_cell(c, cells[k].d1, cells[k].d2, cells[k].n, cell_reps[k], gamma_docs[k],
              inst_docs[k]);
  });
  Json gamma_cells = Json::array(), instances = Json::array();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    rep.append(cell_reps[k]);
    if (!gamma_docs[k].is_null()) gamma_cells.push_back(gamma_docs[k]);
    instances.push_back(inst_docs[k]);
  }

  // Domination with the λ-schedule.
  const std::size_t d1 = c.domination_d1;
  std::map<std::pair<std::size_t, std::size_t>, GammaFamily> families;
  for (std::size_t d2 : c.domination_d2) {
    for (double eps : c.epsilons) {
      const std::size_t cap = schedule_cap(d1, d2, eps);
      for (std::size_t n = 1; n <= c.domination_n_max; ++n) {
        const std::string id =
            "domination/" + cell_id(d1, d2, n) + ",eps=" + eps_str(eps);
        const std::uint64_t seed = derive_seed(c.seed, 5000 + 100 * d2 + 10 * n) ^
                                   static_cast<std::uint64_t>(std::llround(eps * 1e6));
        const std::string anchor =
            "sum_i lambda_i Gamma_i dominates |V>><<V|^n (quadratic form <= 1)";
        if (n > cap) {
          rep.skip(id, anchor, seed,
                   "hypothesis n <= d1*d2/(B*eps^2) violated (cap " + std::to_string(cap) + ")");
          rep.skip("lambda-sum/" + cell_id(d1, d2, n) + ",eps=" + eps_str(eps),
                   "sum_i lambda_i <= 3 d1^2 d2^2 exp(sqrt(8 n eps^2 d1 d2))", seed,
                   "hypothesis n <= d1*d2/(B*eps^2) violated");
          continue;
        }
        LambdaSchedule sched = lambda_schedule(n, d1, d2, eps);
        rep.run("lambda-sum/" + cell_id(d1, d2, n) + ",eps=" + eps_str(eps),
                "sum_i lambda_i <= 3 d1^2 d2^2 exp(sqrt(8 n eps^2 d1 d2))", seed,
                [&] { return CheckOutcome::at_most(sched.sum(), sched.sum_bound()); });
        for (double& l : sched.lambdas) l *= c.tamper_lambda;

        rep.run(id, anchor, seed, [&] {
          const auto key = std::make_pair(d2, n);
          if (!families.count(key)) {
            TwirlOptions opt;
            opt.seed = derive_seed(c.seed, 6000 + 10 * d2 + n);
            opt.method = exact_commutant_fits(n, d2) ? TwirlMethod::kExactCommutant
                                                     : TwirlMethod::kWeingarten;
            families[key] = gamma_family(sample_hard_instance(d1, d2, eps, 0), n, opt);
          }
          const GammaFamily& fam = families.at(key);
          double max_q = 0.0, max_support = 0.0, worst_eig = INFINITY;
          bool ok = true, direct = true;
          for (std::size_t u = 0; u < c.u_samples; ++u) {
            const HardInstanceSpec spec = sample_hard_instance(d1, d2, eps, derive_seed(seed, u));
            const DominationReport dr = domination_check(spec, fam, sched);
            ok = ok && dr.pass();
            max_q = std::max(max_q, dr.q);
            max_support = std::max(max_support, dr.support_residual);
            if (dr.min_eigenvalue) {
              worst_eig = std::min(worst_eig, *dr.min_eigenvalue / sched.sum());
            } else {
              direct = false;
            }
            if (u == 0) instances.push_back(to_json(spec));
          }
          CheckOutcome o;
          o.measured = Json{{"max_q", max_q},
                            {"min_eig_over_lambda_sum", direct ? Json(worst_eig) : Json()},
                            {"max_support_residual", max_support},
                            {"u_samples", c.u_samples}};
          o.threshold = Json{{"q", 1.0}, {"min_eig_over_lambda_sum", -1e-8}};
          o.pass = ok;
          o.residual = max_q - 1.0;
          if (c.tamper_lambda != 1.0) o.note = "lambda scaled by " + eps_str(c.tamper_lambda);
          return o;
        });
      }
    }
  }

  // Twirl trace bound under full U(d) and under the hard action.
  const std::uint64_t tb_seed = derive_seed(c.seed, 7000);
  for (std::size_t d = 2; d <= c.trace_max_d; ++d) {
    const std::uint64_t s = derive_seed(tb_seed, d);
    rep.run("trace-bound-unitary/d=" + std::to_string(d),
            "tr(twirl(X)^+ X) <= dim H under U(d) conjugation", s, [&] {
              Rng rng(s);
              auto full = [d](const ComplexMatrix& x) {
                return ComplexMatrix(identity(d) * (x.trace() / static_cast<double>(d)));
              };
              double worst = 0.0;
              for (std::size_t t = 0; t < c.trace_trials; ++t) {
                const ComplexMatrix x = random_density(d, rng, 1 + rng.below(d));
                const TraceBoundReport r = twirl_trace_bound_check(x, full);
                worst = std::max(worst, r.value / r.dim);
              }
              const ComplexVector psi = haar_state(d, rng);
              const TraceBoundReport eq = twirl_trace_bound_check(psi * psi.adjoint(), full);
              CheckOutcome o = CheckOutcome::at_most(worst, 1.0 + 1e-6);
              const double gap = std::abs(eq.value - eq.dim);
              o.pass = o.pass && gap <= 1e-6;
              o.measured = Json{{"max_ratio", worst}, {"pure_equality_gap", gap}};
              return o;
            });
  }
  for (std::size_t d2 : {2u, 3u}) {
    for (std::size_t n = 1; n <= 2; ++n) {
      const std::uint64_t s = derive_seed(tb_seed, 100 + 10 * d2 + n);
      rep.run("trace-bound-hard-action/" + cell_id(1, d2, n),
              "tr(twirl(X)^+ X) <= dim H under the (I+U)^n action", s, [&] {
                Rng rng(s);
                const HardInstanceSpec spec = sample_hard_instance(1, d2, 0.1, s);
                const CommutantProjector proj = hard_commutant(spec, n, derive_seed(s, 1));
                auto tw = [&](const ComplexMatrix& x) { return proj.apply(x); };
                const std::size_t dim = proj.group_dim();
                double worst = 0.0;
                for (std::size_t t = 0; t < c.trace_trials; ++t) {
                  const ComplexMatrix x = random_density(dim, rng, 1 + rng.below(dim));
                  const TraceBoundReport r = twirl_trace_bound_check(x, tw);
                  worst = std::max(worst, r.value / r.dim);
                }
                return CheckOutcome::at_most(worst, 1.0 + 1e-6);
              });
    }
  }

  // Symmetric-span dimension.
  const std::uint64_t sp_seed = derive_seed(c.seed, 8000);
  rep.run("symmetric-span-dimension",
          "dim span{sum_|S|=m psi^S 0^(n-S)} = binom(d+m-1, m)", sp_seed, [&] {
            Rng rng(sp_seed);
            std::size_t cases = 0, mismatches = 0;
            std::string first;
            for (std::size_t d = 1; d <= c.span_max_d; ++d) {
              for (std::size_t n = 1; n <= c.span_max_n; ++n) {
                for (std::size_t m = 0; m <= n; ++m) {
                  const SpanDimension s = symmetric_span_dim(d, n, m, rng);
                  ++cases;
                  if (!s.pass()) {
                    if (mismatches++ == 0) {
                      first = "d=" + std::to_string(d) + ",n=" + std::to_string(n) +
                              ",m=" + std::to_string(m) + ": " + std::to_string(s.oracle) +
                              " vs " + std::to_string(s.formula);
                    }
                  }
                }
              }
            }
            CheckOutcome o;
            o.measured = Json{{"cases", cases}, {"mismatches", mismatches}};
            o.threshold = 0;
            o.pass = mismatches == 0;
            o.residual = static_cast<double>(mismatches);
            o.note = first;
            return o;
          });

  // Scalar facts.
  auto audit = [&](const std::string& id, const std::string& anchor, std::uint64_t s,
                   const std::function<AuditResult()>& fn) {
    rep.run(id, anchor, s, [&] {
      const AuditResult a = fn();
      CheckOutcome o;
      o.measured = Json{{"checks", a.checks}, {"violations", a.violations},
                        {"worst_slack", a.worst_slack}};
      o.threshold = Json{{"violations", 0}, {"tol", 1e-12}};
      o.pass = a.pass();
      o.residual = static_cast<double>(a.violations);
      o.note = a.first_violation;
      return o;
    });
  };
  audit("fact-binomial", "binom(n,k) <= exp(n H(k/n)) and the KL tail bound", 0,
        [] { return fact_binomial_audit(1e-12); });
  const std::uint64_t qf_seed = derive_seed(c.seed, 9000);
  audit("fact-quadratic-form", "M >= |psi><psi| iff <psi|M^+|psi> <= 1 on supp M", qf_seed, [&] {
    Rng rng(qf_seed);
    return fact_quadratic_form_audit(rng, c.quadratic_trials);
  });
  audit("fact-xlog", "x ln(M/x) <= M/e", 0, [] { return fact_xlog_audit(1e-12); });
  audit("schedule-chain", "Term-by-term chain behind the lambda schedule", 0,
        [] { return schedule_chain_audit(1e-12); });

  out.artifacts.push_back({"instance.json", Json{{"schema", 1},
                                                 {"version", artifact_version()},
                                                 {"instances", instances}}});
  out.artifacts.push_back({"gamma_report.json", Json{{"schema", 1},
                                                     {"version", artifact_version()},
                                                     {"tolerances", tolerance_table()},
                                                     {"cells", gamma_cells}}});
  return out;
}

}  // namespace combcert
