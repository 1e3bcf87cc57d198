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

// End-to-end acceptance run: executes the default suites, re-checks every
// criterion against its literal tolerance from the recorded measurements,
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "combcert/report.hpp"
#include "combcert/suites.hpp"

namespace {

using combcert::CheckRecord;
using combcert::Json;
using combcert::VerificationReport;

struct Run {
  combcert::SuiteOutput combs, hard, net;
  double combs_s = 0, hard_s = 0, net_s = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Run run_all() {
  Run r{{VerificationReport("combs"), {}}, {VerificationReport("hard"), {}}, {VerificationReport("net"), {}}};
  auto t0 = std::chrono::steady_clock::now();
  r.combs = combcert::run_combs_suite(combcert::CombsConfig{});
  r.combs_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  r.hard = combcert::run_hard_suite(combcert::HardConfig{});
  r.hard_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  r.net = combcert::run_net_suite(combcert::NetConfig{});
  r.net_s = seconds_since(t0);
  return r;
}

// Collects evidence for one criterion; any failed expectation fails it.
class Criterion {
 public:
  Criterion(int number, std::string title, double limit_s)
      : number_(number), title_(std::move(title)), limit_s_(limit_s) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ok_ = false;
      if (failures_.size() < 4) failures_.push_back(what);
    }
  }
  void skip(const std::string& what) { skipped_.push_back(what); }
  void note(const std::string& s) { notes_.push_back(s); }
  void add_time(double s) { seconds_ += s; }

  bool finish() {
    if (limit_s_ > 0) {
      std::ostringstream w;
      w << "runtime " << seconds_ << " s exceeds " << limit_s_ << " s";
      expect(seconds_ < limit_s_, w.str());
    }
    if (checks_ == 0) expect(false, "no evidence collected");
    std::printf("criterion %2d: %s  %s (%zu checks, %.1f s", number_, ok_ ? "PASS" : "FAIL",
                title_.c_str(), checks_, seconds_);
    if (limit_s_ > 0) std::printf(" / limit %.0f s", limit_s_);
    std::printf(")");
    for (const auto& n : notes_) std::printf("; %s", n.c_str());
    for (const auto& s : skipped_) std::printf("; skipped: %s", s.c_str());
    for (const auto& f : failures_) std::printf("; FAILED: %s", f.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return ok_;
  }

 private:
  int number_;
  std::string title_;
  double limit_s_;
  std::size_t checks_ = 0;
  double seconds_ = 0;
  bool ok_ = true;
  std::vector<std::string> failures_, skipped_, notes_;
};

std::vector<const CheckRecord*> with_prefix(const VerificationReport& rep, const std::string& prefix) {
  std::vector<const CheckRecord*> out;
  for (const auto& r : rep.records())
    if (r.id.rfind(prefix, 0) == 0) out.push_back(&r);
  return out;
}

const CheckRecord* find(const VerificationReport& rep, const std::string& id) {
  for (const auto& r : rep.records())
    if (r.id == id) return &r;
  return nullptr;
}

double num(const Json& j, const char* key = nullptr) {
  const Json& v = key ? j.at(key) : j;
  return v.get<double>();
}

// Reads "k=v" integers from an id such as "gamma-comb/d1=2,d2=5,n=3".
std::map<std::string, double> id_params(const std::string& id) {
  std::map<std::string, double> out;
  const auto slash = id.find('/');
  if (slash == std::string::npos) return out;
  std::stringstream ss(id.substr(slash + 1));
  for (std::string kv; std::getline(ss, kv, ',');) {
    const auto eq = kv.find('=');
    if (eq != std::string::npos) out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

std::string fmt(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

// Every record under `prefix` must be present, not skipped, and satisfy `pred`.
void each(Criterion& c, const VerificationReport& rep, const std::string& prefix, std::size_t expected,
          const std::function<bool(const CheckRecord&)>& pred, bool timed = true) {
  const auto rs = with_prefix(rep, prefix);
  c.expect(rs.size() == expected, prefix + " count " + std::to_string(rs.size()) + " != " +
                                      std::to_string(expected));
  for (const auto* r : rs) {
    if (timed) c.add_time(r->wall_time_s);
    c.expect(!r->skipped, r->id + " skipped");
    bool ok = false;
    try {
      ok = r->pass && pred(*r);
    } catch (const std::exception&) {
      ok = false;  // missing or mistyped field
    }
    c.expect(ok, r->id + " measured " + r->measured.dump());
  }
}

bool criterion1(const Run& run) {
  Criterion c(1, "comb calculus", 60);
  const auto& rep = run.combs.report;
  const Json p = rep.to_json().at("params");
  c.expect(p.at("channels") == 50 && p.at("pairs") == 50 && p.at("max_dim") == 4, "parameters");
  each(c, rep, "channel-choi-is-1-comb", 1, [](const CheckRecord& r) { return num(r.measured) <= 1e-8; }, false);
  each(c, rep, "link-vs-kraus-composition", 1, [](const CheckRecord& r) { return num(r.measured) <= 1e-9; }, false);
  each(c, rep, "tester-contraction", 1, [](const CheckRecord& r) { return num(r.measured) <= 1e-8; }, false);
  c.expect(rep.pass(), "combs suite has failing records");
  c.add_time(run.combs_s);
  return c.finish();
}

bool criterion2(const Run& run) {
  Criterion c(2, "hard-instance combs and recursion", 120);
  const auto& rep = run.hard.report;
  // d1 ∈ {1,2}, d2 ∈ {2d1, 2d1+1}, n ≤ 3: 12 cells.
  each(c, rep, "gamma-comb/", 12, [](const CheckRecord& r) { return num(r.measured) <= 1e-7; });
  each(c, rep, "twirled-comb/", 12, [](const CheckRecord& r) {
    return num(r.measured) <= 1e-7 && r.note.find("monte-carlo") == std::string::npos;
  });
  each(c, rep, "gamma-recursion/", 8, [](const CheckRecord& r) { return num(r.measured) <= 1e-9; });
  for (int d1 : {1, 2})
    for (int d2 : {2 * d1, 2 * d1 + 1})
      for (int n = 1; n <= 3; ++n) {
        const std::string id = "d1=" + std::to_string(d1) + ",d2=" + std::to_string(d2) + ",n=" + std::to_string(n);
        c.expect(find(rep, "gamma-comb/" + id) && find(rep, "twirled-comb/" + id), "missing cell " + id);
      }
  return c.finish();
}

bool criterion3(const Run& run) {
  Criterion c(3, "Gamma cross-validation", 180);
  const auto& rep = run.hard.report;
  const double n_samples = num(rep.to_json().at("params"), "mc_samples");
  c.expect(n_samples == 1e5, "N != 1e5");
  const auto ew = with_prefix(rep, "exact-vs-weingarten/");
  c.expect(!ew.empty(), "no exact-vs-weingarten records");
  each(c, rep, "exact-vs-weingarten/", ew.size(), [](const CheckRecord& r) { return num(r.measured) <= 1e-8; });
  const auto mc = with_prefix(rep, "exact-vs-monte-carlo/");
  c.expect(!mc.empty(), "no exact-vs-monte-carlo records");
  each(c, rep, "exact-vs-monte-carlo/", mc.size(), [&](const CheckRecord& r) {
    const auto p = id_params(r.id);
    return num(r.measured) <= 5.0 * std::pow(p.at("d1"), p.at("n")) / std::sqrt(n_samples);
  });
  c.note(std::to_string(ew.size()) + " cells where both exact routes apply");
  return c.finish();
}

bool criterion4(const Run& run) {
  Criterion c(4, "twirl trace bound", 60);
  const auto& rep = run.hard.report;
  each(c, rep, "trace-bound-unitary/", 5, [](const CheckRecord& r) {
    return num(r.measured, "max_ratio") <= 1.0 + 1e-6 && num(r.measured, "pure_equality_gap") <= 1e-6;
  });
  for (int d = 2; d <= 6; ++d) c.expect(find(rep, "trace-bound-unitary/d=" + std::to_string(d)), "missing d");
  each(c, rep, "trace-bound-hard-action/", 4, [](const CheckRecord& r) { return num(r.measured) <= 1.0 + 1e-6; });
  for (int d2 : {2, 3})
    for (int n : {1, 2})
      c.expect(find(rep, "trace-bound-hard-action/d1=1,d2=" + std::to_string(d2) + ",n=" + std::to_string(n)),
               "missing hard-action cell");
  c.expect(num(rep.to_json().at("params"), "trace_trials") == 30, "trace_trials != 30");
  return c.finish();
}

bool criterion5(const Run& run) {
  Criterion c(5, "symmetric span dimension", 60);
  // d ≤ 4 and 0 ≤ m ≤ n ≤ 5: 4 · (2+3+4+5+6) cases.
  each(c, run.hard.report, "symmetric-span-dimension", 1, [](const CheckRecord& r) {
    return num(r.measured, "mismatches") == 0 && num(r.measured, "cases") == 80;
  });
  return c.finish();
}

bool criterion6(const Run& run) {
  Criterion c(6, "domination", 300);
  const auto& rep = run.hard.report;
  const double b = 2.0 * std::exp(4.0);
  std::size_t cells = 0;
  for (int d2 : {2, 3})
    for (double eps : {0.01, 0.05}) {
      const double cap = std::min(3.0, 1.0 * d2 / (b * eps * eps));
      for (int n = 1; n <= 3; ++n) {
        std::ostringstream id;
        id << "d1=1,d2=" << d2 << ",n=" << n << ",eps=" << eps;
        const CheckRecord* dom = find(rep, "domination/" + id.str());
        const CheckRecord* lam = find(rep, "lambda-sum/" + id.str());
        if (n > cap) {
          c.expect(!dom || dom->skipped, id.str() + " beyond the hypothesis but not skipped");
          continue;
        }
        ++cells;
        c.expect(dom && lam, "missing " + id.str());
        if (!dom || !lam) continue;
        c.add_time(dom->wall_time_s + lam->wall_time_s);
        c.expect(!dom->skipped && dom->pass && !lam->skipped && lam->pass, id.str() + " did not pass");
        const double q = num(dom->measured, "max_q");
        c.expect(q <= 1.0, id.str() + " Q=" + fmt(q));
        c.expect(num(dom->measured, "u_samples") == 20, id.str() + " u_samples");
        if (dom->measured.contains("min_eig_over_lambda_sum") && !dom->measured.at("min_eig_over_lambda_sum").is_null())
          c.expect(num(dom->measured, "min_eig_over_lambda_sum") >= -1e-8, id.str() + " min-eig");
        const double bound = 3.0 * d2 * d2 * std::exp(std::sqrt(8.0 * n * eps * eps * d2));
        c.expect(num(lam->measured) <= bound, id.str() + " lambda-sum " + fmt(num(lam->measured)));
      }
    }
  c.note(std::to_string(cells) + " admissible cells");
  return c.finish();
}

bool criterion7(const Run& run) {
  Criterion c(7, "elementary facts", 10);
  for (const char* id : {"fact-binomial", "fact-quadratic-form", "fact-xlog", "schedule-chain"}) {
    each(c, run.hard.report, id, 1, [](const CheckRecord& r) {
      return num(r.measured, "violations") == 0 && num(r.measured, "checks") > 0;
    });
  }
  return c.finish();
}

bool criterion8(const Run& run) {
  Criterion c(8, "F-operator moments and Lipschitz audit", 180);
  const auto& rep = run.net.report;
  struct Cell {
    int d1, d2, r;
    bool may_skip;
  };
  for (const Cell& cell : {Cell{4, 3, 3, false}, Cell{6, 3, 4, true}}) {
    std::ostringstream mid;
    mid << "odd/d1=" << cell.d1 << ",d2=" << cell.d2 << ",r=" << cell.r;
    const CheckRecord* m2 = find(rep, "moment-second/" + mid.str());
    if (!m2) {
      // The regime guard may reject a cell; that is recorded, not hidden.
      bool guarded = false;
      for (const auto& r : rep.records())
        if (r.skipped && r.id.find("d1=" + std::to_string(cell.d1) + ",d2=" + std::to_string(cell.d2) +
                                   ",r=" + std::to_string(cell.r)) != std::string::npos)
          guarded = true;
      if (guarded && cell.may_skip) {
        c.skip(mid.str() + " (regime guard)");
      } else {
        c.expect(false, "missing " + mid.str());
      }
      continue;
    }
    const CheckRecord* m4 = find(rep, "moment-fourth/" + mid.str());
    const CheckRecord* lip = find(rep, "lipschitz/" + mid.str());
    c.expect(m4 && lip, "missing records for " + mid.str());
    if (!m4 || !lip) continue;
    c.add_time(m2->wall_time_s + m4->wall_time_s + lip->wall_time_s);
    const double expected = (cell.d2 - 1.0) / cell.d1;
    const double mean = num(m2->measured, "mean"), se = num(m2->measured, "stderr");
    c.expect(num(m2->measured, "samples") == 1e4, mid.str() + " samples");
    c.expect(std::abs(mean - expected) <= 4.0 * se,
             mid.str() + " E tr|F|^2 = " + fmt(mean) + " vs " + fmt(expected) + " ± 4·" + fmt(se));
    const double bound4 = 288.0 / std::pow(cell.r, 3);
    c.expect(num(m4->measured, "mean") <= bound4, mid.str() + " E tr|F|^4 = " + fmt(num(m4->measured, "mean")));
    c.expect(num(lip->measured, "violations") == 0 && num(lip->measured, "trials") == 500,
             mid.str() + " Lipschitz " + lip->measured.dump());
    c.expect(num(lip->measured, "max_ratio") <= std::sqrt(2.0 / cell.d1) + 1e-8, mid.str() + " ratio");
    c.expect(m2->pass && m4->pass && lip->pass, mid.str() + " suite verdict");
    c.note(mid.str() + ": E tr|F|^2=" + fmt(mean) + ", E tr|F|^4=" + fmt(num(m4->measured, "mean")));
  }
  return c.finish();
}

bool criterion9(const Run& run) {
  Criterion c(9, "separation audit", 180);
  const auto& rep = run.net.report;
  const double eps = num(rep.to_json().at("params"), "epsilon");
  c.expect(eps == 0.005, "epsilon != 0.005");
  c.expect(num(rep.to_json().at("params"), "separation_pairs") == 100, "pairs != 100");
  for (const char* mid : {"odd/d1=4,d2=3,r=3", "even/d1=2,d2=4,r=2"}) {
    const std::string m(mid);
    const int r = std::stoi(m.substr(m.rfind('=') + 1));
    const CheckRecord* choi = find(rep, "separation-choi/" + m);
    const CheckRecord* f = find(rep, "separation-f/" + m);
    const CheckRecord* ch = find(rep, "separation-channels/" + m);
    const CheckRecord* nc = find(rep, "net-channel/" + m);
    c.expect(choi && f && ch && nc, "missing records for " + m);
    if (!choi || !f || !ch || !nc) continue;
    c.add_time(choi->wall_time_s + f->wall_time_s + ch->wall_time_s + nc->wall_time_s);
    c.expect(!choi->skipped && !f->skipped && !ch->skipped, m + " skipped");
    c.expect(num(choi->measured) >= 0.07 * eps, m + " min Choi distance " + fmt(num(choi->measured)));
    c.expect(num(f->measured) >= 0.05, m + " min F " + fmt(num(f->measured)));
    c.expect(num(ch->measured, "max_kraus_rank") <= r, m + " Kraus rank");
    c.expect(ch->measured.at("outputs_ok").get<bool>(), m + " outputs leave the declared spaces");
    c.expect(num(ch->measured, "max_isometry_residual") <= 1e-10, m + " isometry");
    c.expect(choi->pass && f->pass && ch->pass && nc->pass, m + " suite verdict");
    c.note(m + ": min Choi " + fmt(num(choi->measured)) + ", min F " + fmt(num(f->measured)));
  }
  return c.finish();
}

std::string body(const combcert::SuiteOutput& s) {
  std::string out = combcert::strip_timing(s.report.to_json()).dump();
  for (const auto& [name, doc] : s.artifacts) out += name + combcert::strip_timing(doc).dump();
  return out;
}

bool criterion10(const Run& first) {
  Criterion c(10, "determinism", 0);
  const auto t0 = std::chrono::steady_clock::now();
  const Run second = run_all();
  c.add_time(seconds_since(t0));
  c.expect(body(first.combs) == body(second.combs), "combs report differs");
  c.expect(body(first.hard) == body(second.hard), "hard-instance report or artifacts differ");
  c.expect(body(first.net) == body(second.net), "net report or artifacts differ");
  return c.finish();
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const Run run = run_all();
  std::printf("suites: combs %.1f s, hard-instance %.1f s, net-instantiation %.1f s\n", run.combs_s,
              run.hard_s, run.net_s);
  bool ok = true;
  ok = criterion1(run) && ok;
  ok = criterion2(run) && ok;
  ok = criterion3(run) && ok;
  ok = criterion4(run) && ok;
  ok = criterion5(run) && ok;
  ok = criterion6(run) && ok;
  ok = criterion7(run) && ok;
  ok = criterion8(run) && ok;
  ok = criterion9(run) && ok;
  ok = criterion10(run) && ok;
  std::printf("acceptance: %s (%.1f s)\n", ok ? "PASS" : "FAIL", seconds_since(t0));
  return ok ? 0 : 1;
}
