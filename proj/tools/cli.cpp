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

#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "combcert/error.hpp"
#include "combcert/suites.hpp"

namespace combcert::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string suite = "all";
  std::optional<std::string> method;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  std::optional<double> tamper_lambda;
  std::optional<double> epsilon;
  std::vector<std::string> cells;
  std::size_t jobs = 1;
  bool strict = false;
  bool embed = false;
};

// Section of the config, with top-level seed/jobs as defaults.
Json section(const Json& cfg, const char* name) {
  Json s = cfg.contains(name) ? cfg.at(name) : Json::object();
  if (!s.is_object()) throw Error(ErrorCode::kParse, std::string("'") + name + "' must be an object");
  for (const char* k : {"seed", "jobs"}) {
    if (cfg.contains(k) && !s.contains(k)) s[k] = cfg.at(k);
  }
  return s;
}

NetCell parse_cell(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) {
    throw Error(ErrorCode::kInvalidArgument, "--cell expects d1,d2,r[,mode]: '" + spec + "'");
  }
  NetCell c;
  try {
    c.d1 = std::stoul(parts[0]);
    c.d2 = std::stoul(parts[1]);
    c.r = std::stoul(parts[2]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "--cell: bad integer in '" + spec + "'");
  }
  if (parts.size() == 4) c.mode = parse_net_mode(parts[3]);
  return c;
}

struct Plan {
  std::optional<CombsConfig> combs;
  std::optional<HardConfig> hard;
  std::optional<NetConfig> net;
  bool strict = false;
};

Plan make_plan(const Options& o) {
  Json cfg = Json::object();
  if (!o.config.empty()) {
    cfg = read_json_file(o.config);
    if (!cfg.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
  }
  Plan plan;
  plan.strict = o.strict || cfg.value("strict", false);
  const bool all = o.suite == "all";
  if (!all && o.suite != "combs" && o.suite != "hard" && o.suite != "net") {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown suite '" + o.suite + "' (combs|hard|net|all)");
  }
  const bool embed = o.embed || cfg.value("embed_matrices", false);
  if (all || o.suite == "combs") {
    Json s = section(cfg, "combs");
    if (o.tol) s["tol"] = *o.tol;
    CombsConfig c = combs_config_from_json(s);
    if (o.seed) c.seed = *o.seed;
    if (o.jobs > 1) c.jobs = o.jobs;
    plan.combs = c;
  }
  if (all || o.suite == "hard") {
    Json s = section(cfg, "hard");
    if (o.method) s["method"] = *o.method;
    if (o.samples) s["mc_samples"] = *o.samples;
    if (o.tamper_lambda) s["tamper_lambda"] = *o.tamper_lambda;
    HardConfig c = hard_config_from_json(s);
    if (o.seed) c.seed = *o.seed;
    if (o.jobs > 1) c.jobs = o.jobs;
    c.embed_matrices = embed;
    plan.hard = c;
  }
  if (all || o.suite == "net") {
    Json s = section(cfg, "net");
    if (o.samples) s["moment_samples"] = *o.samples;
    if (o.epsilon) s["epsilon"] = *o.epsilon;
    if (!o.cells.empty()) {
      Json cells = Json::array();
      for (const auto& spec : o.cells) {
        const NetCell cell = parse_cell(spec);
        cells.push_back({{"d1", cell.d1}, {"d2", cell.d2}, {"r", cell.r},
                         {"mode", std::string(to_string(cell.mode))}});
      }
      s["cells"] = cells;
    }
    NetConfig c = net_config_from_json(s);
    if (o.seed) c.seed = *o.seed;
    if (o.jobs > 1) c.jobs = o.jobs;
    c.embed_matrices = embed;
    plan.net = c;
  }
  return plan;
}

bool emit(const SuiteOutput& s, const std::string& file, const fs::path& dir, bool strict,
          std::ostream& out) {
  write_json_file((dir / file).string(), s.report.to_json(strict));
  for (const auto& [name, doc] : s.artifacts) write_json_file((dir / name).string(), doc);
  const bool ok = s.report.pass(strict);
  out << s.report.suite() << ": " << (ok ? "PASS" : "FAIL") << " ("
      << s.report.records().size() << " checks, " << s.report.failed() << " failed, "
      << s.report.skipped() << " skipped) -> " << (dir / file).string() << '\n';
  for (const auto& r : s.report.records()) {
    if (!r.pass || (strict && r.skipped)) {
      out << "  " << (r.pass ? "SKIP " : "FAIL ") << r.id;
      if (!r.note.empty()) out << ": " << r.note;
      out << '\n';
    }
  }
  return ok;
}

int verify(const Options& o, std::ostream& out, std::ostream& err) {
  Plan plan;
  try {
    plan = make_plan(o);
  } catch (const std::exception& e) {
    err << "combcert: invalid configuration: " << e.what() << '\n';
    return kBadInput;
  }
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "combcert: cannot create output directory '" << o.out << "': " << ec.message() << '\n';
    return kBadInput;
  }
  bool ok = true;
  try {
    if (plan.combs) ok = emit(run_combs_suite(*plan.combs), "combs_report.json", dir, plan.strict, out) && ok;
    if (plan.hard) ok = emit(run_hard_suite(*plan.hard), "hard_report.json", dir, plan.strict, out) && ok;
    if (plan.net) ok = emit(run_net_suite(*plan.net), "net_report.json", dir, plan.strict, out) && ok;
  } catch (const std::exception& e) {
    err << "combcert: " << e.what() << '\n';
    return kBadInput;
  }
  return ok ? kPass : kCheckFailed;
}

int merge(const std::vector<std::string>& paths, const std::string& out_dir, std::ostream& out,
          std::ostream& err) {
  if (paths.empty()) {
    err << "combcert: report-merge needs at least one report\n";
    return kBadInput;
  }
  Json merged;
  try {
    std::vector<Json> docs;
    for (const auto& p : paths) docs.push_back(read_json_file(p));
    merged = merge_reports(docs);
  } catch (const std::exception& e) {
    err << "combcert: " << e.what() << '\n';
    return kBadInput;
  }
  const fs::path dir(out_dir);
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_json_file((dir / "merged_report.json").string(), merged);
  } catch (const std::exception& e) {
    err << "combcert: " << e.what() << '\n';
    return kBadInput;
  }
  const bool ok = merged.at("pass").get<bool>();
  out << "merged " << paths.size() << " report(s): " << (ok ? "PASS" : "FAIL") << " -> "
      << (dir / "merged_report.json").string() << '\n';
  return ok ? kPass : kCheckFailed;
}

void add_verify_options(CLI::App* sub, Options& o, bool with_suite) {
  sub->add_option("--config", o.config, "JSON run configuration");
  sub->add_option("--seed", o.seed, "Master seed (overrides the config)");
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  if (with_suite) {
    sub->add_option("--suite", o.suite, "combs|hard|net|all")->capture_default_str();
  }
  sub->add_option("--method", o.method, "Gamma method: exact|weingarten|mc");
  sub->add_option("--samples", o.samples, "Monte Carlo sample count");
  sub->add_option("--tol", o.tol, "Tolerance for the comb-calculus identities");
  sub->add_option("--tamper-lambda", o.tamper_lambda,
                  "Scale every lambda_i (forces domination failures when < 1)");
  sub->add_option("--epsilon", o.epsilon, "Perturbation strength for the net suite");
  sub->add_option("--cell", o.cells, "Net cell d1,d2,r[,mode]; repeatable");
  sub->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  sub->add_flag("--strict", o.strict, "Skipped checks count as failures");
  sub->add_flag("--embed-matrices", o.embed, "Inline matrices instead of content hashes");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"combcert: numerical certificates for the channel-tomography lower bound"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;

  auto* v = app.add_subcommand("verify", "Run verification suites");
  add_verify_options(v, o, true);
  struct Alias {
    const char* name;
    const char* suite;
    const char* help;
  };
  const Alias aliases[] = {{"verify-combs", "combs", "Comb and channel calculus"},
                           {"verify-hard", "hard", "Hard instance, twirls and domination"},
                           {"verify-net", "net", "Net instantiation audits"},
                           {"verify-all", "all", "Every suite"}};
  std::vector<CLI::App*> alias_cmds;
  for (const auto& a : aliases) {
    auto* sub = app.add_subcommand(a.name, a.help);
    add_verify_options(sub, o, false);
    alias_cmds.push_back(sub);
  }
  std::vector<std::string> paths;
  std::string merge_out = ".";
  auto* m = app.add_subcommand("report-merge", "Merge reports into one document");
  m->add_option("paths", paths, "Report files");
  m->add_option("--out", merge_out, "Output directory")->capture_default_str();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "combcert: " << e.what() << '\n';
    return kBadInput;
  }

  if (m->parsed()) return merge(paths, merge_out, out, err);
  for (std::size_t k = 0; k < alias_cmds.size(); ++k) {
    if (alias_cmds[k]->parsed()) o.suite = aliases[k].suite;
  }
  return verify(o, out, err);
}

}  // namespace combcert::cli
