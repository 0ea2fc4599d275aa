// Copyright 2026 The Authors.
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

#include "covergame/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "covergame/errors.hpp"
#include "covergame/io.hpp"
#include "covergame/partitions.hpp"
#include "covergame/search.hpp"

namespace covergame {

namespace {

Caps resolve_caps(std::optional<long long> flag) {
  Caps caps;
  if (const char* env = std::getenv("COVERGAME_CAP")) {
    try {
      caps.joint_action_cap = std::stoll(env);
    } catch (const std::exception&) {
      throw BadParamsError("COVERGAME_CAP is not an integer: \"" + std::string(env) + "\"");
    }
  }
  if (flag) caps.joint_action_cap = *flag;  // flag wins over environment
  if (caps.joint_action_cap < 1) throw BadParamsError("cap must be positive");
  return caps;
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw BadParamsError("cannot write \"" + out_path + "\"");
  out << text;
}

Rational parse_rational_param(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw BadParamsError(std::string(what) + ": bad rational \"" + text + "\"");
  }
}

std::vector<Rational> parse_rational_list(const std::string& csv, const char* what) {
  std::vector<Rational> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(parse_rational(item));
    } catch (const ParseError&) {
      throw BadParamsError(std::string(what) + ": bad rational \"" + item + "\"");
    }
  }
  if (values.empty()) throw BadParamsError(std::string(what) + " is empty");
  return values;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw BadParamsError(std::string(what) + ": bad integer \"" + item + "\"");
    }
  }
  if (values.empty()) throw BadParamsError(std::string(what) + " is empty");
  return values;
}

SignalingPolicy parse_policy_override(const std::string& text, int support_size) {
  if (text == "full") return SignalingPolicy::full_revelation(support_size);
  if (text == "none") return SignalingPolicy::no_information(support_size);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw BadParamsError("--policy-override must be \"full\", \"none\", or a JSON "
                         "array of cells");
  }
  if (!doc.is_array()) throw BadParamsError("--policy-override JSON must be an array");
  SignalingPolicy policy;
  for (const auto& cell : doc) {
    if (!cell.is_array()) throw BadParamsError("--policy-override cells must be arrays");
    std::vector<int> c;
    for (const auto& idx : cell) {
      if (!idx.is_number_integer()) {
        throw BadParamsError("--policy-override cell entries must be integers");
      }
      c.push_back(idx.get<int>());
    }
    policy.cells.push_back(std::move(c));
  }
  try {
    policy.normalize_and_validate(support_size);
  } catch (const InvariantError& e) {
    throw BadParamsError(std::string("--policy-override: ") + e.what());
  }
  return policy;
}

void print_human_summary(const MetricReport& report) {
  std::ostream& out = std::cerr;
  out << "instance:        " << report.label << "\n";
  out << "policy cells:    " << report.policy_cells << "\n";
  out << "rule:            " << rule_kind_name(report.rule_kind) << "\n";
  auto line = [&](const char* name, const Rational& q) {
    out << name << fraction_string(q) << " (" << decimal_string(q) << ")\n";
  };
  line("uninformed NE welfare, best:  ", report.uninformed_best_ne);
  line("uninformed NE welfare, worst: ", report.uninformed_worst_ne);
  line("informed BNE welfare, best:   ", report.informed_best_bne);
  line("informed BNE welfare, worst:  ", report.informed_worst_bne);
  line("VoI+: ", report.voi_plus);
  line("VoI-: ", report.voi_minus);
  line("PoA:  ", report.poa);
  line("PoS:  ", report.pos);
  line("W* at the prior mean: ", report.w_star_uninformed);
  for (std::size_t k = 0; k < report.w_star_per_cell.size(); ++k) {
    line(("W* in cell " + std::to_string(k) + ": ").c_str(), report.w_star_per_cell[k]);
  }
  if (report.hull) {
    line("psi estimate: ", report.hull->psi);
    line("rho estimate: ", report.hull->rho);
    out << "hull samples evaluated: " << report.hull->evaluated
        << " (skipped degenerate: " << report.hull->skipped_degenerate << ")\n";
  }
  for (const auto& check : report.checks) {
    out << "check " << check.name << ": "
        << (check.status == CheckStatus::Pass ? "pass"
            : check.status == CheckStatus::Fail ? "fail" : "inconclusive")
        << (check.informational ? " (informational)" : "") << ": " << check.detail << "\n";
  }
}

// Shared λ-interpolated rule (1-λ) f^mc + λ f^g for an n-agent game.
UtilityRule interpolated_rule(const Rational& lambda, int n_agents) {
  const UtilityRule mc = make_fmc(n_agents);
  const UtilityRule g = make_fg(n_agents);
  UtilityRule mix;
  mix.table.reserve(n_agents);
  for (int i = 0; i < n_agents; ++i) {
    Rational x = (1 - lambda) * mc.table[i] + lambda * g.table[i];
    x.canonicalize();
    mix.table.push_back(std::move(x));
  }
  return mix;
}

InstanceBundle battery_member(std::uint64_t seed, int index) {
  RandomInstanceParams params;
  params.n_agents = 2 + (index % 2);
  params.n_resources = 3 + (index % 2);
  params.max_actions = 2 + (index % 2);
  params.support_size = 2 + (index % 3 == 0 ? 1 : 0);
  params.value_range = 3;
  params.denominator_bound = 20;
  params.seed = seed * 7919 + static_cast<std::uint64_t>(index);
  params.full_revelation = (index % 4 != 3);
  return gen_random(params);
}

struct GenerateArgs {
  std::string kind;
  int R = 3;
  std::string eps;
  std::string p = "1/2";
  int n = 2;
  std::uint64_t seed = 0;
  int support_size = 2;
  int max_actions = 3;
  long value_range = 4;
  long denominator_bound = 1000;
  std::string prior = "uniform";
  std::string policy = "full";
  std::string rule = "mc";
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  InstanceBundle bundle;
  if (args.kind == "voip-tight") {
    bundle = gen_voip_tight(args.R);
  } else if (args.kind == "voim-tight") {
    const Rational eps =
        args.eps.empty() ? make_rational(1, 2) : parse_rational_param(args.eps, "--eps");
    bundle = gen_voim_tight(eps, parse_rational_param(args.p, "--p"));
  } else if (args.kind == "gairing-tight") {
    Rational eps;
    if (args.eps.empty()) {
      eps = make_fg(args.n).table[args.n - 1] / 10;
      eps.canonicalize();
    } else {
      eps = parse_rational_param(args.eps, "--eps");
    }
    bundle = gen_gairing_tight(args.n, eps);
  } else if (args.kind == "random") {
    RandomInstanceParams params;
    params.n_agents = args.n;
    params.n_resources = args.R;
    params.max_actions = args.max_actions;
    params.support_size = args.support_size;
    params.value_range = args.value_range;
    params.denominator_bound = args.denominator_bound;
    params.seed = args.seed;
    params.uniform_prior = (args.prior == "uniform");
    params.full_revelation = (args.policy == "full");
    params.use_gairing_rule = (args.rule == "g");
    bundle = gen_random(params);
  } else {
    throw BadParamsError("unknown kind \"" + args.kind + "\"");
  }
  write_text(emit_game_text(bundle), args.out);
  std::cerr << "generated " << bundle.label << "\n";
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  std::string policy_override;
  std::string rule_override;
  std::uint64_t seed = 0;
  std::optional<long> samples;
  std::optional<long long> cap;
  std::string out;
  std::string format = "csv";
};

int cmd_analyze(const AnalyzeArgs& args) {
  if (args.format != "csv") throw BadParamsError("only --format csv is supported");
  InstanceBundle bundle = parse_game_file(args.input);
  std::string notes;
  if (!args.policy_override.empty()) {
    bundle.policy = parse_policy_override(args.policy_override, bundle.dist.size());
    notes += "policy_override=" + args.policy_override;
  }
  if (!args.rule_override.empty()) {
    if (args.rule_override == "mc") {
      bundle.rule = make_fmc(bundle.game.n_agents);
    } else if (args.rule_override == "g") {
      if (bundle.game.n_agents < 2) {
        throw BadParamsError("--rule-override g needs at least two agents");
      }
      bundle.rule = make_fg(bundle.game.n_agents);
    } else {
      throw BadParamsError("--rule-override must be \"mc\" or \"g\"");
    }
    if (!notes.empty()) notes += ';';
    notes += "rule_override=" + args.rule_override;
  }

  AnalyzeOptions options;
  options.caps = resolve_caps(args.cap);
  options.samples = args.samples;
  options.seed = args.seed;
  MetricReport report = analyze(bundle.game, bundle.dist, bundle.policy, bundle.rule, options);
  report.label = bundle.label;

  ReportRow row = report_row(report);
  if (!notes.empty()) {
    if (!row.notes.empty()) row.notes += ';';
    row.notes += notes;
  }
  write_text(report_csv_header() + "\n" + report_csv_row(row) + "\n", args.out);
  print_human_summary(report);
  return 0;
}

struct SweepArgs {
  std::string family;
  int lambda_count = 5;
  std::string eps_list = "1/10,1/4,1/2,3/4,9/10";
  std::string p_list = "1/10,1/4,1/2,3/4,9/10";
  std::string n_list = "2,3,4,5,6";
  std::string eps_factor = "1/10";
  int battery_size = 20;
  std::uint64_t seed = 1;
  std::optional<long long> cap;
  std::string out;
};

int cmd_sweep(const SweepArgs& args) {
  const Caps caps = resolve_caps(args.cap);
  AnalyzeOptions options;
  options.caps = caps;
  options.samples = -1;  // hull estimates are skipped in sweeps
  std::string csv = report_csv_header() + "\n";

  if (args.family == "rule-interpolation") {
    if (args.lambda_count < 2) throw BadParamsError("--lambda-count must be at least 2");
    if (args.battery_size < 1) throw BadParamsError("--battery-size must be positive");
    std::vector<InstanceBundle> battery;
    for (int i = 0; i < args.battery_size; ++i) battery.push_back(battery_member(args.seed, i));
    for (int j = 0; j < args.lambda_count; ++j) {
      const Rational lambda = make_rational(j, args.lambda_count - 1);
      std::optional<Rational> min_voip, min_voim;
      for (int i = 0; i < args.battery_size; ++i) {
        const InstanceBundle& member = battery[i];
        const UtilityRule rule = interpolated_rule(lambda, member.game.n_agents);
        const std::string label = "rule-interp[lambda=" + fraction_string(lambda) +
                                  ";i=" + std::to_string(i) + "]";
        try {
          MetricReport report =
              analyze(member.game, member.dist, member.policy, rule, options);
          report.label = label;
          ReportRow row = report_row(report);
          row.notes = "member=" + member.label;
          csv += report_csv_row(row) + "\n";
          if (!min_voip || report.voi_plus < *min_voip) min_voip = report.voi_plus;
          if (!min_voim || report.voi_minus < *min_voim) min_voim = report.voi_minus;
        } catch (const CapExceededError&) {
          // Oversized member: flag the row and keep sweeping.
          ReportRow row;
          row.label = label;
          row.notes = "member=" + member.label + ";cap_exceeded=1";
          csv += report_csv_row(row) + "\n";
        }
      }
      ReportRow aggregate;
      aggregate.label = "aggregate[lambda=" + fraction_string(lambda) + "]";
      aggregate.voi_plus = min_voip;
      aggregate.voi_minus = min_voim;
      aggregate.notes = "aggregate=min over " + std::to_string(args.battery_size) + " instances";
      csv += report_csv_row(aggregate) + "\n";
    }
  } else if (args.family == "voim-tight-grid") {
    const auto eps_values = parse_rational_list(args.eps_list, "--eps-list");
    const auto p_values = parse_rational_list(args.p_list, "--p-list");
    for (const auto& eps : eps_values) {
      for (const auto& p : p_values) {
        InstanceBundle bundle = gen_voim_tight(eps, p);
        MetricReport report =
            analyze(bundle.game, bundle.dist, bundle.policy, bundle.rule, options);
        report.label = bundle.label;
        const Rational closed = voim_tight_closed_form(eps, p);
        ReportRow row = report_row(report);
        row.notes = "closed_form=" + fraction_string(closed) +
                    ";match=" + (report.voi_minus == closed ? "yes" : "no");
        csv += report_csv_row(row) + "\n";
      }
    }
  } else if (args.family == "gairing-grid") {
    const auto n_values = parse_int_list(args.n_list, "--n-list");
    const Rational factor = parse_rational_param(args.eps_factor, "--eps-factor");
    if (!(factor > 0 && factor < 1)) {
      throw BadParamsError("--eps-factor must be strictly between 0 and 1");
    }
    for (int n : n_values) {
      Rational eps = make_fg(n).table[n - 1] * factor;
      eps.canonicalize();
      InstanceBundle bundle = gen_gairing_tight(n, eps);
      MetricReport report =
          analyze(bundle.game, bundle.dist, bundle.policy, bundle.rule, options);
      report.label = bundle.label;
      const Rational closed = gairing_tight_closed_form(n, eps);
      ReportRow row = report_row(report);
      row.notes = "closed_form=" + fraction_string(closed) + ";match=" +
                  (report.voi_plus == closed && report.voi_minus == closed ? "yes" : "no");
      csv += report_csv_row(row) + "\n";
    }
  } else {
    throw BadParamsError("unknown sweep family \"" + args.family + "\"");
  }

  write_text(csv, args.out);
  return 0;
}

struct SearchArgs {
  std::string input;
  std::string objective;
  std::optional<long long> cap;
  std::string out;
};

std::string partition_text(const SetPartition& cells) {
  std::string text;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) text += '|';
    for (std::size_t i = 0; i < cells[k].size(); ++i) {
      if (i) text += '.';
      text += std::to_string(cells[k][i]);
    }
  }
  return text;
}

int cmd_search_signaling(const SearchArgs& args) {
  if (args.objective != "best-case" && args.objective != "worst-case") {
    throw BadParamsError("--objective must be \"best-case\" or \"worst-case\"");
  }
  const bool best_case = (args.objective == "best-case");
  const Caps caps = resolve_caps(args.cap);
  InstanceBundle bundle = parse_game_file(args.input);

  const std::vector<RankedPolicy> ranked = rank_signaling_policies(
      bundle.game, bundle.dist, bundle.rule,
      best_case ? SearchObjective::BestCase : SearchObjective::WorstCase, caps);
  const NashSet uninformed =
      enumerate_nash(bundle.game, prior_mean(bundle.dist), bundle.rule, caps);

  std::string csv = report_csv_header() + "\n";
  for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
    const RankedPolicy& c = ranked[rank];
    ReportRow row;
    row.label = "partition[" + partition_text(c.cells) + "]";
    row.policy_cells = static_cast<int>(c.cells.size());
    row.rule_kind = rule_kind_name(classify_rule(bundle.rule, bundle.game.n_agents));
    row.uninformed_best_ne = uninformed.best_welfare();
    row.uninformed_worst_ne = uninformed.worst_welfare();
    row.informed_best_bne = c.best_expected_welfare;
    row.informed_worst_bne = c.worst_expected_welfare;
    if (uninformed.best_welfare() != 0) {
      Rational vp = c.best_expected_welfare / uninformed.best_welfare();
      vp.canonicalize();
      row.voi_plus = vp;
    }
    if (uninformed.worst_welfare() != 0) {
      Rational vm = c.worst_expected_welfare / uninformed.worst_welfare();
      vm.canonicalize();
      row.voi_minus = vm;
    }
    row.notes = "rank=" + std::to_string(rank + 1) + ";objective=" + args.objective +
                (rank == 0 ? ";top=1" : "");
    csv += report_csv_row(row) + "\n";
  }
  write_text(csv, args.out);
  std::cerr << "searched " << ranked.size() << " partitions of " << bundle.dist.size()
            << " support states; top (" << args.objective << "): partition["
            << partition_text(ranked.front().cells) << "]\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Exact analysis of maximum coverage games with value uncertainty "
               "and information signaling"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Write a game file for a named construction or a random instance");
  generate->add_option("-k,--kind", gen.kind,
                       "voip-tight | voim-tight | gairing-tight | random")->required();
  generate->add_option("--R", gen.R, "resources (voip-tight, random)");
  generate->add_option("--eps", gen.eps, "epsilon as p/q (voim-tight, gairing-tight)");
  generate->add_option("--p", gen.p, "high-state probability as p/q (voim-tight)");
  generate->add_option("--n", gen.n, "agents (gairing-tight, random)");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--support-size", gen.support_size, "support states (random)");
  generate->add_option("--max-actions", gen.max_actions, "max actions per agent (random)");
  generate->add_option("--value-range", gen.value_range, "max resource value (random)");
  generate->add_option("--denominator-bound", gen.denominator_bound,
                       "max value denominator (random)");
  generate->add_option("--prior", gen.prior, "uniform | random");
  generate->add_option("--policy", gen.policy, "full | random");
  generate->add_option("--rule", gen.rule, "mc | g (random)");
  generate->add_option("-o,--out", gen.out, "output path (default stdout)");

  AnalyzeArgs ana;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Full equilibrium/value-of-informing report for a game file");
  analyze_cmd->add_option("input", ana.input, "game file")->required();
  analyze_cmd->add_option("--policy-override", ana.policy_override,
                          "full | none | JSON cell array");
  analyze_cmd->add_option("--rule-override", ana.rule_override, "mc | g");
  analyze_cmd->add_option("--seed", ana.seed, "hull sampling seed");
  long samples_flag = 0;
  CLI::Option* samples_opt = analyze_cmd->add_option(
      "--samples", samples_flag, "hull samples (>= |support|; negative disables)");
  long long cap_flag_ana = 0;
  CLI::Option* cap_opt_ana =
      analyze_cmd->add_option("--cap", cap_flag_ana, "joint action space cap");
  analyze_cmd->add_option("-o,--out", ana.out, "CSV output path (default stdout)");
  analyze_cmd->add_option("--format", ana.format, "csv");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Emit trade-off data over a rule family or a tight-instance grid");
  sweep_cmd->add_option("--family", sweep.family,
                        "rule-interpolation | voim-tight-grid | gairing-grid")->required();
  sweep_cmd->add_option("--lambda-count", sweep.lambda_count,
                        "grid points on [0,1] (rule-interpolation)");
  sweep_cmd->add_option("--eps-list", sweep.eps_list, "comma list of p/q (voim grid)");
  sweep_cmd->add_option("--p-list", sweep.p_list, "comma list of p/q (voim grid)");
  sweep_cmd->add_option("--n-list", sweep.n_list, "comma list of n (gairing grid)");
  sweep_cmd->add_option("--eps-factor", sweep.eps_factor,
                        "eps = f^g(n) * factor (gairing grid)");
  sweep_cmd->add_option("--battery-size", sweep.battery_size,
                        "instances per lambda (rule-interpolation)");
  sweep_cmd->add_option("--seed", sweep.seed, "battery seed");
  long long cap_flag_sweep = 0;
  CLI::Option* cap_opt_sweep =
      sweep_cmd->add_option("--cap", cap_flag_sweep, "joint action space cap");
  sweep_cmd->add_option("-o,--out", sweep.out, "CSV output path (default stdout)");

  SearchArgs search;
  CLI::App* search_cmd = app.add_subcommand(
      "search-signaling", "Rank every signaling partition of the support");
  search_cmd->add_option("input", search.input, "game file")->required();
  search_cmd->add_option("--objective", search.objective, "best-case | worst-case")
      ->required();
  long long cap_flag_search = 0;
  CLI::Option* cap_opt_search =
      search_cmd->add_option("--cap", cap_flag_search, "joint action space cap");
  search_cmd->add_option("-o,--out", search.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (*generate) return cmd_generate(gen);
    if (*analyze_cmd) {
      if (samples_opt->count() > 0) ana.samples = samples_flag;
      if (cap_opt_ana->count() > 0) ana.cap = cap_flag_ana;
      return cmd_analyze(ana);
    }
    if (*sweep_cmd) {
      if (cap_opt_sweep->count() > 0) sweep.cap = cap_flag_sweep;
      return cmd_sweep(sweep);
    }
    if (*search_cmd) {
      if (cap_opt_search->count() > 0) search.cap = cap_flag_search;
      return cmd_search_signaling(search);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 5;
  } catch (const covergame::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const BadParamsError& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return 5;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace covergame
