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

#include "covergame/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "covergame/errors.hpp"

namespace covergame {

namespace {

using nlohmann::json;

Rational rational_field(const json& node, const std::string& where) {
  if (node.is_number()) {
    throw ParseError(where + ": numeric literals are not accepted; use a rational "
                             "string like \"3/4\"");
  }
  if (!node.is_string()) {
    throw ParseError(where + ": expected a rational string");
  }
  return parse_rational(node.get<std::string>());
}

int int_field(const json& node, const std::string& where) {
  if (!node.is_number_integer()) throw ParseError(where + ": expected an integer");
  return node.get<int>();
}

const json& member(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

InstanceBundle parse_game_text(const std::string& text, std::string label) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> kKnown = {"agents", "n_resources", "support",
                                                 "policy", "rule"};
    if (!kKnown.count(key)) throw ParseError("unknown top-level key \"" + key + "\"");
  }

  InstanceBundle bundle;
  bundle.label = std::move(label);
  bundle.game.n_resources = int_field(member(doc, "n_resources"), "n_resources");

  const json& agents = member(doc, "agents");
  if (!agents.is_array()) throw ParseError("\"agents\" must be an array");
  bundle.game.n_agents = static_cast<int>(agents.size());
  for (const auto& agent : agents) {
    if (!agent.is_array()) throw ParseError("each agent must be an array of actions");
    std::vector<ActionSet> actions;
    for (const auto& action : agent) {
      if (!action.is_array()) throw ParseError("each action must be an array of resources");
      ActionSet a;
      for (const auto& r : action) a.push_back(int_field(r, "action resource index"));
      actions.push_back(std::move(a));
    }
    bundle.game.action_sets.push_back(std::move(actions));
  }
  bundle.game.normalize_and_validate();

  const json& support = member(doc, "support");
  if (!support.is_array()) throw ParseError("\"support\" must be an array");
  for (std::size_t s = 0; s < support.size(); ++s) {
    const json& state = support[s];
    if (!state.is_object()) throw ParseError("each support state must be an object");
    const std::string where = "support[" + std::to_string(s) + "]";
    const json& values = member(state, "values");
    if (!values.is_array()) throw ParseError(where + ".values must be an array");
    ValueVector v;
    for (const auto& x : values) v.values.push_back(rational_field(x, where + ".values"));
    bundle.dist.support.push_back(std::move(v));
    bundle.dist.probs.push_back(rational_field(member(state, "prob"), where + ".prob"));
  }
  bundle.dist.validate(bundle.game.n_resources);

  const json& policy = member(doc, "policy");
  if (!policy.is_array()) throw ParseError("\"policy\" must be an array of cells");
  for (const auto& cell : policy) {
    if (!cell.is_array()) throw ParseError("each policy cell must be an array");
    std::vector<int> c;
    for (const auto& idx : cell) c.push_back(int_field(idx, "policy cell index"));
    bundle.policy.cells.push_back(std::move(c));
  }
  bundle.policy.normalize_and_validate(bundle.dist.size());

  const json& rule = member(doc, "rule");
  if (!rule.is_object()) throw ParseError("\"rule\" must be an object");
  const json& kind_node = member(rule, "kind");
  if (!kind_node.is_string()) throw ParseError("rule.kind must be a string");
  const std::string kind = kind_node.get<std::string>();
  if (kind == "custom") {
    const json& table = member(rule, "table");
    if (!table.is_array()) throw ParseError("rule.table must be an array");
    for (const auto& x : table) bundle.rule.table.push_back(rational_field(x, "rule.table"));
  } else if (kind == "mc" || kind == "g") {
    if (rule.contains("table")) {
      throw ParseError("rule.table is only valid with kind \"custom\"");
    }
    if (kind == "g" && bundle.game.n_agents < 2) {
      throw InvariantError("rule \"g\" needs at least two agents");
    }
    bundle.rule = (kind == "mc") ? make_fmc(bundle.game.n_agents)
                                 : make_fg(bundle.game.n_agents);
  } else {
    throw ParseError("rule.kind must be \"mc\", \"g\", or \"custom\"");
  }
  bundle.rule.validate(bundle.game.n_agents);

  bundle.validate();
  return bundle;
}

InstanceBundle parse_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_text(buffer.str(), std::filesystem::path(path).stem().string());
}

std::string emit_game_text(const InstanceBundle& bundle) {
  json doc;
  doc["n_resources"] = bundle.game.n_resources;
  doc["agents"] = json::array();
  for (const auto& agent : bundle.game.action_sets) {
    json actions = json::array();
    for (const auto& action : agent) actions.push_back(action);
    doc["agents"].push_back(std::move(actions));
  }
  doc["support"] = json::array();
  for (int s = 0; s < bundle.dist.size(); ++s) {
    json state;
    json values = json::array();
    for (const auto& x : bundle.dist.support[s].values) values.push_back(fraction_string(x));
    state["values"] = std::move(values);
    state["prob"] = fraction_string(bundle.dist.probs[s]);
    doc["support"].push_back(std::move(state));
  }
  doc["policy"] = bundle.policy.cells;
  const RuleKind kind = classify_rule(bundle.rule, bundle.game.n_agents);
  doc["rule"] = json::object();
  doc["rule"]["kind"] = rule_kind_name(kind);
  if (kind == RuleKind::Other) {
    json table = json::array();
    for (const auto& x : bundle.rule.table) table.push_back(fraction_string(x));
    doc["rule"]["table"] = std::move(table);
  }
  return doc.dump(2) + "\n";
}

void write_game_file(const InstanceBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadParamsError("cannot write \"" + path + "\"");
  out << emit_game_text(bundle);
}

namespace {

void append_rational_pair(std::string& line, const std::optional<Rational>& q) {
  line += ',';
  if (q) line += fraction_string(*q);
  line += ',';
  if (q) line += decimal_string(*q);
}

}  // namespace

std::string report_csv_header() {
  return "label,policy_cells,rule_kind,"
         "unin_best_ne,unin_best_ne_dec,unin_worst_ne,unin_worst_ne_dec,"
         "inf_best_bne,inf_best_bne_dec,inf_worst_bne,inf_worst_bne_dec,"
         "voi_plus,voi_plus_dec,voi_minus,voi_minus_dec,"
         "poa,poa_dec,pos,pos_dec,"
         "psi_est,psi_est_dec,rho_est,rho_est_dec,"
         "bound_checks,notes";
}

std::string report_csv_row(const ReportRow& row) {
  std::string line = row.label;
  line += ',';
  if (row.policy_cells) line += std::to_string(*row.policy_cells);
  line += ',';
  line += row.rule_kind;
  append_rational_pair(line, row.uninformed_best_ne);
  append_rational_pair(line, row.uninformed_worst_ne);
  append_rational_pair(line, row.informed_best_bne);
  append_rational_pair(line, row.informed_worst_bne);
  append_rational_pair(line, row.voi_plus);
  append_rational_pair(line, row.voi_minus);
  append_rational_pair(line, row.poa);
  append_rational_pair(line, row.pos);
  append_rational_pair(line, row.psi_estimate);
  append_rational_pair(line, row.rho_estimate);
  line += ',';
  line += row.bound_checks;
  line += ',';
  line += row.notes;
  return line;
}

ReportRow report_row(const MetricReport& report) {
  ReportRow row;
  row.label = report.label;
  row.policy_cells = report.policy_cells;
  row.rule_kind = rule_kind_name(report.rule_kind);
  row.uninformed_best_ne = report.uninformed_best_ne;
  row.uninformed_worst_ne = report.uninformed_worst_ne;
  row.informed_best_bne = report.informed_best_bne;
  row.informed_worst_bne = report.informed_worst_bne;
  row.voi_plus = report.voi_plus;
  row.voi_minus = report.voi_minus;
  row.poa = report.poa;
  row.pos = report.pos;
  if (report.hull) {
    row.psi_estimate = report.hull->psi;
    row.rho_estimate = report.hull->rho;
    row.notes = "hull_evaluated=" + std::to_string(report.hull->evaluated) +
                ";hull_skipped=" + std::to_string(report.hull->skipped_degenerate);
  }
  row.bound_checks = bound_checks_summary(report.checks);
  return row;
}

std::string bound_checks_summary(const std::vector<BoundCheck>& checks) {
  std::string joined;
  for (const auto& check : checks) {
    if (!joined.empty()) joined += ';';
    joined += check.name;
    joined += '=';
    switch (check.status) {
      case CheckStatus::Pass: joined += "pass"; break;
      case CheckStatus::Fail: joined += "fail"; break;
      case CheckStatus::Inconclusive: joined += "inconclusive"; break;
    }
  }
  return joined;
}

}  // namespace covergame
