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

#pragma once

#include <optional>
#include <string>

#include "covergame/instances.hpp"
#include "covergame/metrics.hpp"

namespace covergame {

// Game files are JSON documents with top-level keys "agents", "n_resources",
// "support", "policy", "rule". All values and probabilities are exact
// rational strings ("p/q" or "p"); numeric literals are rejected so that no
// floating point ever enters the model.

// Parses the document text. The label names the instance in reports.
InstanceBundle parse_game_text(const std::string& text, std::string label);

// Reads and parses a file; the label is the file stem.
InstanceBundle parse_game_file(const std::string& path);

// Serializes a bundle to the game-file format. parse(emit(x)) reproduces x
// exactly (the label travels separately).
std::string emit_game_text(const InstanceBundle& bundle);

void write_game_file(const InstanceBundle& bundle, const std::string& path);

// One CSV row of analysis output. Empty optionals print as empty cells; each
// rational prints as an exact "p/q" column followed by a 15-significant-digit
// decimal column derived from it.
struct ReportRow {
  std::string label;
  std::optional<int> policy_cells;
  std::string rule_kind;
  std::optional<Rational> uninformed_best_ne;
  std::optional<Rational> uninformed_worst_ne;
  std::optional<Rational> informed_best_bne;
  std::optional<Rational> informed_worst_bne;
  std::optional<Rational> voi_plus;
  std::optional<Rational> voi_minus;
  std::optional<Rational> poa;
  std::optional<Rational> pos;
  std::optional<Rational> psi_estimate;
  std::optional<Rational> rho_estimate;
  std::string bound_checks;  // semicolon-joined name=status pairs
  std::string notes;
};

std::string report_csv_header();
std::string report_csv_row(const ReportRow& row);

ReportRow report_row(const MetricReport& report);

std::string bound_checks_summary(const std::vector<BoundCheck>& checks);

}  // namespace covergame
