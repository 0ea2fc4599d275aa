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
#include <vector>

#include "covergame/equilibrium.hpp"
#include "covergame/model.hpp"

namespace covergame {

struct WStarResult {
  Rational value;
  Allocation optimizer;
};

// Optimal welfare max_a W(a; v) and one optimizer. Computed by exact
// reachability over distinct covered sets (welfare only depends on the union
// of chosen actions), so structured instances with huge joint spaces stay
// cheap. Throws CapExceededError when the distinct-set frontier exceeds
// caps.joint_action_cap.
WStarResult w_star(const CoverageGame& game, const ValueVector& v, const Caps& caps = {});

// (PoA, PoS) = (worst, best) Nash welfare over optimal welfare.
// Throws UndefinedRatioError when the optimal welfare is zero.
std::pair<Rational, Rational> poa_pos(const CoverageGame& game, const ValueVector& v,
                                      const UtilityRule& rule, const Caps& caps = {});

struct VoiResult {
  Rational uninformed_best;   // best Nash welfare at the prior mean
  Rational uninformed_worst;
  Rational informed_best;     // best Bayes-Nash expected welfare under the policy
  Rational informed_worst;
  Rational voi_plus;          // informed_best / uninformed_best
  Rational voi_minus;         // informed_worst / uninformed_worst
};

// Value-of-informing for the best- and worst-case equilibria. Throws
// UndefinedRatioError when an uninformed welfare extreme is zero.
VoiResult voi(const CoverageGame& game, const ValueDistribution& dist,
              const SignalingPolicy& policy, const UtilityRule& rule,
              const Caps& caps = {});

struct HullEstimate {
  Rational psi;  // min sampled PoS; an upper bound on the true infimum
  Rational rho;  // min sampled PoA; an upper bound on the true infimum
  int evaluated = 0;
  int skipped_degenerate = 0;  // sampled vectors with zero optimal welfare
};

// Samples PoS/PoA over the convex hull of the support: every vertex plus
// n_samples random strictly-interior rational combinations. Requires
// n_samples >= |support|.
HullEstimate hull_infimum_estimate(const CoverageGame& game, const ValueDistribution& dist,
                                   const UtilityRule& rule, long n_samples,
                                   std::uint64_t seed, const Caps& caps = {});

enum class RuleKind { Mc, G, Other };

RuleKind classify_rule(const UtilityRule& rule, int n_agents);

std::string rule_kind_name(RuleKind kind);

enum class CheckStatus { Pass, Fail, Inconclusive };

struct BoundCheck {
  std::string name;
  CheckStatus status;
  bool informational = false;  // estimate-based, cannot refute the theorem
  std::string detail;
};

// Decides x >= 1 - 1/e using the certified enclosure
// 2.7182818284 < e < 2.7182818285; Inconclusive when the interval does not
// separate the two sides.
CheckStatus compare_geq_one_minus_inv_e(const Rational& x);

struct MetricReport {
  std::string label;
  int policy_cells = 0;
  RuleKind rule_kind = RuleKind::Other;
  Rational uninformed_best_ne;
  Rational uninformed_worst_ne;
  Rational informed_best_bne;
  Rational informed_worst_bne;
  Rational w_star_uninformed;
  std::vector<Rational> w_star_per_cell;
  Rational poa;  // of the uninformed game, at the prior mean
  Rational pos;
  Rational voi_plus;
  Rational voi_minus;
  std::optional<HullEstimate> hull;
  std::vector<BoundCheck> checks;
};

// Bound battery for a finished report: the marginal-contribution and Gairing
// bounds as hard pass/fail records, and the generic hull-based sandwich as
// informational records (the hull values are estimates).
std::vector<BoundCheck> check_theorem_bounds(const MetricReport& report,
                                             const SignalingPolicy& policy,
                                             RuleKind kind);

struct AnalyzeOptions {
  Caps caps;
  // Hull sampling budget; defaults to max(16, |support|). Must be at least
  // |support| when given. Negative disables the hull estimate.
  std::optional<long> samples;
  std::uint64_t seed = 0;
};

// Full pipeline over one instance: uninformed equilibria, per-cell Bayes-Nash
// composition, optimal welfares, value-of-informing, hull estimates, and the
// theorem bound battery.
MetricReport analyze(const CoverageGame& game, const ValueDistribution& dist,
                     const SignalingPolicy& policy, const UtilityRule& rule,
                     const AnalyzeOptions& options = {});

}  // namespace covergame
