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

#include "covergame/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "covergame/errors.hpp"
#include "covergame/rng.hpp"

namespace covergame {

namespace {

using CoveredSet = std::vector<std::uint64_t>;

CoveredSet union_with(const CoveredSet& base, const CoveredSet& extra) {
  CoveredSet result = base;
  for (std::size_t w = 0; w < result.size(); ++w) result[w] |= extra[w];
  return result;
}

struct Predecessor {
  CoveredSet prev;
  int action = 0;
};

}  // namespace

WStarResult w_star(const CoverageGame& game, const ValueVector& v, const Caps& caps) {
  v.validate(game.n_resources);

  // Only resources with positive value influence W*, so states are subsets of
  // those. Distinct covered sets are interchangeable for the remaining agents.
  std::vector<int> bit_of(game.n_resources, -1);
  std::vector<int> valuable;
  for (int r = 0; r < game.n_resources; ++r) {
    if (v.values[r] > 0) {
      bit_of[r] = static_cast<int>(valuable.size());
      valuable.push_back(r);
    }
  }
  const std::size_t words = (valuable.size() + 63) / 64;

  auto project = [&](int agent, int action) {
    CoveredSet bits(words, 0);
    for (int r : game.action_sets[agent][action]) {
      if (bit_of[r] >= 0) bits[bit_of[r] / 64] |= (std::uint64_t{1} << (bit_of[r] % 64));
    }
    return bits;
  };

  // Agents covering many resources first: their unions collapse early and the
  // distinct-state frontier stays small on instances with one broad agent.
  std::vector<int> order(game.n_agents);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> max_size(game.n_agents, 0);
  for (int i = 0; i < game.n_agents; ++i) {
    for (const auto& a : game.action_sets[i]) max_size[i] = std::max(max_size[i], a.size());
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return max_size[a] > max_size[b]; });

  std::vector<std::map<CoveredSet, Predecessor>> levels(game.n_agents + 1);
  levels[0].emplace(CoveredSet(words, 0), Predecessor{});
  for (int step = 0; step < game.n_agents; ++step) {
    const int agent = order[step];
    auto& next = levels[step + 1];
    for (const auto& [state, pred] : levels[step]) {
      for (int action = 0; action < static_cast<int>(game.num_actions(agent)); ++action) {
        CoveredSet merged = union_with(state, project(agent, action));
        next.emplace(std::move(merged), Predecessor{state, action});
      }
      if (next.size() > static_cast<std::size_t>(caps.joint_action_cap)) {
        throw CapExceededError("w_star covered-set frontier exceeds cap " +
                               std::to_string(caps.joint_action_cap));
      }
    }
  }

  WStarResult result;
  result.value = 0;
  const CoveredSet* best_state = nullptr;
  for (const auto& [state, pred] : levels[game.n_agents]) {
    Rational w(0);
    for (std::size_t b = 0; b < valuable.size(); ++b) {
      if (state[b / 64] & (std::uint64_t{1} << (b % 64))) w += v.values[valuable[b]];
    }
    if (best_state == nullptr || w > result.value) {
      result.value = std::move(w);
      best_state = &state;
    }
  }

  result.optimizer.choice.assign(game.n_agents, 0);
  CoveredSet cursor = *best_state;
  for (int step = game.n_agents; step >= 1; --step) {
    const Predecessor& pred = levels[step].at(cursor);
    result.optimizer.choice[order[step - 1]] = pred.action;
    cursor = pred.prev;
  }
  return result;
}

std::pair<Rational, Rational> poa_pos(const CoverageGame& game, const ValueVector& v,
                                      const UtilityRule& rule, const Caps& caps) {
  const WStarResult opt = w_star(game, v, caps);
  if (opt.value == 0) {
    throw UndefinedRatioError("optimal welfare is zero; price ratios undefined");
  }
  const NashSet nash = enumerate_nash(game, v, rule, caps);
  Rational poa = nash.worst_welfare() / opt.value;
  Rational pos = nash.best_welfare() / opt.value;
  poa.canonicalize();
  pos.canonicalize();
  return {poa, pos};
}

VoiResult voi(const CoverageGame& game, const ValueDistribution& dist,
              const SignalingPolicy& policy, const UtilityRule& rule, const Caps& caps) {
  dist.validate(game.n_resources);
  const NashSet uninformed = enumerate_nash(game, prior_mean(dist), rule, caps);
  const BayesNashSet bne = enumerate_bne(game, dist, policy, rule, caps);

  VoiResult result;
  result.uninformed_best = uninformed.best_welfare();
  result.uninformed_worst = uninformed.worst_welfare();
  result.informed_best = bne.best_expected_welfare;
  result.informed_worst = bne.worst_expected_welfare;
  if (result.uninformed_best == 0) {
    throw UndefinedRatioError("best uninformed equilibrium welfare is zero; VoI+ undefined");
  }
  if (result.uninformed_worst == 0) {
    throw UndefinedRatioError("worst uninformed equilibrium welfare is zero; VoI- undefined");
  }
  result.voi_plus = result.informed_best / result.uninformed_best;
  result.voi_minus = result.informed_worst / result.uninformed_worst;
  result.voi_plus.canonicalize();
  result.voi_minus.canonicalize();
  return result;
}

HullEstimate hull_infimum_estimate(const CoverageGame& game, const ValueDistribution& dist,
                                   const UtilityRule& rule, long n_samples,
                                   std::uint64_t seed, const Caps& caps) {
  dist.validate(game.n_resources);
  if (n_samples < dist.size()) {
    throw BadParamsError("hull sampling needs n_samples >= |support| (" +
                         std::to_string(n_samples) + " < " + std::to_string(dist.size()) + ")");
  }

  std::vector<ValueVector> points(dist.support.begin(), dist.support.end());
  Rng rng(seed);
  const int dim = game.n_resources;
  for (long s = 0; s < n_samples; ++s) {
    // Strictly positive integer weights give an interior rational point.
    std::vector<long> weights(dist.size());
    long total = 0;
    for (auto& w : weights) {
      w = rng.range(1, 1000);
      total += w;
    }
    ValueVector combo;
    combo.values.assign(dim, Rational(0));
    for (int i = 0; i < dist.size(); ++i) {
      const Rational lambda = make_rational(weights[i], total);
      for (int r = 0; r < dim; ++r) combo.values[r] += lambda * dist.support[i].values[r];
    }
    for (auto& x : combo.values) x.canonicalize();
    points.push_back(std::move(combo));
  }

  HullEstimate estimate;
  bool have_value = false;
  for (const auto& point : points) {
    try {
      auto [poa, pos] = poa_pos(game, point, rule, caps);
      if (!have_value || pos < estimate.psi) estimate.psi = pos;
      if (!have_value || poa < estimate.rho) estimate.rho = poa;
      have_value = true;
      ++estimate.evaluated;
    } catch (const UndefinedRatioError&) {
      ++estimate.skipped_degenerate;
    }
  }
  if (!have_value) {
    throw UndefinedRatioError("every sampled value vector has zero optimal welfare");
  }
  return estimate;
}

RuleKind classify_rule(const UtilityRule& rule, int n_agents) {
  if (rule == make_fmc(n_agents)) return RuleKind::Mc;
  if (n_agents >= 2 && rule == make_fg(n_agents)) return RuleKind::G;
  return RuleKind::Other;
}

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Mc: return "mc";
    case RuleKind::G: return "g";
    case RuleKind::Other: return "custom";
  }
  return "custom";
}

CheckStatus compare_geq_one_minus_inv_e(const Rational& x) {
  static const Rational kLowerE(BigInt("27182818284"), BigInt("10000000000"));
  static const Rational kUpperE(BigInt("27182818285"), BigInt("10000000000"));
  if (x >= 1) return CheckStatus::Pass;
  const Rational gap = 1 - x;  // positive here
  if (kUpperE * gap <= 1) return CheckStatus::Pass;
  if (kLowerE * gap > 1) return CheckStatus::Fail;
  return CheckStatus::Inconclusive;
}

namespace {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

BoundCheck exact_check(std::string name, bool holds, std::string detail) {
  return BoundCheck{std::move(name), holds ? CheckStatus::Pass : CheckStatus::Fail,
                    false, std::move(detail)};
}

}  // namespace

std::vector<BoundCheck> check_theorem_bounds(const MetricReport& report,
                                             const SignalingPolicy& policy,
                                             RuleKind kind) {
  const int m = policy.num_cells();
  if (m != report.policy_cells) {
    throw InvariantError("policy cell count does not match the report");
  }
  std::vector<BoundCheck> checks;

  if (kind == RuleKind::Mc) {
    checks.push_back(exact_check("mc_voip_lower", report.voi_plus >= 1,
                                 "VoI+ = " + fraction_string(report.voi_plus) + " >= 1"));
    checks.push_back(exact_check("mc_voip_upper", report.voi_plus <= m,
                                 "VoI+ <= |Pi| = " + std::to_string(m)));
    checks.push_back(exact_check("mc_voim_lower", report.voi_minus >= make_rational(1, 2),
                                 "VoI- = " + fraction_string(report.voi_minus) + " >= 1/2"));
    checks.push_back(exact_check("mc_voim_upper", report.voi_minus <= 2 * m,
                                 "VoI- <= 2|Pi| = " + std::to_string(2 * m)));
  }

  if (kind == RuleKind::G) {
    for (const auto& [name, value] :
         {std::pair<const char*, const Rational*>{"g_voip_lower", &report.voi_plus},
          std::pair<const char*, const Rational*>{"g_voim_lower", &report.voi_minus}}) {
      CheckStatus status = compare_geq_one_minus_inv_e(*value);
      checks.push_back(BoundCheck{name, status, false,
                                  fraction_string(*value) + " vs 1-1/e: " + status_name(status)});
    }
  }

  if (report.hull.has_value()) {
    // psi/rho are sampled upper bounds on the true infima, so only a holding
    // comparison is conclusive; a failing one cannot refute the analytic bound.
    const HullEstimate& hull = *report.hull;
    auto informational = [&](std::string name, bool holds, std::string detail) {
      return BoundCheck{std::move(name),
                        holds ? CheckStatus::Pass : CheckStatus::Inconclusive, true,
                        std::move(detail)};
    };
    checks.push_back(informational("hull_voip_lower", report.voi_plus >= hull.psi,
                                   "VoI+ >= psi_est = " + fraction_string(hull.psi)));
    checks.push_back(informational("hull_voim_lower", report.voi_minus >= hull.rho,
                                   "VoI- >= rho_est = " + fraction_string(hull.rho)));
    if (hull.psi > 0) {
      checks.push_back(informational("hull_voip_upper", report.voi_plus <= Rational(m) / hull.psi,
                                     "VoI+ <= |Pi|/psi_est"));
    }
    if (hull.rho > 0) {
      checks.push_back(informational("hull_voim_upper", report.voi_minus <= Rational(m) / hull.rho,
                                     "VoI- <= |Pi|/rho_est"));
    }
  }
  return checks;
}

MetricReport analyze(const CoverageGame& game, const ValueDistribution& dist,
                     const SignalingPolicy& policy, const UtilityRule& rule,
                     const AnalyzeOptions& options) {
  dist.validate(game.n_resources);
  rule.validate(game.n_agents);
  SignalingPolicy checked = policy;
  checked.normalize_and_validate(dist.size());

  MetricReport report;
  report.policy_cells = checked.num_cells();
  report.rule_kind = classify_rule(rule, game.n_agents);

  const ValueVector prior = prior_mean(dist);
  const NashSet uninformed = enumerate_nash(game, prior, rule, options.caps);
  const BayesNashSet bne = enumerate_bne(game, dist, checked, rule, options.caps);

  report.uninformed_best_ne = uninformed.best_welfare();
  report.uninformed_worst_ne = uninformed.worst_welfare();
  report.informed_best_bne = bne.best_expected_welfare;
  report.informed_worst_bne = bne.worst_expected_welfare;

  const WStarResult opt = w_star(game, prior, options.caps);
  report.w_star_uninformed = opt.value;
  for (const auto& mean : bne.posterior_means) {
    report.w_star_per_cell.push_back(w_star(game, mean, options.caps).value);
  }

  if (opt.value == 0) {
    throw UndefinedRatioError("optimal welfare at the prior mean is zero");
  }
  report.poa = report.uninformed_worst_ne / opt.value;
  report.pos = report.uninformed_best_ne / opt.value;
  report.poa.canonicalize();
  report.pos.canonicalize();

  if (report.uninformed_best_ne == 0) {
    throw UndefinedRatioError("best uninformed equilibrium welfare is zero; VoI+ undefined");
  }
  if (report.uninformed_worst_ne == 0) {
    throw UndefinedRatioError("worst uninformed equilibrium welfare is zero; VoI- undefined");
  }
  report.voi_plus = report.informed_best_bne / report.uninformed_best_ne;
  report.voi_minus = report.informed_worst_bne / report.uninformed_worst_ne;
  report.voi_plus.canonicalize();
  report.voi_minus.canonicalize();

  const long default_samples = std::max<long>(16, dist.size());
  const long samples = options.samples.value_or(default_samples);
  if (samples >= 0) {
    report.hull = hull_infimum_estimate(game, dist, rule, samples, options.seed, options.caps);
  }

  report.checks = check_theorem_bounds(report, checked, report.rule_kind);
  return report;
}

}  // namespace covergame
