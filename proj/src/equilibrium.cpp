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

#include "covergame/equilibrium.hpp"

#include <algorithm>
#include <numeric>

#include "covergame/errors.hpp"

namespace covergame {

namespace {

// Per-(agent, action) resource membership bitmap, n_resources chars each.
struct Membership {
  int n_resources;
  std::vector<std::vector<std::vector<char>>> in_action;  // [agent][action][resource]

  explicit Membership(const CoverageGame& game) : n_resources(game.n_resources) {
    in_action.resize(game.n_agents);
    for (int i = 0; i < game.n_agents; ++i) {
      in_action[i].resize(game.num_actions(i));
      for (std::size_t a = 0; a < game.num_actions(i); ++a) {
        in_action[i][a].assign(game.n_resources, 0);
        for (int r : game.action_sets[i][a]) in_action[i][a][r] = 1;
      }
    }
  }
};

// Iterated elimination of strictly dominated actions. An action is dropped
// when another action of the same agent has a guaranteed payoff (lower bound
// over the surviving opponent profiles) strictly above its best conceivable
// payoff (upper bound). The bounds come from per-resource coverage-count
// intervals [1 + forced others, 1 + possible others], so every elimination is
// a true strict dominance and the pure Nash set is preserved exactly.
std::vector<std::vector<int>> reduce_strictly_dominated(const CoverageGame& game,
                                                        const ValueVector& v,
                                                        const UtilityRule& rule,
                                                        const Membership& member) {
  const int n = game.n_agents;
  const int R = game.n_resources;
  std::vector<std::vector<int>> survivors(n);
  for (int i = 0; i < n; ++i) {
    survivors[i].resize(game.num_actions(i));
    std::iota(survivors[i].begin(), survivors[i].end(), 0);
  }

  auto extreme_f = [&](int lo, int hi, bool want_min) {
    Rational best = rule.at(lo);
    for (int k = lo + 1; k <= hi; ++k) {
      const Rational& x = rule.at(k);
      if (want_min ? (x < best) : (x > best)) best = x;
    }
    return best;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // forced[r]: agents whose every surviving action covers r.
    // possible[r]: agents with some surviving action covering r.
    std::vector<int> forced(R, 0), possible(R, 0);
    std::vector<std::vector<char>> agent_forced(n, std::vector<char>(R, 0));
    std::vector<std::vector<char>> agent_possible(n, std::vector<char>(R, 0));
    for (int i = 0; i < n; ++i) {
      for (int r = 0; r < R; ++r) {
        bool all = true, any = false;
        for (int a : survivors[i]) {
          if (member.in_action[i][a][r]) any = true; else all = false;
        }
        agent_forced[i][r] = all && any;
        agent_possible[i][r] = any;
        forced[r] += agent_forced[i][r];
        possible[r] += agent_possible[i][r];
      }
    }

    for (int i = 0; i < n; ++i) {
      if (survivors[i].size() < 2) continue;
      std::vector<Rational> lo_payoff, hi_payoff;
      lo_payoff.reserve(survivors[i].size());
      hi_payoff.reserve(survivors[i].size());
      for (int a : survivors[i]) {
        Rational lo(0), hi(0);
        for (int r : game.action_sets[i][a]) {
          if (v.values[r] == 0) continue;
          const int count_lo = 1 + forced[r] - agent_forced[i][r];
          const int count_hi = 1 + possible[r] - agent_possible[i][r];
          lo += v.values[r] * extreme_f(count_lo, count_hi, /*want_min=*/true);
          hi += v.values[r] * extreme_f(count_lo, count_hi, /*want_min=*/false);
        }
        lo_payoff.push_back(std::move(lo));
        hi_payoff.push_back(std::move(hi));
      }
      const Rational& best_guaranteed = *std::max_element(lo_payoff.begin(), lo_payoff.end());
      std::vector<int> kept;
      kept.reserve(survivors[i].size());
      for (std::size_t idx = 0; idx < survivors[i].size(); ++idx) {
        if (hi_payoff[idx] < best_guaranteed) {
          changed = true;
        } else {
          kept.push_back(survivors[i][idx]);
        }
      }
      survivors[i] = std::move(kept);
    }
  }
  return survivors;
}

// Walks joint allocations over the given per-agent action lists in
// lexicographic order, keeping coverage counts incrementally up to date.
class JointWalker {
 public:
  JointWalker(const CoverageGame& game, const std::vector<std::vector<int>>& actions)
      : game_(game), actions_(actions), position_(game.n_agents, 0),
        counts_(game.n_resources, 0) {
    for (int i = 0; i < game_.n_agents; ++i) apply(i, current_action(i), +1);
  }

  const std::vector<int>& counts() const { return counts_; }

  int current_action(int agent) const { return actions_[agent][position_[agent]]; }

  Allocation allocation() const {
    Allocation a;
    a.choice.resize(game_.n_agents);
    for (int i = 0; i < game_.n_agents; ++i) a.choice[i] = current_action(i);
    return a;
  }

  bool advance() {
    for (int i = game_.n_agents - 1; i >= 0; --i) {
      apply(i, current_action(i), -1);
      if (position_[i] + 1 < static_cast<int>(actions_[i].size())) {
        ++position_[i];
        apply(i, current_action(i), +1);
        return true;
      }
      position_[i] = 0;
      apply(i, current_action(i), +1);
    }
    return false;
  }

 private:
  void apply(int agent, int action, int delta) {
    for (int r : game_.action_sets[agent][action]) counts_[r] += delta;
  }

  const CoverageGame& game_;
  const std::vector<std::vector<int>>& actions_;
  std::vector<int> position_;
  std::vector<int> counts_;
};

Rational utility_from_counts(const CoverageGame& game, const ValueVector& v,
                             const UtilityRule& rule, const std::vector<int>& counts,
                             int agent, int action) {
  Rational total(0);
  for (int r : game.action_sets[agent][action]) {
    total += v.values[r] * rule.at(counts[r]);
  }
  return total;
}

// Utility of `agent` after unilaterally switching to `alt`, given the counts
// of the current allocation in which it plays `own`.
Rational deviation_utility(const CoverageGame& game, const ValueVector& v,
                           const UtilityRule& rule, const Membership& member,
                           const std::vector<int>& counts, int agent, int own, int alt) {
  Rational total(0);
  const auto& own_mask = member.in_action[agent][own];
  for (int r : game.action_sets[agent][alt]) {
    const int count = counts[r] + (own_mask[r] ? 0 : 1);
    total += v.values[r] * rule.at(count);
  }
  return total;
}

Rational welfare_from_counts(const CoverageGame& game, const ValueVector& v,
                             const std::vector<int>& counts) {
  Rational total(0);
  for (int r = 0; r < game.n_resources; ++r) {
    if (counts[r] > 0) total += v.values[r];
  }
  return total;
}

}  // namespace

const Rational& NashSet::best_welfare() const {
  if (welfares.empty()) throw InvariantError("empty Nash set has no best welfare");
  return *std::max_element(welfares.begin(), welfares.end());
}

const Rational& NashSet::worst_welfare() const {
  if (welfares.empty()) throw InvariantError("empty Nash set has no worst welfare");
  return *std::min_element(welfares.begin(), welfares.end());
}

NashSet enumerate_nash(const CoverageGame& game, const ValueVector& v,
                       const UtilityRule& rule, const Caps& caps) {
  v.validate(game.n_resources);
  rule.validate(game.n_agents);

  Membership member(game);
  auto survivors = reduce_strictly_dominated(game, v, rule, member);

  BigInt joint(1);
  for (const auto& s : survivors) joint *= static_cast<long>(s.size());
  if (joint > BigInt(static_cast<long>(caps.joint_action_cap))) {
    throw CapExceededError("reduced joint action space " + joint.get_str() +
                           " exceeds cap " + std::to_string(caps.joint_action_cap));
  }

  NashSet result;
  result.values = v;
  result.rule = rule;

  JointWalker walker(game, survivors);
  do {
    const auto& counts = walker.counts();
    bool is_nash = true;
    for (int i = 0; i < game.n_agents && is_nash; ++i) {
      const int own = walker.current_action(i);
      const Rational current = utility_from_counts(game, v, rule, counts, i, own);
      for (int alt : survivors[i]) {
        if (alt == own) continue;
        if (deviation_utility(game, v, rule, member, counts, i, own, alt) > current) {
          is_nash = false;
          break;
        }
      }
    }
    if (is_nash) {
      result.equilibria.push_back(walker.allocation());
      result.welfares.push_back(welfare_from_counts(game, v, counts));
    }
  } while (walker.advance());

  return result;
}

Allocation best_response_dynamics(const CoverageGame& game, const ValueVector& v,
                                  const UtilityRule& rule, const Allocation& init,
                                  const BrdOptions& options) {
  v.validate(game.n_resources);
  rule.validate(game.n_agents);
  init.validate(game);

  std::vector<int> order = options.agent_order;
  if (order.empty()) {
    order.resize(game.n_agents);
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> identity(game.n_agents);
    std::iota(identity.begin(), identity.end(), 0);
    if (sorted != identity) {
      throw BadParamsError("agent_order must be a permutation of 0..n-1");
    }
  }

  Membership member(game);
  Allocation current = init;
  std::vector<int> counts = coverage_counts(game, current);

  bool moved = true;
  while (moved) {
    moved = false;
    for (int agent : order) {
      const int own = current.choice[agent];
      const Rational baseline = utility_from_counts(game, v, rule, counts, agent, own);
      Rational best = baseline;
      std::vector<int> best_actions;
      for (int alt = 0; alt < static_cast<int>(game.num_actions(agent)); ++alt) {
        if (alt == own) continue;
        Rational u = deviation_utility(game, v, rule, member, counts, agent, own, alt);
        if (u > best) {
          best = u;
          best_actions.assign(1, alt);
        } else if (!best_actions.empty() && u == best) {
          best_actions.push_back(alt);
        }
      }
      if (best_actions.empty()) continue;  // no strict improvement, stay put
      int chosen = options.tie_break ? options.tie_break(best_actions) : best_actions.front();
      if (std::find(best_actions.begin(), best_actions.end(), chosen) == best_actions.end()) {
        throw BadParamsError("tie_break returned an action outside the candidate set");
      }
      for (int r : game.action_sets[agent][own]) --counts[r];
      for (int r : game.action_sets[agent][chosen]) ++counts[r];
      current.choice[agent] = chosen;
      moved = true;
    }
  }
  return current;
}

BayesNashSet enumerate_bne(const CoverageGame& game, const ValueDistribution& dist,
                           const SignalingPolicy& policy, const UtilityRule& rule,
                           const Caps& caps) {
  dist.validate(game.n_resources);
  SignalingPolicy checked = policy;
  checked.normalize_and_validate(dist.size());

  BayesNashSet result;
  result.strategy_count = 1;
  result.best_expected_welfare = 0;
  result.worst_expected_welfare = 0;
  for (const auto& cell : checked.cells) {
    Rational p = cell_probability(dist, cell);
    ValueVector mean = posterior_mean(dist, cell);
    NashSet nash = enumerate_nash(game, mean, rule, caps);
    result.strategy_count *= static_cast<long>(nash.equilibria.size());
    result.best_expected_welfare += p * nash.best_welfare();
    result.worst_expected_welfare += p * nash.worst_welfare();
    result.cell_probs.push_back(std::move(p));
    result.posterior_means.push_back(std::move(mean));
    result.per_cell.push_back(std::move(nash));
  }
  result.best_expected_welfare.canonicalize();
  result.worst_expected_welfare.canonicalize();

  if (result.strategy_count <= BigInt(static_cast<long>(caps.strategy_cap))) {
    result.materialized = true;
    const int m = static_cast<int>(result.per_cell.size());
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      JointStrategy strategy;
      strategy.per_cell.reserve(m);
      Rational expected(0);
      for (int k = 0; k < m; ++k) {
        strategy.per_cell.push_back(result.per_cell[k].equilibria[pick[k]]);
        expected += result.cell_probs[k] * result.per_cell[k].welfares[pick[k]];
      }
      expected.canonicalize();
      result.strategies.push_back(std::move(strategy));
      result.expected_welfares.push_back(std::move(expected));
      int k = m - 1;
      while (k >= 0 && pick[k] + 1 == result.per_cell[k].equilibria.size()) {
        pick[k] = 0;
        --k;
      }
      if (k < 0) break;
      ++pick[k];
    }
  }
  return result;
}

bool verify_bne(const CoverageGame& game, const ValueDistribution& dist,
                const SignalingPolicy& policy, const UtilityRule& rule,
                const JointStrategy& strategy) {
  dist.validate(game.n_resources);
  SignalingPolicy checked = policy;
  checked.normalize_and_validate(dist.size());
  if (strategy.per_cell.size() != checked.cells.size()) {
    throw InvariantError("strategy has " + std::to_string(strategy.per_cell.size()) +
                         " allocations for " + std::to_string(checked.cells.size()) +
                         " policy cells");
  }
  for (const auto& alloc : strategy.per_cell) alloc.validate(game);

  Membership member(game);
  // The prior expectation of agent i's utility under a plan splits into
  // per-cell sums over the support states in that cell, and a plan chooses
  // the cell actions independently. So the strategy survives every
  // signal-contingent deviation plan iff, cell by cell, no single-action
  // switch raises the cell's direct expected utility.
  const int m = static_cast<int>(checked.cells.size());
  for (int k = 0; k < m; ++k) {
    const auto& cell = checked.cells[k];
    const Allocation& alloc = strategy.per_cell[k];
    const std::vector<int> counts = coverage_counts(game, alloc);
    for (int agent = 0; agent < game.n_agents; ++agent) {
      const int own = alloc.choice[agent];
      Rational current(0);
      for (int x : cell) {
        current += dist.probs[x] *
                   utility_from_counts(game, dist.support[x], rule, counts, agent, own);
      }
      for (int alt = 0; alt < static_cast<int>(game.num_actions(agent)); ++alt) {
        if (alt == own) continue;
        Rational deviated(0);
        for (int x : cell) {
          deviated += dist.probs[x] * deviation_utility(game, dist.support[x], rule,
                                                        member, counts, agent, own, alt);
        }
        if (deviated > current) return false;
      }
    }
  }
  return true;
}

Rational expected_welfare_direct(const CoverageGame& game, const ValueDistribution& dist,
                                 const SignalingPolicy& policy, const JointStrategy& strategy) {
  SignalingPolicy checked = policy;
  checked.normalize_and_validate(dist.size());
  if (strategy.per_cell.size() != checked.cells.size()) {
    throw InvariantError("strategy/policy cell count mismatch");
  }
  Rational total(0);
  for (std::size_t k = 0; k < checked.cells.size(); ++k) {
    for (int x : checked.cells[k]) {
      total += dist.probs[x] * welfare(game, strategy.per_cell[k], dist.support[x]);
    }
  }
  total.canonicalize();
  return total;
}

Rational expected_welfare_cellwise(const CoverageGame& game, const ValueDistribution& dist,
                                   const SignalingPolicy& policy, const JointStrategy& strategy) {
  SignalingPolicy checked = policy;
  checked.normalize_and_validate(dist.size());
  if (strategy.per_cell.size() != checked.cells.size()) {
    throw InvariantError("strategy/policy cell count mismatch");
  }
  Rational total(0);
  for (std::size_t k = 0; k < checked.cells.size(); ++k) {
    total += cell_probability(dist, checked.cells[k]) *
             welfare(game, strategy.per_cell[k], posterior_mean(dist, checked.cells[k]));
  }
  total.canonicalize();
  return total;
}

}  // namespace covergame
