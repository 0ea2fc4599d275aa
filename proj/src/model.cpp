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

#include "covergame/model.hpp"

#include <algorithm>
#include <set>

#include "covergame/errors.hpp"

namespace covergame {

void CoverageGame::normalize_and_validate() {
  if (n_agents < 1) throw InvariantError("game needs at least one agent");
  if (n_resources < 1) throw InvariantError("game needs at least one resource");
  if (static_cast<int>(action_sets.size()) != n_agents) {
    throw InvariantError("action_sets size does not match n_agents");
  }
  for (int i = 0; i < n_agents; ++i) {
    auto& actions = action_sets[i];
    if (actions.empty()) {
      throw InvariantError("agent " + std::to_string(i) + " has no actions");
    }
    for (auto& a : actions) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      for (int r : a) {
        if (r < 0 || r >= n_resources) {
          throw InvariantError("agent " + std::to_string(i) +
                               " action references resource " + std::to_string(r) +
                               " out of range");
        }
      }
    }
    std::set<ActionSet> distinct(actions.begin(), actions.end());
    if (distinct.size() != actions.size()) {
      throw InvariantError("agent " + std::to_string(i) + " has duplicate actions");
    }
  }
}

void ValueVector::validate(int n_resources) const {
  if (static_cast<int>(values.size()) != n_resources) {
    throw InvariantError("value vector length " + std::to_string(values.size()) +
                         " does not match n_resources " + std::to_string(n_resources));
  }
  for (const auto& x : values) {
    if (x < 0) throw InvariantError("negative resource value");
  }
}

void ValueDistribution::validate(int n_resources) const {
  if (support.empty()) throw InvariantError("empty support");
  if (probs.size() != support.size()) {
    throw InvariantError("probs length does not match support length");
  }
  Rational total(0);
  for (const auto& p : probs) {
    if (p <= 0) throw InvariantError("support probabilities must be strictly positive");
    total += p;
  }
  if (total != 1) {
    throw InvariantError("support probabilities sum to " + fraction_string(total) +
                         ", expected 1");
  }
  for (const auto& v : support) v.validate(n_resources);
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      if (support[i] == support[j]) {
        throw InvariantError("support vectors must be pairwise distinct");
      }
    }
  }
}

void SignalingPolicy::normalize_and_validate(int support_size) {
  if (cells.empty()) throw InvariantError("policy needs at least one cell");
  std::vector<char> seen(support_size, 0);
  for (auto& cell : cells) {
    if (cell.empty()) throw InvariantError("policy cell is empty");
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    for (int idx : cell) {
      if (idx < 0 || idx >= support_size) {
        throw InvariantError("policy cell references support index " +
                             std::to_string(idx) + " out of range");
      }
      if (seen[idx]) {
        throw InvariantError("policy cells overlap at support index " +
                             std::to_string(idx));
      }
      seen[idx] = 1;
    }
  }
  for (int i = 0; i < support_size; ++i) {
    if (!seen[i]) {
      throw InvariantError("policy cells do not cover support index " +
                           std::to_string(i));
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

SignalingPolicy SignalingPolicy::full_revelation(int support_size) {
  SignalingPolicy policy;
  for (int i = 0; i < support_size; ++i) policy.cells.push_back({i});
  return policy;
}

SignalingPolicy SignalingPolicy::no_information(int support_size) {
  SignalingPolicy policy;
  policy.cells.emplace_back();
  for (int i = 0; i < support_size; ++i) policy.cells[0].push_back(i);
  return policy;
}

void UtilityRule::validate(int n_agents) const {
  if (static_cast<int>(table.size()) != n_agents) {
    throw InvariantError("utility rule table length " + std::to_string(table.size()) +
                         " does not match n_agents " + std::to_string(n_agents));
  }
  for (const auto& x : table) {
    if (x < 0) throw InvariantError("utility rule entries must be nonnegative");
  }
}

const Rational& UtilityRule::at(int count) const {
  static const Rational kZero(0);
  if (count == 0) return kZero;
  if (count < 0 || count > static_cast<int>(table.size())) {
    throw InvariantError("utility rule queried at count " + std::to_string(count) +
                         " outside [0," + std::to_string(table.size()) + "]");
  }
  return table[count - 1];
}

void Allocation::validate(const CoverageGame& game) const {
  if (static_cast<int>(choice.size()) != game.n_agents) {
    throw InvariantError("allocation length does not match n_agents");
  }
  for (int i = 0; i < game.n_agents; ++i) {
    if (choice[i] < 0 || choice[i] >= static_cast<int>(game.num_actions(i))) {
      throw InvariantError("allocation has out-of-range action index for agent " +
                           std::to_string(i));
    }
  }
}

std::vector<int> coverage_counts(const CoverageGame& game, const Allocation& alloc) {
  std::vector<int> counts(game.n_resources, 0);
  for (int i = 0; i < game.n_agents; ++i) {
    for (int r : game.action_sets[i][alloc.choice[i]]) ++counts[r];
  }
  return counts;
}

Rational welfare(const CoverageGame& game, const Allocation& alloc, const ValueVector& v) {
  v.validate(game.n_resources);
  alloc.validate(game);
  auto counts = coverage_counts(game, alloc);
  Rational total(0);
  for (int r = 0; r < game.n_resources; ++r) {
    if (counts[r] > 0) total += v.values[r];
  }
  return total;
}

Rational utility(const CoverageGame& game, const Allocation& alloc, const ValueVector& v,
                 const UtilityRule& rule, int agent) {
  if (agent < 0 || agent >= game.n_agents) {
    throw InvariantError("agent index " + std::to_string(agent) + " out of range");
  }
  v.validate(game.n_resources);
  alloc.validate(game);
  auto counts = coverage_counts(game, alloc);
  Rational total(0);
  for (int r : game.action_sets[agent][alloc.choice[agent]]) {
    total += v.values[r] * rule.at(counts[r]);
  }
  return total;
}

Rational potential(const CoverageGame& game, const Allocation& alloc, const ValueVector& v,
                   const UtilityRule& rule) {
  v.validate(game.n_resources);
  alloc.validate(game);
  auto counts = coverage_counts(game, alloc);
  Rational total(0);
  for (int r = 0; r < game.n_resources; ++r) {
    for (int j = 1; j <= counts[r]; ++j) total += v.values[r] * rule.at(j);
  }
  return total;
}

UtilityRule make_fmc(int n_agents) {
  if (n_agents < 1) throw BadParamsError("make_fmc requires n_agents >= 1");
  UtilityRule rule;
  rule.table.assign(n_agents, Rational(0));
  rule.table[0] = 1;
  return rule;
}

UtilityRule make_fg(int n_agents) {
  if (n_agents < 2) throw BadParamsError("make_fg requires n_agents >= 2");
  const int n = n_agents;
  std::vector<BigInt> fact(n);
  for (int i = 0; i < n; ++i) fact[i] = factorial(static_cast<unsigned>(i));

  const Rational base = Rational(1) / Rational(BigInt(n - 1) * fact[n - 1]);
  auto inv_fact_tail = [&](int from) {
    Rational s(0);
    for (int i = from; i <= n - 1; ++i) s += Rational(1) / Rational(fact[i]);
    return s;
  };
  const Rational denom = base + inv_fact_tail(1);

  UtilityRule rule;
  rule.table.reserve(n);
  for (int x = 1; x <= n; ++x) {
    Rational value = Rational(fact[x - 1]) * (base + inv_fact_tail(x)) / denom;
    value.canonicalize();
    rule.table.push_back(value);
  }
  return rule;
}

Rational cell_probability(const ValueDistribution& dist, const std::vector<int>& cell) {
  if (cell.empty()) throw InvariantError("empty signal cell");
  Rational p(0);
  for (int idx : cell) {
    if (idx < 0 || idx >= dist.size()) {
      throw InvariantError("cell references support index out of range");
    }
    p += dist.probs[idx];
  }
  return p;
}

ValueVector posterior_mean(const ValueDistribution& dist, const std::vector<int>& cell) {
  const Rational p_cell = cell_probability(dist, cell);
  const std::size_t dim = dist.support.front().values.size();
  ValueVector mean;
  mean.values.assign(dim, Rational(0));
  for (int idx : cell) {
    for (std::size_t r = 0; r < dim; ++r) {
      mean.values[r] += dist.probs[idx] * dist.support[idx].values[r];
    }
  }
  for (auto& x : mean.values) {
    x /= p_cell;
    x.canonicalize();
  }
  return mean;
}

ValueVector prior_mean(const ValueDistribution& dist) {
  std::vector<int> everything(dist.size());
  for (int i = 0; i < dist.size(); ++i) everything[i] = i;
  return posterior_mean(dist, everything);
}

}  // namespace covergame
