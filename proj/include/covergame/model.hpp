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

#include <string>
#include <vector>

#include "covergame/rational.hpp"

namespace covergame {

// A single admissible assignment: the set of resources an agent covers,
// kept as sorted, duplicate-free 0-based indices.
using ActionSet = std::vector<int>;

// The coverage game structure G = (agents, resources, admissible actions).
// Values are immutable after construction; every operation below is a pure
// function of its arguments.
struct CoverageGame {
  int n_agents = 0;
  int n_resources = 0;
  // action_sets[i] lists agent i's admissible actions.
  std::vector<std::vector<ActionSet>> action_sets;

  // Throws InvariantError unless: every agent has at least one action, all
  // resource indices are in range, and actions within one agent's list are
  // pairwise distinct. Actions are normalized (sorted, deduplicated) first.
  void normalize_and_validate();

  std::size_t num_actions(int agent) const { return action_sets[agent].size(); }

  bool operator==(const CoverageGame& other) const {
    return n_agents == other.n_agents && n_resources == other.n_resources &&
           action_sets == other.action_sets;
  }
};

// One realization of the resource values, all entries >= 0.
struct ValueVector {
  std::vector<Rational> values;

  void validate(int n_resources) const;

  bool operator==(const ValueVector& other) const { return values == other.values; }
};

// Discrete prior over value vectors. Zero-probability support points are
// rejected: the posterior on a never-occurring signal cell is undefined.
struct ValueDistribution {
  std::vector<ValueVector> support;
  std::vector<Rational> probs;

  void validate(int n_resources) const;

  int size() const { return static_cast<int>(support.size()); }

  bool operator==(const ValueDistribution& other) const {
    return support == other.support && probs == other.probs;
  }
};

// A deterministic signaling policy: a partition of the support indices.
// Cells are normalized to sorted contents ordered by smallest element.
struct SignalingPolicy {
  std::vector<std::vector<int>> cells;

  void normalize_and_validate(int support_size);

  int num_cells() const { return static_cast<int>(cells.size()); }

  static SignalingPolicy full_revelation(int support_size);
  static SignalingPolicy no_information(int support_size);

  bool operator==(const SignalingPolicy& other) const { return cells == other.cells; }
};

// Shared local utility rule f as a finite table f(1..n). f(0) = 0 is implicit
// and never stored.
struct UtilityRule {
  std::vector<Rational> table;

  void validate(int n_agents) const;

  // f(count) for count in [0, n_agents].
  const Rational& at(int count) const;

  bool operator==(const UtilityRule& other) const { return table == other.table; }
};

// A joint action: per-agent index into that agent's action list.
struct Allocation {
  std::vector<int> choice;

  void validate(const CoverageGame& game) const;

  bool operator==(const Allocation& other) const { return choice == other.choice; }
  bool operator<(const Allocation& other) const { return choice < other.choice; }
};

// Signal-contingent play: one Allocation per policy cell, indexed like
// SignalingPolicy::cells.
struct JointStrategy {
  std::vector<Allocation> per_cell;

  bool operator==(const JointStrategy& other) const { return per_cell == other.per_cell; }
  bool operator<(const JointStrategy& other) const { return per_cell < other.per_cell; }
};

// Number of agents covering each resource under alloc.
std::vector<int> coverage_counts(const CoverageGame& game, const Allocation& alloc);

// System welfare: total value of resources covered by at least one agent.
Rational welfare(const CoverageGame& game, const Allocation& alloc, const ValueVector& v);

// Agent's local objective: sum over its covered resources of v_r * f(|a|_r).
Rational utility(const CoverageGame& game, const Allocation& alloc, const ValueVector& v,
                 const UtilityRule& rule, int agent);

// Exact potential Phi(a; v) = sum_r v_r * sum_{j=1}^{|a|_r} f(j). Unilateral
// deviation differences of Phi equal the deviating agent's utility
// differences, which is what certifies best-response convergence.
Rational potential(const CoverageGame& game, const Allocation& alloc, const ValueVector& v,
                   const UtilityRule& rule);

// Marginal-contribution rule: pays only for resources covered alone.
UtilityRule make_fmc(int n_agents);

// The price-of-anarchy maximizing rule; requires n_agents >= 2.
UtilityRule make_fg(int n_agents);

Rational cell_probability(const ValueDistribution& dist, const std::vector<int>& cell);

// E[v | cell]: probability-weighted average of the cell's support vectors.
ValueVector posterior_mean(const ValueDistribution& dist, const std::vector<int>& cell);

ValueVector prior_mean(const ValueDistribution& dist);

}  // namespace covergame
