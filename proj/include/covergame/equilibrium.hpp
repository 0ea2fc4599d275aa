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

#include <functional>
#include <vector>

#include "covergame/model.hpp"

namespace covergame {

// Enumeration budgets. joint_action_cap bounds the joint action space that
// exhaustive Nash enumeration will walk (after dominance reduction, see
// enumerate_nash); strategy_cap bounds how many Bayes-Nash strategies
// enumerate_bne materializes before falling back to per-cell extremes.
struct Caps {
  long long joint_action_cap = 10'000'000;
  long long strategy_cap = 1'000'000;
};

// All pure Nash equilibria of (game, values, rule), with their welfares.
// equilibria is duplicate-free and sorted lexicographically by action index.
struct NashSet {
  ValueVector values;
  UtilityRule rule;
  std::vector<Allocation> equilibria;
  std::vector<Rational> welfares;

  const Rational& best_welfare() const;
  const Rational& worst_welfare() const;
};

// Bayes-Nash equilibria of (game, dist, policy, rule). Because expected
// utilities split into per-cell sums, these are exactly the per-cell products
// of Nash sets at the posterior-mean values; strategy_count is that product.
// The full product is materialized only while it stays within
// Caps::strategy_cap; best/worst expected welfare are always present since
// they decompose cell-wise.
struct BayesNashSet {
  std::vector<NashSet> per_cell;
  std::vector<Rational> cell_probs;
  std::vector<ValueVector> posterior_means;
  BigInt strategy_count;
  bool materialized = false;
  std::vector<JointStrategy> strategies;       // empty unless materialized
  std::vector<Rational> expected_welfares;     // parallel to strategies
  Rational best_expected_welfare;
  Rational worst_expected_welfare;
};

// Exhaustive pure Nash enumeration with weak-inequality membership (ties are
// equilibria). Before enumerating, actions that are strictly dominated under
// sound interval payoff bounds are iteratively eliminated; this preserves the
// Nash set exactly and lets structured instances with huge nominal joint
// spaces stay tractable. Throws CapExceededError if the reduced joint space
// still exceeds caps.joint_action_cap.
NashSet enumerate_nash(const CoverageGame& game, const ValueVector& v,
                       const UtilityRule& rule, const Caps& caps = {});

struct BrdOptions {
  // Visit order within one round; empty means 0..n-1.
  std::vector<int> agent_order;
  // Picks among the equally-best strictly-improving actions (ascending
  // indices); null means take the lowest index.
  std::function<int(const std::vector<int>&)> tie_break;
};

// Round-based best-response dynamics: an agent moves only on strict utility
// improvement, so the exact potential strictly increases with every move and
// the dynamics terminate at a pure Nash equilibrium.
Allocation best_response_dynamics(const CoverageGame& game, const ValueVector& v,
                                  const UtilityRule& rule, const Allocation& init,
                                  const BrdOptions& options = {});

BayesNashSet enumerate_bne(const CoverageGame& game, const ValueDistribution& dist,
                           const SignalingPolicy& policy, const UtilityRule& rule,
                           const Caps& caps = {});

// Direct Bayes-Nash check: expected utilities are prior expectations over the
// support states, and every signal-contingent deviation plan is covered. This
// deliberately does not touch posterior-mean games, so it can serve as an
// independent cross-check of enumerate_bne.
bool verify_bne(const CoverageGame& game, const ValueDistribution& dist,
                const SignalingPolicy& policy, const UtilityRule& rule,
                const JointStrategy& strategy);

// Expected welfare as a direct prior expectation over support states.
Rational expected_welfare_direct(const CoverageGame& game, const ValueDistribution& dist,
                                 const SignalingPolicy& policy, const JointStrategy& strategy);

// Expected welfare as the cell-probability weighted average of per-cell
// welfares at the posterior means.
Rational expected_welfare_cellwise(const CoverageGame& game, const ValueDistribution& dist,
                                   const SignalingPolicy& policy, const JointStrategy& strategy);

}  // namespace covergame
