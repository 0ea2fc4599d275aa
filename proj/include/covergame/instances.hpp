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

#include "covergame/model.hpp"

namespace covergame {

// One self-consistent problem instance: game, prior, signaling policy, rule.
struct InstanceBundle {
  CoverageGame game;
  ValueDistribution dist;
  SignalingPolicy policy;
  UtilityRule rule;
  std::string label;

  void validate() const;
};

// One agent, R singleton actions, R one-hot equally likely value vectors,
// full revelation, marginal-contribution rule. Informed play always finds the
// valuable resource while uninformed play cannot beat 1/R, so the optimistic
// value-of-informing equals R.
InstanceBundle gen_voip_tight(int n_resources);

// Two players over three resources with one random middle resource, full
// revelation, marginal-contribution rule. The pessimistic value-of-informing
// is voim_tight_closed_form(eps, p). Requires 0 < eps < 1 and 0 < p < 1.
InstanceBundle gen_voim_tight(const Rational& eps, const Rational& p);

Rational voim_tight_closed_form(const Rational& eps, const Rational& p);

// n-1 players choosing between z shared resources and a private one, plus a
// final player covering every shared resource, Gairing rule, full revelation.
// Both value-of-informing ratios equal gairing_tight_closed_form(n, eps).
// Requires n >= 2 and 0 < eps < f^g(n), with the strict preference
// 1/z < f^g(n) - eps validated at construction.
InstanceBundle gen_gairing_tight(int n_agents, const Rational& eps);

Rational gairing_tight_closed_form(int n_agents, const Rational& eps);

struct RandomInstanceParams {
  int n_agents = 2;
  int n_resources = 3;
  int max_actions = 3;
  int support_size = 2;
  long value_range = 4;          // values land in [0, value_range]
  long denominator_bound = 1000;
  std::uint64_t seed = 0;
  bool uniform_prior = true;     // else a random rational simplex point
  bool full_revelation = true;   // else a random partition of the support
  bool use_gairing_rule = false; // else marginal contribution
};

// Seeded, reproducible random instance for property suites and sweeps.
InstanceBundle gen_random(const RandomInstanceParams& params);

}  // namespace covergame
