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

#include <doctest.h>

#include <algorithm>

#include "covergame/equilibrium.hpp"
#include "covergame/errors.hpp"
#include "covergame/instances.hpp"
#include "covergame/partitions.hpp"
#include "oracles.hpp"

using namespace covergame;
namespace oracle = covergame::testing;

namespace {

ValueVector values(std::initializer_list<Rational> list) {
  ValueVector v;
  v.values = list;
  return v;
}

const InstanceBundle& voim_half() {
  static const InstanceBundle bundle =
      gen_voim_tight(make_rational(1, 2), make_rational(1, 2));
  return bundle;
}

}  // namespace

TEST_CASE("enumerate_nash on the tight two-player instance") {
  const CoverageGame& game = voim_half().game;
  const UtilityRule fmc = make_fmc(2);

  // Uninformed values: unique equilibrium (r0, r1).
  NashSet uninformed = enumerate_nash(game, values({1, make_rational(7, 8), 0}), fmc);
  REQUIRE(uninformed.equilibria.size() == 1);
  CHECK(uninformed.equilibria[0] == Allocation{{0, 0}});
  CHECK(uninformed.welfares[0] == make_rational(15, 8));

  // Informed high state: (r0,r1) plus the indifferent (r1,r2).
  NashSet high = enumerate_nash(game, values({1, make_rational(5, 4), 0}), fmc);
  REQUIRE(high.equilibria.size() == 2);
  CHECK(high.equilibria[0] == Allocation{{0, 0}});
  CHECK(high.equilibria[1] == Allocation{{1, 1}});
  CHECK(high.best_welfare() == make_rational(9, 4));
  CHECK(high.worst_welfare() == make_rational(5, 4));
}

TEST_CASE("single-agent Nash set is the set of covered-value maximizers") {
  CoverageGame game;
  game.n_agents = 1;
  game.n_resources = 3;
  game.action_sets = {{{0}, {1}, {2}, {0, 2}}};
  game.normalize_and_validate();
  NashSet nash = enumerate_nash(game, values({2, 1, 2}), make_fmc(1));
  // Both {0,2} and... only the pair action reaches 4.
  REQUIRE(nash.equilibria.size() == 1);
  CHECK(nash.equilibria[0] == Allocation{{3}});
  CHECK(nash.welfares[0] == 4);

  // With equal values the singletons tie below the pair; ties among maximizers
  // all count.
  NashSet ties = enumerate_nash(game, values({2, 2, 2}), make_fmc(1));
  std::vector<Allocation> expected = {Allocation{{3}}};
  CHECK(ties.equilibria == expected);

  NashSet flat = enumerate_nash(game, values({0, 0, 0}), make_fmc(1));
  CHECK(flat.equilibria.size() == 4);  // everything is indifferent
}

TEST_CASE("enumerate_nash equals the definitional brute force on random instances") {
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule rule = oracle::random_rule(seed * 31, bundle.game.n_agents);
    for (const ValueVector& v : bundle.dist.support) {
      NashSet nash = enumerate_nash(bundle.game, v, rule);
      CHECK(nash.equilibria == oracle::oracle_enumerate_nash(bundle.game, v, rule));
      for (std::size_t i = 0; i < nash.equilibria.size(); ++i) {
        CHECK(nash.welfares[i] == oracle::oracle_welfare(bundle.game, nash.equilibria[i], v));
      }
    }
  }
}

TEST_CASE("equilibria always exist and are duplicate-free and sorted") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule rule = oracle::random_rule(seed, bundle.game.n_agents);
    NashSet nash = enumerate_nash(bundle.game, prior_mean(bundle.dist), rule);
    CHECK(!nash.equilibria.empty());
    CHECK(std::is_sorted(nash.equilibria.begin(), nash.equilibria.end()));
    CHECK(std::adjacent_find(nash.equilibria.begin(), nash.equilibria.end()) ==
          nash.equilibria.end());
  }
}

TEST_CASE("scaling the values leaves the Nash set unchanged") {
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule rule = oracle::random_rule(seed, bundle.game.n_agents);
    const ValueVector& v = bundle.dist.support[0];
    const Rational lambda = make_rational(static_cast<long>(seed % 7) + 1, 3);
    ValueVector scaled = v;
    for (auto& x : scaled.values) x *= lambda;
    CHECK(enumerate_nash(bundle.game, v, rule).equilibria ==
          enumerate_nash(bundle.game, scaled, rule).equilibria);
  }
}

TEST_CASE("enumeration cap") {
  InstanceBundle bundle = gen_voip_tight(3);
  Caps caps;
  caps.joint_action_cap = 2;
  // Uninformed values leave the one agent indifferent across 3 actions, so
  // nothing reduces and the cap trips.
  CHECK_THROWS_AS(enumerate_nash(bundle.game, prior_mean(bundle.dist), bundle.rule, caps),
                  CapExceededError);
}

TEST_CASE("best-response dynamics reaches the unique equilibrium from any start") {
  const CoverageGame& game = voim_half().game;
  const UtilityRule fmc = make_fmc(2);
  const ValueVector v = values({1, make_rational(7, 8), 0});
  for (int first : {0, 1}) {
    for (int second : {0, 1}) {
      Allocation out = best_response_dynamics(game, v, fmc, Allocation{{first, second}});
      CHECK(out == Allocation{{0, 0}});
    }
  }
}

TEST_CASE("best-response dynamics returns a Nash start unchanged") {
  const CoverageGame& game = voim_half().game;
  const ValueVector v = values({1, make_rational(5, 4), 0});
  // (r1, r2) is an equilibrium with an indifferent deviation; ties must not move.
  Allocation nash{{1, 1}};
  CHECK(best_response_dynamics(game, v, make_fmc(2), nash) == nash);
}

TEST_CASE("best-response dynamics lands in the enumerated set; moves ascend the potential") {
  Rng rng(777);
  for (std::uint64_t seed = 500; seed < 525; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule rule = oracle::random_rule(seed, bundle.game.n_agents);
    const ValueVector& v = bundle.dist.support[0];
    const auto nash = enumerate_nash(bundle.game, v, rule).equilibria;
    for (int trial = 0; trial < 8; ++trial) {
      Allocation start;
      for (int i = 0; i < bundle.game.n_agents; ++i) {
        start.choice.push_back(static_cast<int>(rng.below(bundle.game.num_actions(i))));
      }
      Allocation result = best_response_dynamics(bundle.game, v, rule, start);
      CHECK(std::binary_search(nash.begin(), nash.end(), result));

      // Replay one round of strict best responses by hand: each applied move
      // must strictly increase the exact potential.
      Allocation current = start;
      for (int agent = 0; agent < bundle.game.n_agents; ++agent) {
        Rational best = utility(bundle.game, current, v, rule, agent);
        int best_action = current.choice[agent];
        for (int alt = 0; alt < static_cast<int>(bundle.game.num_actions(agent)); ++alt) {
          Allocation trial_alloc = current;
          trial_alloc.choice[agent] = alt;
          Rational u = utility(bundle.game, trial_alloc, v, rule, agent);
          if (u > best) {
            best = u;
            best_action = alt;
          }
        }
        if (best_action != current.choice[agent]) {
          Allocation moved = current;
          moved.choice[agent] = best_action;
          CHECK(potential(bundle.game, moved, v, rule) >
                potential(bundle.game, current, v, rule));
          current = moved;
        }
      }
    }
  }
}

TEST_CASE("best-response dynamics honors injected schedule and tie-break") {
  const CoverageGame& game = voim_half().game;
  const ValueVector v = values({1, make_rational(7, 8), 0});
  BrdOptions options;
  options.agent_order = {1, 0};
  options.tie_break = [](const std::vector<int>& candidates) { return candidates.back(); };
  CHECK(best_response_dynamics(game, v, make_fmc(2), Allocation{{1, 0}}, options) ==
        Allocation{{0, 0}});
  BrdOptions bad;
  bad.agent_order = {0, 0};
  CHECK_THROWS_AS(best_response_dynamics(game, v, make_fmc(2), Allocation{{1, 0}}, bad),
                  BadParamsError);
}

TEST_CASE("enumerate_bne with a single cell is the uninformed Nash set") {
  for (std::uint64_t seed = 600; seed < 615; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed, false, seed % 2 == 0);
    SignalingPolicy none = SignalingPolicy::no_information(bundle.dist.size());
    BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, none, bundle.rule);
    NashSet nash = enumerate_nash(bundle.game, prior_mean(bundle.dist), bundle.rule);
    REQUIRE(bne.per_cell.size() == 1);
    CHECK(bne.per_cell[0].equilibria == nash.equilibria);
    CHECK(bne.best_expected_welfare == nash.best_welfare());
    CHECK(bne.worst_expected_welfare == nash.worst_welfare());
  }
}

TEST_CASE("enumerate_bne composes the tight instance cell-wise") {
  const InstanceBundle& bundle = voim_half();
  BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule);
  CHECK(bne.strategy_count == 2);
  REQUIRE(bne.materialized);
  REQUIRE(bne.strategies.size() == 2);
  CHECK(bne.best_expected_welfare == make_rational(15, 8));
  CHECK(bne.worst_expected_welfare == make_rational(11, 8));
  for (std::size_t i = 0; i < bne.strategies.size(); ++i) {
    CHECK(bne.expected_welfares[i] ==
          expected_welfare_direct(bundle.game, bundle.dist, bundle.policy, bne.strategies[i]));
  }
}

TEST_CASE("enumerate_bne on the one-agent tight instance") {
  InstanceBundle bundle = gen_voip_tight(3);
  BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule);
  CHECK(bne.strategy_count == 1);
  CHECK(bne.best_expected_welfare == 1);
  CHECK(bne.worst_expected_welfare == 1);
}

TEST_CASE("strategy count is the product of per-cell equilibrium counts") {
  for (std::uint64_t seed = 650; seed < 665; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed, true, seed % 2 == 0);
    const UtilityRule rule = oracle::random_rule(seed * 3, bundle.game.n_agents);
    BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, bundle.policy, rule);
    BigInt product(1);
    for (const NashSet& cell : bne.per_cell) {
      product *= static_cast<long>(cell.equilibria.size());
    }
    CHECK(bne.strategy_count == product);
    REQUIRE(bne.materialized);
    CHECK(BigInt(static_cast<long>(bne.strategies.size())) == bne.strategy_count);
  }
}

TEST_CASE("strategy cap switches off materialization but keeps the extremes") {
  const InstanceBundle& bundle = voim_half();
  Caps caps;
  caps.strategy_cap = 1;
  BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule, caps);
  CHECK(!bne.materialized);
  CHECK(bne.strategies.empty());
  CHECK(bne.strategy_count == 2);
  CHECK(bne.best_expected_welfare == make_rational(15, 8));
  CHECK(bne.worst_expected_welfare == make_rational(11, 8));
}

TEST_CASE("verify_bne spot checks on the tight instance") {
  const InstanceBundle& bundle = voim_half();
  // low cell -> (r0, r1), high cell -> (r1, r2): a Bayes-Nash equilibrium.
  JointStrategy good{{Allocation{{0, 0}}, Allocation{{1, 1}}}};
  CHECK(verify_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule, good));
  // Playing (r1, r2) in the low cell lets player 0 gain by moving to r0.
  JointStrategy bad{{Allocation{{1, 1}}, Allocation{{1, 1}}}};
  CHECK(!verify_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule, bad));

  SignalingPolicy none = SignalingPolicy::no_information(bundle.dist.size());
  JointStrategy single{{Allocation{{0, 0}}}};
  CHECK(verify_bne(bundle.game, bundle.dist, none, bundle.rule, single));

  JointStrategy wrong_arity{{Allocation{{0, 0}}}};
  CHECK_THROWS_AS(
      verify_bne(bundle.game, bundle.dist, bundle.policy, bundle.rule, wrong_arity),
      InvariantError);
}

TEST_CASE("cell-wise composition equals direct strategy enumeration") {
  for (std::uint64_t seed = 700; seed < 730; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed, true, seed % 2 == 0, 2);
    const UtilityRule rule = oracle::random_rule(seed * 17, bundle.game.n_agents);
    for_each_set_partition(bundle.dist.size(), [&](const SetPartition& cells) {
      SignalingPolicy policy;
      policy.cells = cells;
      policy.normalize_and_validate(bundle.dist.size());

      BayesNashSet bne = enumerate_bne(bundle.game, bundle.dist, policy, rule);
      REQUIRE(bne.materialized);
      std::vector<JointStrategy> composed = bne.strategies;
      std::sort(composed.begin(), composed.end());
      std::vector<JointStrategy> direct =
          oracle::oracle_enumerate_bne(bundle.game, bundle.dist, policy, rule);
      std::sort(direct.begin(), direct.end());
      CHECK(composed == direct);
    });
  }
}

TEST_CASE("expected welfare: direct expectation equals cell-wise average") {
  for (std::uint64_t seed = 800; seed < 820; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed, false, false, 2);
    for (const JointStrategy& s : oracle::all_joint_strategies(bundle.game, bundle.policy)) {
      CHECK(expected_welfare_direct(bundle.game, bundle.dist, bundle.policy, s) ==
            expected_welfare_cellwise(bundle.game, bundle.dist, bundle.policy, s));
    }
  }
}
