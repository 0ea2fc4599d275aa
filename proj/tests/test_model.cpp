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

#include "covergame/errors.hpp"
#include "covergame/instances.hpp"
#include "covergame/model.hpp"
#include "covergame/partitions.hpp"
#include "oracles.hpp"

using namespace covergame;
namespace oracle = covergame::testing;

namespace {

CoverageGame two_by_three_game() {
  // A1 = {{r0},{r1}}, A2 = {{r1},{r2}}: the two-player three-resource game.
  CoverageGame game;
  game.n_agents = 2;
  game.n_resources = 3;
  game.action_sets = {{{0}, {1}}, {{1}, {2}}};
  game.normalize_and_validate();
  return game;
}

ValueVector values(std::initializer_list<Rational> list) {
  ValueVector v;
  v.values = list;
  return v;
}

}  // namespace

TEST_CASE("welfare sums the values of covered resources once") {
  CoverageGame game = two_by_three_game();
  // Both agents out at the edges: covers {r0, r2}.
  Allocation a{{0, 1}};
  CHECK(welfare(game, a, values({1, 2, 3})) == 4);
  CHECK(welfare(game, a, values({0, 0, 0})) == 0);
  // Tight-instance uninformed values: covering {r0, r1} is worth 15/8.
  Allocation both_left{{0, 0}};
  CHECK(welfare(game, both_left, values({1, make_rational(7, 8), 0})) ==
        make_rational(15, 8));
  CHECK(welfare(game, both_left, values({1, make_rational(7, 8), 0})) ==
        oracle::oracle_welfare(game, both_left, values({1, make_rational(7, 8), 0})));
}

TEST_CASE("welfare rejects dimension mismatches") {
  CoverageGame game = two_by_three_game();
  Allocation a{{0, 0}};
  CHECK_THROWS_AS(welfare(game, a, values({1, 2})), InvariantError);
}

TEST_CASE("utility pays v_r * f(count) on the agent's own resources") {
  CoverageGame game = two_by_three_game();
  UtilityRule fmc = make_fmc(2);
  // Agent 0 alone on r0 of value 5.
  Allocation apart{{0, 1}};
  CHECK(utility(game, apart, values({5, 1, 1}), fmc, 0) == 5);
  // Both agents on r1: marginal contribution pays nothing.
  Allocation shared{{1, 0}};
  CHECK(utility(game, shared, values({5, 1, 1}), fmc, 0) == 0);
  // Gairing rule with n=2 pays half on a shared value-1 resource.
  CHECK(utility(game, shared, values({5, 1, 1}), make_fg(2), 0) == make_rational(1, 2));
  CHECK_THROWS_AS(utility(game, shared, values({5, 1, 1}), fmc, 2), InvariantError);
}

TEST_CASE("potential accumulates partial sums of the rule") {
  CoverageGame game;
  game.n_agents = 1;
  game.n_resources = 1;
  game.action_sets = {{{0}}};
  game.normalize_and_validate();
  CHECK(potential(game, Allocation{{0}}, values({3}), make_fmc(1)) == 3);

  CoverageGame pair;
  pair.n_agents = 2;
  pair.n_resources = 1;
  pair.action_sets = {{{0}}, {{0}}};
  pair.normalize_and_validate();
  Allocation both{{0, 0}};
  CHECK(potential(pair, both, values({1}), make_fmc(2)) == 1);
  CHECK(potential(pair, both, values({1}), make_fg(2)) == make_rational(3, 2));
}

TEST_CASE("make_fmc pays only the first coverer") {
  CHECK(make_fmc(1).table == std::vector<Rational>{1});
  CHECK(make_fmc(3).table == std::vector<Rational>({1, 0, 0}));
  CHECK_THROWS_AS(make_fmc(0), BadParamsError);
}

TEST_CASE("marginal-contribution identity on small games") {
  // Utility under f^mc equals the agent's welfare contribution, for every
  // allocation and agent of a battery of small games.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule fmc = make_fmc(bundle.game.n_agents);
    const ValueVector v = bundle.dist.support[0];
    for (const Allocation& a : oracle::all_allocations(bundle.game)) {
      for (int i = 0; i < bundle.game.n_agents; ++i) {
        CHECK(utility(bundle.game, a, v, fmc, i) ==
              oracle::oracle_welfare(bundle.game, a, v) -
                  oracle::oracle_welfare_without(bundle.game, a, v, i));
      }
    }
  }
}

TEST_CASE("make_fg matches hand-evaluated tables") {
  CHECK(make_fg(2).table == std::vector<Rational>({1, make_rational(1, 2)}));
  CHECK(make_fg(3).table ==
        std::vector<Rational>({1, make_rational(3, 7), make_rational(2, 7)}));
  CHECK_THROWS_AS(make_fg(1), BadParamsError);
}

TEST_CASE("gairing rule entries are strictly positive with f(1) = 1") {
  for (int n = 2; n <= 12; ++n) {
    UtilityRule rule = make_fg(n);
    CHECK(rule.table[0] == 1);
    for (const Rational& x : rule.table) CHECK(x > 0);
  }
}

TEST_CASE("potential identity: deviation differences equal utility differences") {
  Rng rng(2024);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const UtilityRule rule = oracle::random_rule(seed, bundle.game.n_agents);
    const ValueVector& v = bundle.dist.support[seed % bundle.dist.support.size()];
    for (int trial = 0; trial < 10; ++trial) {
      Allocation a;
      for (int i = 0; i < bundle.game.n_agents; ++i) {
        a.choice.push_back(static_cast<int>(rng.below(bundle.game.num_actions(i))));
      }
      const int agent = static_cast<int>(rng.below(bundle.game.n_agents));
      Allocation b = a;
      b.choice[agent] = static_cast<int>(rng.below(bundle.game.num_actions(agent)));
      CHECK(potential(bundle.game, b, v, rule) - potential(bundle.game, a, v, rule) ==
            utility(bundle.game, b, v, rule, agent) - utility(bundle.game, a, v, rule, agent));
    }
  }
}

TEST_CASE("posterior_mean degenerate cells") {
  InstanceBundle bundle = gen_voim_tight(make_rational(1, 2), make_rational(1, 2));
  // Singleton cell reproduces the support vector exactly.
  CHECK(posterior_mean(bundle.dist, {1}) == bundle.dist.support[1]);
  // Whole-support cell is the prior mean; middle value 1 - eps(1-p)^2 = 7/8.
  ValueVector mean = posterior_mean(bundle.dist, {0, 1});
  CHECK(mean == prior_mean(bundle.dist));
  CHECK(mean.values[1] == make_rational(7, 8));
  CHECK_THROWS_AS(posterior_mean(bundle.dist, {}), InvariantError);
}

TEST_CASE("posterior means decompose the prior mean over every partition") {
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed, true, seed % 2 == 0);
    const ValueVector prior = prior_mean(bundle.dist);
    for_each_set_partition(bundle.dist.size(), [&](const SetPartition& cells) {
      ValueVector mix;
      mix.values.assign(prior.values.size(), Rational(0));
      for (const auto& cell : cells) {
        const Rational p = cell_probability(bundle.dist, cell);
        const ValueVector mean = posterior_mean(bundle.dist, cell);
        for (std::size_t r = 0; r < mix.values.size(); ++r) {
          mix.values[r] += p * mean.values[r];
        }
      }
      for (std::size_t r = 0; r < mix.values.size(); ++r) {
        CHECK(mix.values[r] == prior.values[r]);
      }
    });
  }
}

TEST_CASE("type invariants reject malformed inputs") {
  CoverageGame game = two_by_three_game();

  CoverageGame no_actions = game;
  no_actions.action_sets[0].clear();
  CHECK_THROWS_AS(no_actions.normalize_and_validate(), InvariantError);

  CoverageGame out_of_range = game;
  out_of_range.action_sets[0].push_back({7});
  CHECK_THROWS_AS(out_of_range.normalize_and_validate(), InvariantError);

  CoverageGame duplicate = game;
  duplicate.action_sets[0].push_back({0});
  CHECK_THROWS_AS(duplicate.normalize_and_validate(), InvariantError);

  // Duplicate resources inside one action collapse: {0,0} is the set {0}.
  CoverageGame multiset = game;
  multiset.action_sets[1] = {{0, 0, 2}};
  multiset.normalize_and_validate();
  CHECK(multiset.action_sets[1][0] == ActionSet({0, 2}));

  ValueDistribution dist;
  dist.support = {values({1, 0, 0}), values({0, 1, 0})};
  dist.probs = {make_rational(1, 2), make_rational(2, 5)};
  CHECK_THROWS_AS(dist.validate(3), InvariantError);  // sums to 9/10
  dist.probs = {make_rational(1, 1), Rational(0)};
  CHECK_THROWS_AS(dist.validate(3), InvariantError);  // zero-probability state
  dist.probs = {make_rational(1, 2), make_rational(1, 2)};
  dist.support[1] = dist.support[0];
  CHECK_THROWS_AS(dist.validate(3), InvariantError);  // duplicate support

  SignalingPolicy overlap;
  overlap.cells = {{0, 1}, {1}};
  CHECK_THROWS_AS(overlap.normalize_and_validate(2), InvariantError);
  SignalingPolicy gap;
  gap.cells = {{0}};
  CHECK_THROWS_AS(gap.normalize_and_validate(2), InvariantError);
  SignalingPolicy empty_cell;
  empty_cell.cells = {{0, 1}, {}};
  CHECK_THROWS_AS(empty_cell.normalize_and_validate(2), InvariantError);

  UtilityRule negative;
  negative.table = {Rational(1), Rational(-1)};
  CHECK_THROWS_AS(negative.validate(2), InvariantError);
  UtilityRule short_table;
  short_table.table = {Rational(1)};
  CHECK_THROWS_AS(short_table.validate(2), InvariantError);

  Allocation bad{{0, 5}};
  CHECK_THROWS_AS(bad.validate(game), InvariantError);
}

TEST_CASE("results are independent of summation order") {
  // Recompute each aggregate with the resource loop reversed; exact rationals
  // must agree bit for bit.
  for (std::uint64_t seed = 2000; seed < 2020; ++seed) {
    InstanceBundle bundle = oracle::small_instance(seed);
    const CoverageGame& game = bundle.game;
    const UtilityRule rule = oracle::random_rule(seed, game.n_agents);
    const ValueVector& v = bundle.dist.support[0];
    for (const Allocation& a : oracle::all_allocations(game)) {
      const auto counts = coverage_counts(game, a);
      Rational welfare_rev(0), potential_rev(0);
      for (int r = game.n_resources - 1; r >= 0; --r) {
        if (counts[r] > 0) welfare_rev += v.values[r];
        for (int j = counts[r]; j >= 1; --j) potential_rev += v.values[r] * rule.at(j);
      }
      CHECK(welfare(game, a, v) == welfare_rev);
      CHECK(potential(game, a, v, rule) == potential_rev);
      for (int i = 0; i < game.n_agents; ++i) {
        Rational utility_rev(0);
        const ActionSet& own = game.action_sets[i][a.choice[i]];
        for (auto it = own.rbegin(); it != own.rend(); ++it) {
          utility_rev += v.values[*it] * rule.at(counts[*it]);
        }
        CHECK(utility(game, a, v, rule, i) == utility_rev);
      }
    }
    // Posterior mean accumulated in reversed cell order.
    const std::vector<int> cell = bundle.policy.cells[0];
    const ValueVector mean = posterior_mean(bundle.dist, cell);
    ValueVector rev;
    rev.values.assign(game.n_resources, Rational(0));
    Rational p_cell(0);
    for (auto it = cell.rbegin(); it != cell.rend(); ++it) p_cell += bundle.dist.probs[*it];
    for (auto it = cell.rbegin(); it != cell.rend(); ++it) {
      for (int r = game.n_resources - 1; r >= 0; --r) {
        rev.values[r] += bundle.dist.probs[*it] * bundle.dist.support[*it].values[r] / p_cell;
      }
    }
    CHECK(mean == rev);
  }
}

TEST_CASE("utility rule lookups include the implicit f(0) = 0") {
  UtilityRule rule = make_fg(3);
  CHECK(rule.at(0) == 0);
  CHECK(rule.at(1) == 1);
  CHECK_THROWS_AS(rule.at(4), InvariantError);
  CHECK_THROWS_AS(rule.at(-1), InvariantError);
}
