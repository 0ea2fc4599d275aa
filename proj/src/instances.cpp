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

#include "covergame/instances.hpp"

#include <algorithm>
#include <set>

#include "covergame/errors.hpp"
#include "covergame/rng.hpp"

namespace covergame {

void InstanceBundle::validate() const {
  if (label.empty()) throw InvariantError("instance label must be nonempty");
  CoverageGame g = game;
  g.normalize_and_validate();
  dist.validate(game.n_resources);
  SignalingPolicy p = policy;
  p.normalize_and_validate(dist.size());
  rule.validate(game.n_agents);
}

InstanceBundle gen_voip_tight(int n_resources) {
  if (n_resources < 1) throw BadParamsError("gen_voip_tight requires R >= 1");
  const int R = n_resources;

  InstanceBundle bundle;
  bundle.game.n_agents = 1;
  bundle.game.n_resources = R;
  bundle.game.action_sets.resize(1);
  for (int r = 0; r < R; ++r) bundle.game.action_sets[0].push_back({r});
  bundle.game.normalize_and_validate();

  for (int state = 0; state < R; ++state) {
    ValueVector v;
    v.values.assign(R, Rational(0));
    v.values[state] = 1;
    bundle.dist.support.push_back(std::move(v));
    bundle.dist.probs.push_back(make_rational(1, R));
  }
  bundle.policy = SignalingPolicy::full_revelation(R);
  bundle.rule = make_fmc(1);
  bundle.label = "voip-tight[R=" + std::to_string(R) + "]";
  bundle.validate();
  return bundle;
}

InstanceBundle gen_voim_tight(const Rational& eps, const Rational& p) {
  if (!(eps > 0 && eps < 1)) throw BadParamsError("gen_voim_tight requires 0 < eps < 1");
  if (!(p > 0 && p < 1)) throw BadParamsError("gen_voim_tight requires 0 < p < 1");

  InstanceBundle bundle;
  bundle.game.n_agents = 2;
  bundle.game.n_resources = 3;
  bundle.game.action_sets = {{{0}, {1}}, {{1}, {2}}};
  bundle.game.normalize_and_validate();

  ValueVector low, high;
  low.values = {Rational(1), 1 - eps, Rational(0)};
  high.values = {Rational(1), 1 + eps * (1 - p), Rational(0)};
  for (auto& x : low.values) x.canonicalize();
  for (auto& x : high.values) x.canonicalize();
  bundle.dist.support = {std::move(low), std::move(high)};
  bundle.dist.probs = {1 - p, p};
  for (auto& q : bundle.dist.probs) q.canonicalize();

  bundle.policy = SignalingPolicy::full_revelation(2);
  bundle.rule = make_fmc(2);
  bundle.label = "voim-tight[eps=" + fraction_string(eps) + ";p=" + fraction_string(p) + "]";
  bundle.validate();
  return bundle;
}

Rational voim_tight_closed_form(const Rational& eps, const Rational& p) {
  Rational numerator = (1 - p) * (2 - eps) + p * (1 + eps * (1 - p));
  Rational denominator = 2 - eps * (1 - p) * (1 - p);
  Rational result = numerator / denominator;
  result.canonicalize();
  return result;
}

namespace {

// ceil(1/x) for rational x > 0.
long ceil_inverse(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_den().get_mpz_t(), x.get_num().get_mpz_t());
  if (!q.fits_slong_p()) throw BadParamsError("shared resource count does not fit in long");
  return q.get_si();
}

}  // namespace

InstanceBundle gen_gairing_tight(int n_agents, const Rational& eps) {
  if (n_agents < 2) throw BadParamsError("gen_gairing_tight requires n >= 2");
  const UtilityRule rule = make_fg(n_agents);
  const Rational fg_n = rule.table[n_agents - 1];
  if (!(eps > 0 && eps < fg_n)) {
    throw BadParamsError("gen_gairing_tight requires 0 < eps < f^g(n) = " +
                         fraction_string(fg_n));
  }
  const Rational private_value = fg_n - eps;
  const long z = ceil_inverse(private_value);
  if (z > 100000) {
    throw BadParamsError("eps is so close to f^g(n) that the construction needs z = " +
                         std::to_string(z) + " shared resources");
  }
  if (!(make_rational(1, z) < private_value)) {
    throw BadParamsError("tight construction needs 1/z strictly below f^g(n) - eps; "
                         "perturb eps");
  }

  const int n = n_agents;
  InstanceBundle bundle;
  bundle.game.n_agents = n;
  bundle.game.n_resources = static_cast<int>(z) + (n - 1);  // shared first, then private
  bundle.game.action_sets.resize(n);
  ActionSet all_shared;
  for (long j = 0; j < z; ++j) all_shared.push_back(static_cast<int>(j));
  for (int i = 0; i < n - 1; ++i) {
    for (long j = 0; j < z; ++j) bundle.game.action_sets[i].push_back({static_cast<int>(j)});
    bundle.game.action_sets[i].push_back({static_cast<int>(z) + i});
  }
  bundle.game.action_sets[n - 1].push_back(all_shared);
  bundle.game.normalize_and_validate();

  for (long state = 0; state < z; ++state) {
    ValueVector v;
    v.values.assign(bundle.game.n_resources, Rational(0));
    v.values[state] = 1;
    for (int i = 0; i < n - 1; ++i) v.values[z + i] = private_value;
    bundle.dist.support.push_back(std::move(v));
    bundle.dist.probs.push_back(make_rational(1, z));
  }
  bundle.policy = SignalingPolicy::full_revelation(static_cast<int>(z));
  bundle.rule = rule;
  bundle.label = "gairing-tight[n=" + std::to_string(n) + ";eps=" + fraction_string(eps) + "]";
  bundle.validate();
  return bundle;
}

Rational gairing_tight_closed_form(int n_agents, const Rational& eps) {
  if (n_agents < 2) throw BadParamsError("gairing closed form requires n >= 2");
  const UtilityRule rule = make_fg(n_agents);
  Rational result = 1 / (1 + (n_agents - 1) * (rule.table[n_agents - 1] - eps));
  result.canonicalize();
  return result;
}

InstanceBundle gen_random(const RandomInstanceParams& params) {
  if (params.n_agents < 1 || params.n_resources < 1 || params.max_actions < 1 ||
      params.support_size < 1 || params.value_range < 0 || params.denominator_bound < 1) {
    throw BadParamsError("gen_random parameters out of range");
  }
  if (params.use_gairing_rule && params.n_agents < 2) {
    throw BadParamsError("gairing rule needs at least two agents");
  }
  Rng rng(params.seed);

  InstanceBundle bundle;
  bundle.game.n_agents = params.n_agents;
  bundle.game.n_resources = params.n_resources;
  bundle.game.action_sets.resize(params.n_agents);
  for (int i = 0; i < params.n_agents; ++i) {
    const int wanted = static_cast<int>(rng.range(1, params.max_actions));
    std::set<ActionSet> actions;
    for (int attempt = 0; attempt < 8 * wanted && static_cast<int>(actions.size()) < wanted;
         ++attempt) {
      ActionSet a;
      for (int r = 0; r < params.n_resources; ++r) {
        if (rng.coin()) a.push_back(r);
      }
      if (a.empty()) a.push_back(static_cast<int>(rng.below(params.n_resources)));
      actions.insert(std::move(a));
    }
    bundle.game.action_sets[i].assign(actions.begin(), actions.end());
  }
  bundle.game.normalize_and_validate();

  auto random_value = [&]() {
    const long den = rng.range(1, params.denominator_bound);
    const long num = rng.range(0, params.value_range * den);
    return make_rational(num, den);
  };
  std::set<std::vector<Rational>> seen;
  for (int s = 0; s < params.support_size; ++s) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      ValueVector v;
      v.values.reserve(params.n_resources);
      for (int r = 0; r < params.n_resources; ++r) v.values.push_back(random_value());
      if (seen.insert(v.values).second) {
        bundle.dist.support.push_back(std::move(v));
        break;
      }
    }
  }
  if (static_cast<int>(bundle.dist.support.size()) != params.support_size) {
    throw InvariantError("could not draw distinct support vectors; widen value_range");
  }

  if (params.uniform_prior) {
    for (int s = 0; s < params.support_size; ++s) {
      bundle.dist.probs.push_back(make_rational(1, params.support_size));
    }
  } else {
    std::vector<long> weights(params.support_size);
    long total = 0;
    for (auto& w : weights) {
      w = rng.range(1, 1000);
      total += w;
    }
    for (long w : weights) bundle.dist.probs.push_back(make_rational(w, total));
  }

  if (params.full_revelation) {
    bundle.policy = SignalingPolicy::full_revelation(params.support_size);
  } else {
    // Random restricted growth string.
    std::vector<int> rgs(params.support_size, 0);
    int max_cell = 0;
    for (int i = 1; i < params.support_size; ++i) {
      rgs[i] = static_cast<int>(rng.below(max_cell + 2));
      max_cell = std::max(max_cell, rgs[i]);
    }
    bundle.policy.cells.assign(max_cell + 1, {});
    for (int i = 0; i < params.support_size; ++i) bundle.policy.cells[rgs[i]].push_back(i);
  }
  bundle.policy.normalize_and_validate(params.support_size);

  bundle.rule = params.use_gairing_rule ? make_fg(params.n_agents) : make_fmc(params.n_agents);
  bundle.label = "random[seed=" + std::to_string(params.seed) +
                 ";n=" + std::to_string(params.n_agents) +
                 ";R=" + std::to_string(params.n_resources) +
                 ";s=" + std::to_string(params.support_size) + "]";
  bundle.validate();
  return bundle;
}

}  // namespace covergame
