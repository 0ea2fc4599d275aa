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

#include "covergame/search.hpp"

#include <algorithm>
#include <map>

#include "covergame/errors.hpp"

namespace covergame {

std::vector<RankedPolicy> rank_signaling_policies(const CoverageGame& game,
                                                  const ValueDistribution& dist,
                                                  const UtilityRule& rule,
                                                  SearchObjective objective,
                                                  const Caps& caps) {
  dist.validate(game.n_resources);
  const int s = dist.size();
  if (s > 10) {
    throw CapExceededError("signaling search caps the support at 10 states "
                           "(Bell(10) partitions); got " + std::to_string(s));
  }

  // Cells recur across partitions, so the per-cell posterior game is solved
  // once per distinct subset.
  struct CellInfo {
    Rational prob;
    Rational best;
    Rational worst;
  };
  std::map<std::vector<int>, CellInfo> memo;
  auto cell_info = [&](const std::vector<int>& cell) -> const CellInfo& {
    auto it = memo.find(cell);
    if (it == memo.end()) {
      NashSet nash = enumerate_nash(game, posterior_mean(dist, cell), rule, caps);
      it = memo.emplace(cell, CellInfo{cell_probability(dist, cell), nash.best_welfare(),
                                       nash.worst_welfare()})
               .first;
    }
    return it->second;
  };

  std::vector<RankedPolicy> ranked;
  for_each_set_partition(s, [&](const SetPartition& partition) {
    RankedPolicy entry;
    entry.cells = partition;
    entry.best_expected_welfare = 0;
    entry.worst_expected_welfare = 0;
    for (const auto& cell : partition) {
      const CellInfo& info = cell_info(cell);
      entry.best_expected_welfare += info.prob * info.best;
      entry.worst_expected_welfare += info.prob * info.worst;
    }
    entry.best_expected_welfare.canonicalize();
    entry.worst_expected_welfare.canonicalize();
    ranked.push_back(std::move(entry));
  });

  const bool best_case = (objective == SearchObjective::BestCase);
  std::sort(ranked.begin(), ranked.end(), [&](const RankedPolicy& a, const RankedPolicy& b) {
    const Rational& oa = best_case ? a.best_expected_welfare : a.worst_expected_welfare;
    const Rational& ob = best_case ? b.best_expected_welfare : b.worst_expected_welfare;
    if (oa != ob) return oa > ob;
    if (a.cells.size() != b.cells.size()) return a.cells.size() < b.cells.size();
    return a.cells < b.cells;
  });
  return ranked;
}

}  // namespace covergame
