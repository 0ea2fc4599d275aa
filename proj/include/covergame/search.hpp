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

#include "covergame/equilibrium.hpp"
#include "covergame/model.hpp"
#include "covergame/partitions.hpp"

namespace covergame {

enum class SearchObjective { BestCase, WorstCase };

struct RankedPolicy {
  SetPartition cells;
  Rational best_expected_welfare;   // best Bayes-Nash expected welfare
  Rational worst_expected_welfare;  // worst Bayes-Nash expected welfare
};

// Ranks every signaling partition of the support by its objective expected
// welfare, descending; ties go to the partition with fewer cells, then to the
// lexicographically smaller one. The support is capped at 10 states
// (Bell(10) = 115975 partitions); beyond that throws CapExceededError.
std::vector<RankedPolicy> rank_signaling_policies(const CoverageGame& game,
                                                  const ValueDistribution& dist,
                                                  const UtilityRule& rule,
                                                  SearchObjective objective,
                                                  const Caps& caps = {});

}  // namespace covergame
