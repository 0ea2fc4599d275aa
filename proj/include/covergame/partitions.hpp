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

#include <cstdint>
#include <functional>
#include <vector>

namespace covergame {

// Number of set partitions of an n-element set. n <= 25 stays in uint64.
std::uint64_t bell_number(int n);

// Partition of {0..n-1} as cells sorted by smallest element, elements sorted.
using SetPartition = std::vector<std::vector<int>>;

// Visits every set partition of {0..n-1} in restricted-growth-string
// lexicographic order. The visited reference is reused between calls.
void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& visit);

std::vector<SetPartition> all_set_partitions(int n);

}  // namespace covergame
