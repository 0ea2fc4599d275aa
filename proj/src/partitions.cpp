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

#include "covergame/partitions.hpp"

#include "covergame/errors.hpp"

namespace covergame {

std::uint64_t bell_number(int n) {
  if (n < 0) throw BadParamsError("bell_number of negative n");
  if (n > 25) throw BadParamsError("bell_number overflows uint64 beyond n=25");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& visit) {
  if (n < 1) throw BadParamsError("set partitions need n >= 1");
  // Restricted growth strings: a[0]=0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> max_prefix(n, 0);  // max of a[0..i]
  SetPartition cells;
  auto emit = [&]() {
    int m = max_prefix[n - 1] + 1;
    cells.assign(m, {});
    for (int i = 0; i < n; ++i) cells[a[i]].push_back(i);
    visit(cells);
  };
  while (true) {
    for (int i = 1; i < n; ++i) max_prefix[i] = std::max(max_prefix[i - 1], a[i]);
    emit();
    // Next RGS in lexicographic order.
    int i = n - 1;
    while (i > 0 && a[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    for (int j = i + 1; j < n; ++j) a[j] = 0;
  }
}

std::vector<SetPartition> all_set_partitions(int n) {
  std::vector<SetPartition> result;
  result.reserve(bell_number(n));
  for_each_set_partition(n, [&](const SetPartition& p) { result.push_back(p); });
  return result;
}

}  // namespace covergame
