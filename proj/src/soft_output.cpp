// Copyright 2026 The isingmimo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "isingmimo/soft_output.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace isingmimo {

OutputTable tabulate(std::span<const RunResult> raw_outputs) {
  if (raw_outputs.empty()) throw ContractError("cannot tabulate an empty output list");
  const std::size_t n = raw_outputs.front().config.size();

  std::map<SpinConfig, TableEntry> unique;
  for (const auto& out : raw_outputs) {
    if (out.config.size() != n) throw ContractError("outputs have different lengths");
    auto [it, inserted] = unique.try_emplace(out.config, TableEntry{out.config, out.energy, 0});
    if (!inserted && std::abs(it->second.energy - out.energy) >
                         1e-9 * (1.0 + std::abs(it->second.energy))) {
      throw ContractError("identical configurations reported different energies");
    }
    ++it->second.count;
  }

  OutputTable table;
  table.n_total = raw_outputs.size();
  table.entries.reserve(unique.size());
  // Map iteration is already lexicographic, so a stable sort on energy
  // leaves ties in configuration order.
  for (auto& [config, entry] : unique) table.entries.push_back(std::move(entry));
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const TableEntry& a, const TableEntry& b) { return a.energy < b.energy; });
  return table;
}

const SpinConfig& filter_best(const OutputTable& table) {
  if (table.entries.empty()) throw ContractError("empty output table");
  return table.entries.front().config;
}

std::vector<double> confidence(const OutputTable& table) {
  const SpinConfig& best = filter_best(table);
  const double h1 = table.entries.front().energy;
  std::vector<double> agree(best.size(), 0.0);
  double total = 0.0;
  for (const auto& e : table.entries) {
    const double w = static_cast<double>(e.count) * (h1 == 0.0 ? 1.0 : std::abs(e.energy / h1));
    total += w;
    for (std::size_t j = 0; j < best.size(); ++j) {
      if (e.config[j] == best[j]) agree[j] += w;
    }
  }
  for (double& c : agree) c /= total;
  return agree;
}

}  // namespace isingmimo
