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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isingmimo/ising.hpp"
#include "isingmimo/pmis.hpp"

namespace isingmimo {

struct TableEntry {
  SpinConfig config;
  double energy = 0.0;
  std::size_t count = 0;
};

/// Deduplicated solver outputs, best energy first. Ties are broken by
/// lexicographic configuration order (−1 before +1).
struct OutputTable {
  std::vector<TableEntry> entries;
  std::size_t n_total = 0;

  std::size_t n_vars() const { return entries.empty() ? 0 : entries.front().config.size(); }
};

/// Fails on empty input, mixed lengths, or identical configurations whose
/// energies disagree by more than 1e-9·(1 + |E|).
OutputTable tabulate(std::span<const RunResult> raw_outputs);

/// The Ising solution filter: the best entry's configuration.
const SpinConfig& filter_best(const OutputTable& table);

/// Spinwise detection confidence
///   C_j = Σ_i O_i·[s^i_j = s^1_j]·|H_i/H_1| / Σ_i O_i·|H_i/H_1|,
/// with all weights set to 1 when H_1 = 0.
std::vector<double> confidence(const OutputTable& table);

}  // namespace isingmimo
