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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "isingmimo/ising.hpp"
#include "isingmimo/pmis.hpp"
#include "isingmimo/soft_output.hpp"

namespace isingmimo {

inline constexpr double kDefaultConfidenceThreshold = 0.97;

struct PreDecision {
  double threshold = kDefaultConfidenceThreshold;
  /// original index -> value taken from the round-1 best configuration
  std::map<std::size_t, int> decided;
  double decided_fraction = 0.0;
};

/// Decides every spin j with C_j >= c_th to the round-1 best value.
PreDecision pre_decide(std::span<const double> confidences, const SpinConfig& best_config,
                       double c_th);

/// Threshold to use for a given per-round budget: the entry with the largest
/// key not above n_runs, or `fallback` when none applies.
double threshold_for_runs(const std::map<std::size_t, double>& schedule, std::size_t n_runs,
                          double fallback = kDefaultConfidenceThreshold);

struct TwoRoundParams {
  SolverParams solver;
  std::size_t runs_round1 = 256;
  std::size_t runs_round2 = 256;
  double c_th = kDefaultConfidenceThreshold;
  std::size_t n_workers = 1;
};

struct RoundReport {
  PreDecision pre_decision;
  OutputTable round1_table;
  std::vector<double> round1_confidence;
  double round1_best_energy = 0.0;
  /// Present when a second solve happened.
  std::optional<OutputTable> round2_table;
  std::vector<double> round2_confidence;  // over the reduced variables
  std::vector<std::size_t> round2_index_map;
  std::optional<double> round2_best_energy;  // full-model energy of the restored config
  bool round2_improved = false;
  std::vector<RunResult> round1_runs;
  std::vector<RunResult> round2_runs;
};

struct TwoRoundResult {
  SpinConfig config;
  double energy = 0.0;
  RoundReport report;
};

/// Seed offset separating round-2 runs from round-1 runs.
inline constexpr std::uint64_t kRound2Stream = 0x2D5A3C1F00000002ULL;

/// Round 1: batch, tabulate, confidences, pre-decision. Round 2: batch on the
/// clamped model with seed mix_seed(seed, kRound2Stream). The result is the
/// lower-energy of the restored round-2 best and the round-1 best, so it is
/// never worse than round 1.
TwoRoundResult two_round_detect(const IsingModel& model, const TwoRoundParams& params);

}  // namespace isingmimo
