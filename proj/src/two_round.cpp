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

#include "isingmimo/two_round.hpp"

namespace isingmimo {

PreDecision pre_decide(std::span<const double> confidences, const SpinConfig& best_config,
                       double c_th) {
  if (confidences.size() != best_config.size()) {
    throw ContractError("confidence and configuration lengths differ");
  }
  if (!(c_th > 0.5 && c_th <= 1.0)) throw ContractError("c_th must lie in (0.5, 1]");
  PreDecision out;
  out.threshold = c_th;
  for (std::size_t j = 0; j < confidences.size(); ++j) {
    if (confidences[j] >= c_th) out.decided.emplace(j, best_config[j]);
  }
  out.decided_fraction =
      static_cast<double>(out.decided.size()) / static_cast<double>(confidences.size());
  return out;
}

double threshold_for_runs(const std::map<std::size_t, double>& schedule, std::size_t n_runs,
                          double fallback) {
  auto it = schedule.upper_bound(n_runs);
  if (it == schedule.begin()) return fallback;
  return std::prev(it)->second;
}

TwoRoundResult two_round_detect(const IsingModel& model, const TwoRoundParams& params) {
  if (params.runs_round1 < 1 || params.runs_round2 < 1) {
    throw ContractError("each round needs at least one run");
  }
  TwoRoundResult result;
  RoundReport& report = result.report;

  report.round1_runs = run_batch(model, params.solver, params.runs_round1, params.n_workers);
  report.round1_table = tabulate(report.round1_runs);
  report.round1_confidence = confidence(report.round1_table);
  const SpinConfig& round1_best = filter_best(report.round1_table);
  report.round1_best_energy = report.round1_table.entries.front().energy;
  report.pre_decision = pre_decide(report.round1_confidence, round1_best, params.c_th);

  result.config = round1_best;
  result.energy = report.round1_best_energy;
  if (report.pre_decision.decided.size() == model.n_vars()) return result;

  const ClampResult clamped = clamp_spins(model, report.pre_decision.decided);
  SolverParams round2 = params.solver;
  round2.seed = mix_seed(params.solver.seed, kRound2Stream);
  report.round2_runs = run_batch(clamped.reduced_model, round2, params.runs_round2, params.n_workers);
  report.round2_table = tabulate(report.round2_runs);
  report.round2_confidence = confidence(*report.round2_table);
  report.round2_index_map = clamped.index_map;

  SpinConfig restored = clamped.restore(filter_best(*report.round2_table));
  const double restored_energy = energy(model, restored);
  report.round2_best_energy = restored_energy;
  if (restored_energy < result.energy) {
    report.round2_improved = true;
    result.config = std::move(restored);
    result.energy = restored_energy;
  }
  return result;
}

}  // namespace isingmimo
