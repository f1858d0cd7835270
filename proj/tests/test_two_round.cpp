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

#include <doctest.h>

#include <random>

#include "isingmimo/mimo.hpp"
#include "isingmimo/two_round.hpp"
#include "oracles.hpp"

using namespace isingmimo;

TEST_SUITE("two_round") {

TEST_CASE("pre-decision threshold filter") {
  const SpinConfig best{1, -1, 1};
  const std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(pre_decide(ones, best, 0.97).decided.size() == 3);
  const std::vector<double> low{0.9, 0.9, 0.9};
  CHECK(pre_decide(low, best, 0.97).decided.empty());
  const std::vector<double> mixed{0.99, 0.96, 0.98};
  const PreDecision d = pre_decide(mixed, best, 0.97);
  CHECK(d.decided == std::map<std::size_t, int>{{0, 1}, {2, 1}});
  CHECK(d.decided_fraction == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(pre_decide(mixed, best, 0.5), ContractError);
  CHECK_THROWS_AS(pre_decide(mixed, best, 1.01), ContractError);
  CHECK_THROWS_AS(pre_decide(ones, SpinConfig{1, 1}, 0.97), ContractError);
}

TEST_CASE("raising the threshold never enlarges the decided set") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.5, 1.0);
  std::vector<double> c(30);
  for (auto& x : c) x = u(rng);
  const SpinConfig best = oracle::to_config(oracle::random_spins(30, rng));
  std::size_t prev = 31;
  for (double th = 0.51; th <= 1.0; th += 0.01) {
    const auto d = pre_decide(c, best, th);
    CHECK(d.decided.size() <= prev);
    for (auto& [j, v] : d.decided) {
      CHECK(c[j] >= th);
      CHECK(v == best[j]);
    }
    prev = d.decided.size();
  }
}

TEST_CASE("threshold schedule lookup") {
  const std::map<std::size_t, double> sched{{1, 0.995}, {64, 0.98}, {256, 0.97}};
  CHECK(threshold_for_runs(sched, 16, 0.9) == 0.995);
  CHECK(threshold_for_runs(sched, 64, 0.9) == 0.98);
  CHECK(threshold_for_runs(sched, 1000, 0.9) == 0.97);
  CHECK(threshold_for_runs({}, 10, 0.97) == 0.97);
}

TEST_CASE("two-round detection is never worse than round one") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate_instance(8, 8, Constellation(Modulation::QAM16), 15.0, seed);
    const IsingModel m = ml_to_ising(inst);
    for (double th : {0.8, 0.97, 1.0}) {
      TwoRoundParams p;
      p.solver.seed = seed * 17;
      p.runs_round1 = 16;
      p.runs_round2 = 16;
      p.c_th = th;
      const TwoRoundResult r = two_round_detect(m, p);
      CHECK(r.energy <= r.report.round1_best_energy);
      CHECK(r.energy == energy(m, r.config));
      if (r.report.round2_table) {
        // restored round-2 answer keeps every decided value
        const SpinConfig restored = [&] {
          ClampResult c = clamp_spins(m, r.report.pre_decision.decided);
          CHECK(c.index_map == r.report.round2_index_map);
          const SpinConfig full = c.restore(filter_best(*r.report.round2_table));
          const double reduced = energy_with_offset(c.reduced_model, filter_best(*r.report.round2_table));
          CHECK(energy_with_offset(m, full) == doctest::Approx(reduced).epsilon(1e-9));
          return full;
        }();
        for (auto& [j, v] : r.report.pre_decision.decided) CHECK(restored[j] == v);
        CHECK(*r.report.round2_best_energy == energy(m, restored));
        CHECK(r.report.round2_improved == (*r.report.round2_best_energy < r.report.round1_best_energy));
      }
    }
  }
}

TEST_CASE("nothing decided solves the original model in round two") {
  const auto inst = generate_instance(6, 6, Constellation(Modulation::QAM16), 5.0, 3);
  const IsingModel m = ml_to_ising(inst);
  TwoRoundParams p;
  p.runs_round1 = 8;
  p.runs_round2 = 8;
  p.c_th = 1.0;
  p.solver.seed = 5;
  const TwoRoundResult r = two_round_detect(m, p);
  if (r.report.pre_decision.decided.empty()) {
    REQUIRE(r.report.round2_table.has_value());
    CHECK(r.report.round2_table->n_vars() == m.n_vars());
  }
  CHECK(r.energy <= r.report.round1_best_energy);
}

TEST_CASE("everything decided returns the round-one answer") {
  IsingModel m(3, {{0, 1, -1.0}, {1, 2, -1.0}}, {-1.0, -1.0, -1.0});
  TwoRoundParams p;
  p.runs_round1 = 32;
  p.runs_round2 = 32;
  const TwoRoundResult r = two_round_detect(m, p);
  CHECK(r.report.pre_decision.decided.size() == 3);
  CHECK_FALSE(r.report.round2_table.has_value());
  CHECK(r.config == SpinConfig{1, 1, 1});
  CHECK(r.energy == r.report.round1_best_energy);
  CHECK_FALSE(r.report.round2_improved);
}

TEST_CASE("round budgets are validated and the run is deterministic") {
  IsingModel m(2, {{0, 1, 1.0}}, {0.1, 0.0});
  TwoRoundParams p;
  p.runs_round2 = 0;
  CHECK_THROWS_AS(two_round_detect(m, p), ContractError);
  const auto inst = generate_instance(5, 5, Constellation(Modulation::QAM16), 12.0, 9);
  const IsingModel big = ml_to_ising(inst);
  TwoRoundParams q;
  q.runs_round1 = 20;
  q.runs_round2 = 12;
  q.c_th = 0.9;
  const auto a = two_round_detect(big, q);
  const auto b = two_round_detect(big, q);
  CHECK(a.config == b.config);
  CHECK(a.report.round2_runs.size() == (a.report.round2_table ? 12u : 0u));
}

}  // TEST_SUITE
