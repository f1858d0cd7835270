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

#include <algorithm>
#include <random>

#include "isingmimo/soft_output.hpp"
#include "oracles.hpp"

using namespace isingmimo;

namespace {

RunResult out(SpinConfig s, double e) { return {std::move(s), e, {}}; }

}  // namespace

TEST_SUITE("soft_output") {

TEST_CASE("identical outputs collapse to one entry") {
  std::vector<RunResult> raw(4, out({1, -1}, -2.0));
  const OutputTable t = tabulate(raw);
  REQUIRE(t.entries.size() == 1);
  CHECK(t.entries[0].count == 4);
  CHECK(t.n_total == 4);
  CHECK(t.n_vars() == 2);
  for (double c : confidence(t)) CHECK(c == 1.0);
}

TEST_CASE("entries sort by energy then configuration") {
  const OutputTable t = tabulate(std::vector<RunResult>{out({1, 1}, -3.0), out({-1, -1}, -5.0)});
  CHECK(t.entries[0].energy == -5.0);
  CHECK(t.entries[1].energy == -3.0);
  const OutputTable tie = tabulate(std::vector<RunResult>{out({1, -1}, -1.0), out({-1, 1}, -1.0)});
  CHECK(tie.entries[0].config == SpinConfig{-1, 1});
  CHECK(filter_best(tie) == SpinConfig{-1, 1});
}

TEST_CASE("tabulation contract") {
  CHECK_THROWS_AS(tabulate(std::vector<RunResult>{}), ContractError);
  CHECK_THROWS_AS(tabulate(std::vector<RunResult>{out({1}, 0.0), out({1, 1}, 0.0)}), ContractError);
  CHECK_THROWS_AS(tabulate(std::vector<RunResult>{out({1}, 0.0), out({1}, 1.0)}), ContractError);
  CHECK_THROWS_AS(filter_best(OutputTable{}), ContractError);
}

TEST_CASE("two equally good entries differing at one spin") {
  const OutputTable t = tabulate(std::vector<RunResult>{out({1, 1, -1}, -4.0), out({1, -1, -1}, -4.0)});
  const auto c = confidence(t);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 0.5);
  CHECK(c[2] == 1.0);
}

TEST_CASE("weighted confidence example") {
  std::vector<RunResult> raw{out({1, 1}, -10.0), out({1, 1}, -10.0), out({1, 1}, -10.0),
                             out({1, -1}, -8.0)};
  const auto c = confidence(tabulate(raw));
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(3.0 / 3.8).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.78947).epsilon(1e-5));
}

TEST_CASE("zero best energy falls back to occurrence ratios") {
  std::vector<RunResult> raw{out({-1}, 0.0), out({-1}, 0.0), out({1}, 3.0)};
  const auto c = confidence(tabulate(raw));
  CHECK(c[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("confidence properties on random tables") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> en(-20.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RunResult> raw;
    std::map<SpinConfig, double> energies;
    for (int k = 0; k < 12; ++k) {
      const SpinConfig s = oracle::to_config(oracle::random_spins(5, rng));
      auto [it, fresh] = energies.try_emplace(s, en(rng));
      for (int r = count(rng); r > 0; --r) raw.push_back(out(s, it->second));
    }
    const OutputTable t = tabulate(raw);
    std::size_t total = 0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      total += t.entries[i].count;
      CHECK(t.entries[i].count >= 1);
      if (i > 0) {
        CHECK(t.entries[i - 1].energy <= t.entries[i].energy);
        CHECK(t.entries[i - 1].config != t.entries[i].config);
      }
    }
    CHECK(total == raw.size());
    double lowest = INFINITY;
    for (const auto& e : t.entries) lowest = std::min(lowest, e.energy);
    CHECK(t.entries.front().energy == lowest);

    const auto c = confidence(t);
    for (std::size_t j = 0; j < c.size(); ++j) {
      CHECK(c[j] > 0.0);
      CHECK(c[j] <= 1.0);
      bool all_agree = true;
      for (const auto& e : t.entries) all_agree &= e.config[j] == t.entries[0].config[j];
      CHECK((c[j] == 1.0) == all_agree);
    }

    auto shuffled = raw;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(confidence(tabulate(shuffled)) == c);

    raw.push_back(out(t.entries[0].config, t.entries[0].energy));
    const auto more = confidence(tabulate(raw));
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(more[j] >= c[j] - 1e-15);
  }
}

}  // TEST_SUITE
