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

#include <cmath>
#include <random>

#include "isingmimo/ising.hpp"
#include "oracles.hpp"

using namespace isingmimo;

namespace {

// g_12 = -1, f = (0.5, -0.5)
IsingModel two_spin() { return IsingModel(2, {{0, 1, -1.0}}, {0.5, -0.5}); }

}  // namespace

TEST_SUITE("ising") {

TEST_CASE("spin config rejects non-unit values") {
  CHECK_THROWS_AS(SpinConfig({1, 0, -1}), ContractError);
  CHECK_THROWS_AS(SpinConfig({2}), ContractError);
  SpinConfig s{1, -1, 1};
  CHECK(s.size() == 3);
  s.flip(1);
  CHECK(s == SpinConfig{1, 1, 1});
  CHECK_THROWS_AS(s.set(0, 0), ContractError);
  CHECK(SpinConfig{-1, 1} < SpinConfig{1, -1});
  CHECK(SpinConfig{1, 1, -1}.hamming_distance(SpinConfig{-1, 1, 1}) == 2);
}

TEST_CASE("model construction validates its invariants") {
  CHECK_THROWS_AS(IsingModel(2, {{1, 0, 1.0}}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(2, {{0, 0, 1.0}}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(2, {{0, 2, 1.0}}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(2, {{0, 1, 1.0}, {0, 1, 2.0}}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(3, {}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(2, {{0, 1, NAN}}, {0, 0}), ContractError);
  CHECK_THROWS_AS(IsingModel(2, {}, {0, INFINITY}), ContractError);
  CHECK_THROWS_AS(IsingModel(1, {}, {0}, NAN), ContractError);
  IsingModel m(3, {{1, 2, 3.0}, {0, 2, -1.0}}, {0, 0, 0});
  CHECK(m.couplings().front().i == 0);
  CHECK(m.coupling(2, 1) == 3.0);
  CHECK(m.coupling(0, 1) == 0.0);
  CHECK(m.max_abs_coefficient() == 3.0);
}

TEST_CASE("energy of the two-spin example") {
  const IsingModel m = two_spin();
  CHECK(energy(m, {1, 1}) == -1.0);
  CHECK(energy_matrix_form(m, {1, 1}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(energy(m, {1}), ContractError);
  CHECK_THROWS_AS(energy(m, {1, 1, 1}), ContractError);
}

TEST_CASE("empty model has zero energy") {
  IsingModel m(4, {}, {0, 0, 0, 0});
  for (std::uint64_t k = 0; k < 16; ++k) {
    CHECK(energy(m, oracle::to_config(oracle::config_of(k, 4))) == 0.0);
  }
}

TEST_CASE("energy matches the term-by-term oracle on every 3-spin config") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto raw = oracle::random_model(3, rng);
    const IsingModel m = raw.model();
    for (std::uint64_t k = 0; k < 8; ++k) {
      const auto s = oracle::config_of(k, 3);
      CHECK(std::abs(energy(m, oracle::to_config(s)) - raw.energy(s)) <= 1e-12);
      CHECK(energy_with_offset(m, oracle::to_config(s)) ==
            doctest::Approx(raw.energy(s) + raw.c).epsilon(1e-12));
    }
  }
}

TEST_CASE("matrix form without fields reduces to the pair sum") {
  std::mt19937_64 rng(12);
  const auto raw = oracle::random_model(6, rng, 1.0, false);
  const IsingModel m = raw.model();
  for (std::uint64_t k = 0; k < 64; ++k) {
    const auto s = oracle::config_of(k, 6);
    CHECK(energy_matrix_form(m, oracle::to_config(s)) ==
          doctest::Approx(raw.energy(s)).epsilon(1e-12));
  }
}

TEST_CASE("matrix form agrees with the direct sum on 500 random pairs") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  std::uniform_real_distribution<double> dens(0.1, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto raw = oracle::random_model(size(rng), rng, dens(rng));
    const IsingModel m = raw.model();
    const auto s = oracle::to_config(oracle::random_spins(raw.n, rng));
    const double e = energy(m, s);
    REQUIRE(std::abs(energy_matrix_form(m, s) - e) <= 1e-9 * (1.0 + std::abs(e)));
  }
}

TEST_CASE("flip delta examples") {
  const IsingModel m = two_spin();
  CHECK(flip_delta(m, {1, 1}, 0) == 1.0);
  CHECK(energy(m, {-1, 1}) == 0.0);
  CHECK_THROWS_AS(flip_delta(m, {1, 1}, 2), ContractError);
  IsingModel isolated(3, {{0, 1, 2.0}}, {1.0, -1.0, 0.0});
  CHECK(flip_delta(isolated, {1, -1, 1}, 2) == 0.0);
  CHECK(flip_delta(isolated, {1, -1, -1}, 2) == 0.0);
}

TEST_CASE("flip delta equals the energy difference exhaustively") {
  std::mt19937_64 rng(14);
  for (std::size_t n = 1; n <= 10; ++n) {
    // Integer coefficients make the comparison exact.
    std::uniform_int_distribution<int> coef(-3, 3);
    oracle::RawModel raw;
    raw.n = n;
    raw.g.assign(n, std::vector<double>(n, 0.0));
    raw.f.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      raw.f[i] = coef(rng);
      for (std::size_t j = i + 1; j < n; ++j) raw.g[i][j] = coef(rng);
    }
    const IsingModel m = raw.model();
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      auto s = oracle::config_of(k, n);
      const double before = raw.energy(s);
      for (std::size_t i = 0; i < n; ++i) {
        auto t = s;
        t[i] = -t[i];
        REQUIRE(flip_delta(m, oracle::to_config(s), i) == raw.energy(t) - before);
      }
    }
  }
}

TEST_CASE("flip delta on random configs of real-valued models") {
  std::mt19937_64 rng(15);
  const auto raw = oracle::random_model(20, rng, 0.6);
  const IsingModel m = raw.model();
  for (int trial = 0; trial < 1000; ++trial) {
    auto s = oracle::random_spins(20, rng);
    const double before = raw.energy(s);
    for (std::size_t i = 0; i < 20; ++i) {
      auto t = s;
      t[i] = -t[i];
      REQUIRE(flip_delta(m, oracle::to_config(s), i) ==
              doctest::Approx(raw.energy(t) - before).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("linearity of energy in the coefficients") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_model(7, rng, 0.5);
    const auto b = oracle::random_model(7, rng, 0.5);
    const IsingModel sum = a.model() + b.model();
    for (std::uint64_t k = 0; k < 128; ++k) {
      const auto s = oracle::config_of(k, 7);
      CHECK(energy(sum, oracle::to_config(s)) ==
            doctest::Approx(a.energy(s) + b.energy(s)).epsilon(1e-12));
    }
    CHECK(sum.offset() == doctest::Approx(a.c + b.c));
  }
  CHECK_THROWS_AS(IsingModel(2, {}, {0, 0}) + IsingModel(3, {}, {0, 0, 0}), ContractError);
}

TEST_CASE("global flip symmetry without fields") {
  std::mt19937_64 rng(17);
  const auto raw = oracle::random_model(8, rng, 0.7, false);
  const IsingModel m = raw.model();
  for (std::uint64_t k = 0; k < 256; ++k) {
    auto s = oracle::config_of(k, 8);
    auto t = s;
    for (auto& x : t) x = -x;
    CHECK(energy(m, oracle::to_config(s)) == energy(m, oracle::to_config(t)));
  }
}

TEST_CASE("clamping the two-spin example") {
  const IsingModel m = two_spin();
  const ClampResult r = clamp_spins(m, {{1, 1}});
  REQUIRE(r.reduced_model.n_vars() == 1);
  CHECK(r.reduced_model.fields()[0] == -0.5);
  CHECK(r.reduced_model.offset() == -0.5);
  CHECK(r.index_map == std::vector<std::size_t>{0});
  for (int s1 : {-1, 1}) {
    CHECK(energy_with_offset(m, {s1, 1}) == energy_with_offset(r.reduced_model, {s1}));
  }
  CHECK(r.restore({-1}) == SpinConfig{-1, 1});
  CHECK(r.restrict({1, 1}) == SpinConfig{1});
}

TEST_CASE("clamping without couplings keeps the remaining fields") {
  IsingModel m(4, {}, {1.0, -2.0, 3.0, 0.5});
  const ClampResult r = clamp_spins(m, {{0, -1}, {2, 1}});
  CHECK(r.reduced_model.fields() == std::vector<double>{-2.0, 0.5});
  CHECK(r.reduced_model.couplings().empty());
  CHECK(r.index_map == std::vector<std::size_t>{1, 3});
}

TEST_CASE("clamp contract violations") {
  const IsingModel m = two_spin();
  CHECK_THROWS_AS(clamp_spins(m, {{0, 1}, {1, -1}}), ContractError);
  CHECK_THROWS_AS(clamp_spins(m, {{2, 1}}), ContractError);
  CHECK_THROWS_AS(clamp_spins(m, {{0, 0}}), ContractError);
}

TEST_CASE("clamping is exact on every consistent configuration") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const auto raw = oracle::random_model(8, rng, 0.8);
    const IsingModel m = raw.model();
    std::vector<std::size_t> idx(8);
    for (std::size_t i = 0; i < 8; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::map<std::size_t, int> fix;
    for (int t = 0; t < 3; ++t) fix[idx[t]] = (rng() & 1) ? 1 : -1;
    const ClampResult r = clamp_spins(m, fix);
    REQUIRE(r.reduced_model.n_vars() == 5);
    // index_map and fixed keys partition the variables
    std::vector<int> seen(8, 0);
    for (auto i : r.index_map) ++seen[i];
    for (auto& [k, v] : r.fixed) ++seen[k];
    for (int c : seen) CHECK(c == 1);
    for (std::uint64_t k = 0; k < 32; ++k) {
      const auto red = oracle::config_of(k, 5);
      const SpinConfig full = r.restore(oracle::to_config(red));
      std::vector<int> fs(full.spins().begin(), full.spins().end());
      for (auto& [i, v] : fix) CHECK(fs[i] == v);
      REQUIRE(std::abs(raw.energy(fs) + raw.c -
                       energy_with_offset(r.reduced_model, oracle::to_config(red))) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
