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

#include "isingmimo/baselines.hpp"
#include "isingmimo/pmis.hpp"
#include "oracles.hpp"

using namespace isingmimo;
using cd = std::complex<double>;

namespace {

DetectionInstance scalar_bpsk() {
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = 1.0;
  DetectionInstance inst = instance_from_channel(h, Constellation(Modulation::BPSK), kNoiseFree, 0);
  inst.observation(0) = 0.5;
  return inst;
}

// Objective recomputed independently of the library.
double objective_of(const DetectionInstance& inst, const DetectorResult& r) {
  return oracle::residual(inst.channel, inst.observation, r.symbols);
}

const Modulation kMods[] = {Modulation::BPSK, Modulation::QPSK, Modulation::QAM16};

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("brute force on the scalar example") {
  const auto r = brute_force_ml(scalar_bpsk());
  CHECK(r.symbols[0] == cd(1, 0));
  CHECK(r.objective == 0.25);
  CHECK(r.spins == SpinConfig{1});
}

TEST_CASE("brute force guard") {
  const auto inst = generate_instance(7, 7, Constellation(Modulation::QAM16), 20.0, 1);
  CHECK_THROWS_AS(brute_force_ml(inst), ContractError);
}

TEST_CASE("brute force breaks ties lexicographically") {
  // Zero channel: every candidate has the same objective.
  DetectionInstance inst = generate_instance(2, 2, Constellation(Modulation::QPSK), kNoiseFree, 1);
  inst.channel.setZero();
  inst.observation.setZero();
  CHECK(brute_force_ml(inst).spins == SpinConfig{-1, -1, -1, -1});
}

TEST_CASE("noise-free recovery by every detector") {
  for (auto m : kMods) {
    const auto inst = generate_instance(4, 6, Constellation(m), kNoiseFree, 12);
    const auto truth = inst.truth_spins;
    CHECK(brute_force_ml(inst).spins == truth);
    CHECK(sphere_decode(inst).spins == truth);
    CHECK(sphere_decode(inst).objective == doctest::Approx(0.0).scale(1.0));
    CHECK(zero_forcing(inst).spins == truth);
    CHECK(zf_sic(inst).spins == truth);
    CHECK(fcsd(inst, 2).spins == truth);
  }
}

TEST_CASE("scaled identity channel decouples users") {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(3, 3) * 2.0;
  DetectionInstance inst = instance_from_channel(h, Constellation(Modulation::QAM16), kNoiseFree, 4);
  inst.observation += Eigen::VectorXcd::Constant(3, cd(0.3, -0.4));
  const auto zf = zero_forcing(inst);
  for (Eigen::Index u = 0; u < 3; ++u) {
    const cd x = inst.observation[u] / 2.0;
    CHECK(zf.symbols[u] == cd(inst.constellation.quantize_axis(x.real()),
                              inst.constellation.quantize_axis(x.imag())));
  }
  CHECK(fcsd(inst, 0).spins == zf.spins);
  CHECK(sphere_decode(inst).spins == zf.spins);
}

TEST_CASE("results carry consistent objectives") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    const auto inst = generate_instance(3, 4, Constellation(kMods[t % 3]), 8.0, rng());
    for (const auto& r : {brute_force_ml(inst), sphere_decode(inst), zero_forcing(inst),
                          zf_sic(inst), fcsd(inst, 1)}) {
      CHECK(r.objective == doctest::Approx(objective_of(inst, r)).epsilon(1e-9));
      CHECK(r.spins == symbols_to_spins(inst.constellation, r.symbols));
    }
  }
}

TEST_CASE("sphere decoder equals brute force") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 500; ++t) {
    const Modulation m = kMods[t % 3];
    const Constellation c(m);
    const std::size_t users = 1 + rng() % (16 / c.bits_per_symbol());
    const auto inst = generate_instance(users, users + rng() % 3, c, 4.0 + rng() % 20, rng());
    const auto bf = brute_force_ml(inst);
    const auto sd = sphere_decode(inst);
    REQUIRE(sd.objective == bf.objective);
    const std::uint64_t leaves = std::uint64_t{1} << inst.n_vars();
    CHECK(sd.leaves_visited <= leaves);
  }
}

TEST_CASE("sphere decoder handles rank deficiency") {
  DetectionInstance inst = generate_instance(2, 2, Constellation(Modulation::QPSK), 20.0, 3);
  inst.channel.col(1) = inst.channel.col(0);
  const auto r = sphere_decode(inst);
  CHECK(r.regularized);
  CHECK(r.objective == doctest::Approx(brute_force_ml(inst).objective).epsilon(1e-6));
  SphereDecoderOptions strict;
  strict.allow_regularization = false;
  CHECK_THROWS_AS(sphere_decode(inst, strict), ContractError);
  CHECK_THROWS_AS(zero_forcing(inst), ContractError);
}

TEST_CASE("single user SIC equals zero forcing") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto inst = generate_instance(1, 3, Constellation(Modulation::QAM16), 5.0, s);
    CHECK(zf_sic(inst).spins == zero_forcing(inst).spins);
  }
}

TEST_CASE("FCSD is monotone in the full-search depth and exact at full depth") {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 40; ++t) {
    const Modulation m = kMods[t % 3];
    const std::size_t users = m == Modulation::QAM16 ? 4 : 6;
    const auto inst = generate_instance(users, users, Constellation(m), 6.0, rng());
    double prev = INFINITY;
    for (std::size_t nfs = 0; nfs <= users; ++nfs) {
      const double obj = fcsd(inst, nfs).objective;
      CHECK(obj <= prev + 1e-12);
      prev = obj;
    }
    CHECK(prev == doctest::Approx(brute_force_ml(inst).objective).epsilon(1e-12));
  }
  const auto inst = generate_instance(2, 2, Constellation(Modulation::QPSK), 6.0, 1);
  CHECK_THROWS_AS(fcsd(inst, 3), ContractError);
}

TEST_CASE("annealing basics") {
  IsingModel one(1, {}, {-1.0});
  AnnealParams p;
  const auto r = sa_run(one, p);
  CHECK(r.config == SpinConfig{1});
  CHECK(r.energy == -1.0);
  const auto inst = generate_instance(6, 6, Constellation(Modulation::QAM16), 20.0, 2);
  const IsingModel m = ml_to_ising(inst);
  p.seed = 11;
  const auto a = sa_run(m, p);
  const auto b = sa_run(m, p);
  CHECK(a.config == b.config);
  CHECK(a.energy == b.energy);
  CHECK(a.energy == energy(m, a.config));
}

}  // TEST_SUITE
