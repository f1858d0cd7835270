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

#include <chrono>
#include <cstdint>

#include <Eigen/Dense>

#include "isingmimo/ising.hpp"
#include "isingmimo/mimo.hpp"

namespace isingmimo {

struct DetectorResult {
  Eigen::VectorXcd symbols;
  SpinConfig spins;
  double objective = 0.0;
  std::chrono::nanoseconds latency{0};
  /// Sphere decoder only: a ridge was added because the channel was
  /// (numerically) rank deficient.
  bool regularized = false;
  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves_visited = 0;
};

/// Builds a result from detected symbols, recomputing spins and objective.
DetectorResult make_result(const DetectionInstance& instance, Eigen::VectorXcd symbols);

/// Largest alphabet product brute_force_ml accepts.
inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 24;

/// Exhaustive search over O^{N_t}; ties resolve to the lexicographically
/// smallest spin configuration.
DetectorResult brute_force_ml(const DetectionInstance& instance);

struct SphereDecoderOptions {
  bool allow_regularization = true;
  double ridge = 1e-9;
};

/// Depth-first Schnorr-Euchner sphere decoder on the real-valued QR
/// decomposition, infinite initial radius. Exact ML.
DetectorResult sphere_decode(const DetectionInstance& instance,
                             const SphereDecoderOptions& options = {});

/// Quantized pseudo-inverse equalizer.
DetectorResult zero_forcing(const DetectionInstance& instance);

/// Ordered successive interference cancellation (V-BLAST): detect the user
/// with the smallest pseudo-inverse row norm, cancel, deflate, repeat.
DetectorResult zf_sic(const DetectionInstance& instance);

/// Fixed-complexity sphere decoder. Users are ordered by decreasing
/// pseudo-inverse row norm; the first n_fs levels are enumerated in full,
/// the rest are decided greedily. The order does not depend on n_fs, so the
/// candidate set for n_fs is contained in the one for n_fs + 1.
DetectorResult fcsd(const DetectionInstance& instance, std::size_t n_fs);

struct AnnealParams {
  int n_sweeps = 100;
  double t_start = 1.0;
  double t_end = 0.05;
  std::uint64_t seed = 0;
  bool normalize = true;
};

struct AnnealResult {
  SpinConfig config;
  double energy = 0.0;
  std::chrono::nanoseconds latency{0};
};

/// Single-replica simulated annealing with a geometric schedule from t_start
/// to t_end, sharing the Metropolis sweep kernel with the tempering solver.
AnnealResult sa_run(const IsingModel& model, const AnnealParams& params);

}  // namespace isingmimo
