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
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "isingmimo/ising.hpp"
#include "isingmimo/rng.hpp"

namespace isingmimo {

/// Dense copy of a model laid out for the sweep kernel.
class DenseModel {
 public:
  explicit DenseModel(const IsingModel& model);

  std::size_t n_vars() const noexcept { return n_; }
  double coupling(std::size_t i, std::size_t j) const noexcept { return g_[i * n_ + j]; }
  const double* row(std::size_t i) const noexcept { return g_.data() + i * n_; }
  double field(std::size_t i) const noexcept { return f_[i]; }
  /// max |coefficient| of the source model, or 1 for an all-zero model.
  double scale() const noexcept { return scale_; }

 private:
  std::size_t n_;
  std::vector<double> g_;
  std::vector<double> f_;
  double scale_;
};

/// min{1, exp(−β·ΔH)}.
double acceptance_probability(double beta, double delta) noexcept;

/// min{1, exp((β_1 − β_2)(H_1 − H_2))}. Equal to 1 whenever the hotter
/// replica holds the lower energy.
double exchange_probability(double beta_1, double beta_2, double energy_1,
                            double energy_2) noexcept;

/// One spin system with incrementally maintained local fields
/// h_i = f_i + Σ_j g_ij s_j, so each Metropolis proposal costs O(1) and each
/// accepted flip O(N).
class MetropolisChain {
 public:
  MetropolisChain(const DenseModel& model, SpinConfig initial);

  const SpinConfig& config() const noexcept { return config_; }
  /// Tracked energy (offset excluded); accumulates rounding over many flips.
  double energy() const noexcept { return energy_; }

  /// Sequential pass over spins 0..N-1, each flip accepted with probability
  /// min{1, exp(−β ΔH)}. A uniform variate is drawn only for uphill moves.
  /// `on_flip(energy)` runs after every accepted flip.
  template <class OnFlip>
  void sweep(double beta, Xoshiro256& rng, OnFlip&& on_flip) {
    const std::size_t n = model_->n_vars();
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = -2.0 * config_[i] * local_[i];
      if (delta <= 0.0 || rng.uniform() < std::exp(-beta * delta)) {
        apply_flip(i, delta);
        on_flip(energy_);
      }
    }
  }
  void sweep(double beta, Xoshiro256& rng) {
    sweep(beta, rng, [](double) {});
  }

 private:
  void apply_flip(std::size_t i, double delta) noexcept;

  const DenseModel* model_;
  SpinConfig config_;
  std::vector<double> local_;
  double energy_;
};

/// Convenience wrapper: one sweep of `config` in place.
void metropolis_sweep(const IsingModel& model, SpinConfig& config, double beta, Xoshiro256& rng);

struct SolverParams {
  int n_sweeps = 50;
  double t_low = 0.05;
  double t_high = 0.06;
  int exchange_interval = 1;
  std::uint64_t seed = 0;
  /// Temperatures are read relative to the model's largest absolute
  /// coefficient (β_eff = 1/(T·max|coef|)).
  bool normalize = true;

  void validate() const;
};

struct RunResult {
  SpinConfig config;
  double energy = 0.0;  // offset excluded, recomputed exactly
  std::chrono::nanoseconds latency{0};
};

/// State visible to an observer after each sweep of a run.
struct SweepSnapshot {
  int sweep = 0;
  double t_replica0 = 0.0;
  double t_replica1 = 0.0;
  double best_energy = 0.0;
};
using SweepObserver = std::function<void(const SweepSnapshot&)>;

/// One two-replica ("bang-bang") parallel tempering run. Replica 0 starts
/// at t_low, replica 1 at t_high, both from independent uniform random
/// configurations; every exchange_interval sweeps the temperatures swap with
/// exchange_probability. Returns the best configuration seen on either
/// trajectory.
RunResult pmis_run(const IsingModel& model, const SolverParams& params,
                   const SweepObserver& observer = {});
RunResult pmis_run(const DenseModel& model, const SolverParams& params,
                   const SweepObserver& observer = {});

/// n_runs independent runs; run k uses seed mix_seed(params.seed, k). The
/// result order is the run index regardless of `n_workers`.
std::vector<RunResult> run_batch(const IsingModel& model, const SolverParams& params,
                                 std::size_t n_runs, std::size_t n_workers = 1);

/// Runs `task(k)` for k in [0, n) across up to n_workers threads.
void parallel_for(std::size_t n, std::size_t n_workers, const std::function<void(std::size_t)>& task);

}  // namespace isingmimo
