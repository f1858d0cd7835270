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

#include "isingmimo/pmis.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace isingmimo {

DenseModel::DenseModel(const IsingModel& model)
    : n_(model.n_vars()), g_(n_ * n_, 0.0), f_(model.fields()) {
  for (const auto& c : model.couplings()) {
    g_[c.i * n_ + c.j] = c.g;
    g_[c.j * n_ + c.i] = c.g;
  }
  const double m = model.max_abs_coefficient();
  scale_ = m > 0.0 ? m : 1.0;
}

double acceptance_probability(double beta, double delta) noexcept {
  return delta <= 0.0 ? 1.0 : std::exp(-beta * delta);
}

double exchange_probability(double beta_1, double beta_2, double energy_1,
                            double energy_2) noexcept {
  const double x = (beta_1 - beta_2) * (energy_1 - energy_2);
  return x >= 0.0 ? 1.0 : std::exp(x);
}

MetropolisChain::MetropolisChain(const DenseModel& model, SpinConfig initial)
    : model_(&model), config_(std::move(initial)), local_(model.n_vars()) {
  const std::size_t n = model.n_vars();
  if (config_.size() != n) throw ContractError("initial config length mismatch");
  double pair = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = model.row(i);
    double coupled = 0.0;
    for (std::size_t j = 0; j < n; ++j) coupled += row[j] * config_[j];
    local_[i] = model.field(i) + coupled;
    pair += config_[i] * coupled;
    lin += model.field(i) * config_[i];
  }
  energy_ = pair / 2.0 + lin;
}

void MetropolisChain::apply_flip(std::size_t i, double delta) noexcept {
  config_.flip(i);
  energy_ += delta;
  const double twice_new = 2.0 * config_[i];
  const double* row = model_->row(i);
  const std::size_t n = model_->n_vars();
  for (std::size_t j = 0; j < n; ++j) local_[j] += twice_new * row[j];
}

void metropolis_sweep(const IsingModel& model, SpinConfig& config, double beta, Xoshiro256& rng) {
  if (!(beta > 0.0)) throw ContractError("beta must be positive");
  const DenseModel dense(model);
  MetropolisChain chain(dense, config);
  chain.sweep(beta, rng);
  config = chain.config();
}

void SolverParams::validate() const {
  if (n_sweeps < 1) throw ContractError("n_sweeps must be >= 1");
  if (!(t_low > 0.0)) throw ContractError("t_low must be > 0");
  if (!(t_high > t_low)) throw ContractError("t_high must exceed t_low");
  if (exchange_interval < 1) throw ContractError("exchange_interval must be >= 1");
}

namespace {

SpinConfig random_config(std::size_t n, Xoshiro256& rng) {
  std::vector<std::int8_t> s(n);
  for (auto& v : s) v = rng.coin() ? 1 : -1;
  return SpinConfig(std::move(s));
}

}  // namespace

RunResult pmis_run(const DenseModel& model, const SolverParams& params,
                   const SweepObserver& observer) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const double unit = params.normalize ? model.scale() : 1.0;

  Xoshiro256 rng(params.seed);
  SpinConfig init0 = random_config(model.n_vars(), rng);
  SpinConfig init1 = random_config(model.n_vars(), rng);
  MetropolisChain chains[2] = {MetropolisChain(model, std::move(init0)),
                               MetropolisChain(model, std::move(init1))};
  double temps[2] = {params.t_low, params.t_high};

  const int first = chains[1].energy() < chains[0].energy() ? 1 : 0;
  SpinConfig best = chains[first].config();
  double best_energy = chains[first].energy();

  for (int sweep = 1; sweep <= params.n_sweeps; ++sweep) {
    for (auto r : {0, 1}) {
      MetropolisChain& chain = chains[r];
      chain.sweep(1.0 / (temps[r] * unit), rng, [&](double e) {
        if (e < best_energy) {
          best_energy = e;
          best = chain.config();
        }
      });
    }
    if (sweep % params.exchange_interval == 0) {
      const double p = exchange_probability(1.0 / temps[0], 1.0 / temps[1],
                                            chains[0].energy() / unit, chains[1].energy() / unit);
      if (p >= 1.0 || rng.uniform() < p) std::swap(temps[0], temps[1]);
    }
    if (observer) observer({sweep, temps[0], temps[1], best_energy});
  }

  RunResult out;
  // Recomputed in the same order as energy(), so equal configs always
  // report bit-identical energies.
  double h = 0.0;
  for (std::size_t i = 0; i < model.n_vars(); ++i) {
    const double* row = model.row(i);
    for (std::size_t j = i + 1; j < model.n_vars(); ++j) h += row[j] * best[i] * best[j];
  }
  for (std::size_t i = 0; i < model.n_vars(); ++i) h += model.field(i) * best[i];
  out.energy = h;
  out.config = std::move(best);
  out.latency = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return out;
}

RunResult pmis_run(const IsingModel& model, const SolverParams& params,
                   const SweepObserver& observer) {
  return pmis_run(DenseModel(model), params, observer);
}

void parallel_for(std::size_t n, std::size_t n_workers,
                  const std::function<void(std::size_t)>& task) {
  n_workers = std::clamp<std::size_t>(n_workers, 1, std::max<std::size_t>(n, 1));
  if (n_workers == 1) {
    for (std::size_t k = 0; k < n; ++k) task(k);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr error;
  {
    std::vector<std::jthread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < n; k += n_workers) task(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<RunResult> run_batch(const IsingModel& model, const SolverParams& params,
                                 std::size_t n_runs, std::size_t n_workers) {
  if (n_runs < 1) throw ContractError("n_runs must be >= 1");
  params.validate();
  const DenseModel dense(model);
  std::vector<RunResult> results(n_runs);
  parallel_for(n_runs, n_workers, [&](std::size_t k) {
    SolverParams p = params;
    p.seed = mix_seed(params.seed, k);
    results[k] = pmis_run(dense, p);
  });
  return results;
}

}  // namespace isingmimo
