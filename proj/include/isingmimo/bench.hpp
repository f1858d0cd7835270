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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "isingmimo/baselines.hpp"
#include "isingmimo/mimo.hpp"
#include "isingmimo/pmis.hpp"
#include "isingmimo/two_round.hpp"

namespace isingmimo::bench {

enum class Detector { ParaMax, TwoRoundParaMax, SA, ZF, ZFSIC, FCSD, SD, BruteForce };

Detector parse_detector(std::string_view name);
std::string detector_name(Detector detector);
/// Detectors that produce one output per run and benefit from more runs.
bool is_sampler(Detector detector);

/// Largest problem for which the sphere decoder is used as the ML oracle.
inline constexpr std::size_t kOracleMaxVars = 96;

struct Scenario {
  std::string id = "scenario";
  std::size_t n_users = 8;
  std::size_t n_rx = 8;
  Constellation constellation{Modulation::QAM16};
  double snr_db = 20.0;
  std::size_t n_instances = 500;
  std::size_t n_runs = 256;
  Detector detector = Detector::ParaMax;
  std::size_t n_fs = 1;
  SolverParams solver;
  AnnealParams anneal;
  double c_th = kDefaultConfidenceThreshold;
  std::size_t runs_round2 = 0;  // 0: same as the round-1 budget
  std::uint64_t seed = 1;
  std::size_t n_workers = 1;
  /// BER is reported at each of these budgets; empty means {n_runs}.
  std::vector<std::size_t> n_pe_list;
  /// Solve with the sphere decoder to obtain the ML reference.
  bool compute_ml = true;
  /// When non-empty these are used instead of generated instances.
  std::vector<DetectionInstance> instances;

  void validate() const;
  std::size_t instance_count() const;
  DetectionInstance instance(std::size_t k) const;
  std::vector<std::size_t> budgets() const;
};

/// Seeds: instance k uses mix_seed(seed, 2k); its solver runs use
/// mix_seed(seed, 2k + 1) as the batch base seed.
std::uint64_t instance_seed(const Scenario& scenario, std::size_t k);
std::uint64_t solver_seed(const Scenario& scenario, std::size_t k);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// 1 − (1 − p_ml)^n_pe.
double success_probability(double p_ml, std::uint64_t n_pe);

/// ceil(log(1 − target) / log(1 − p_ml)); std::nullopt means unbounded
/// (p_ml = 0). Returns 1 for p_ml = 1.
std::optional<std::uint64_t> required_npe(double p_ml, double target);

struct LatencyStats {
  std::chrono::nanoseconds median{0};
  std::chrono::nanoseconds p995{0};
};

/// Nearest-rank percentiles.
LatencyStats latency_stats(std::span<const std::chrono::nanoseconds> samples);

struct SpinwiseRates {
  /// Error rate per position within a symbol (size bits_per_symbol).
  std::vector<double> per_position;
  /// Spins carrying the most significant weight of an axis (they select the
  /// quadrant for 16-QAM).
  double quadrant = 0.0;
  /// The remaining spins (position inside the quadrant).
  double in_quadrant = 0.0;
  std::size_t n_incorrect = 0;
};

/// Mean spinwise error rates over the outputs that differ from their
/// reference. std::nullopt when every output is correct.
std::optional<SpinwiseRates> spinwise_error_rates(std::span<const SpinConfig> results,
                                                  std::span<const SpinConfig> truths,
                                                  Constellation constellation);

struct CurvePoint {
  std::size_t n_pe = 0;
  std::uint64_t bit_errors = 0;
  double energy = 0.0;
  bool ml = false;
};

struct InstanceRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t n_vars = 0;
  SpinConfig truth;
  std::optional<SpinConfig> ml_spins;
  std::optional<double> ml_energy;  // offset-free Ising energy
  /// Detection at the full budget.
  SpinConfig detected;
  double energy = 0.0;
  double objective = 0.0;
  std::uint64_t bit_errors = 0;
  /// Per-run outputs (samplers) or the single detection.
  std::vector<SpinConfig> outputs;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::vector<CurvePoint> curve;
  /// Two-round detector only.
  std::size_t decided = 0;
  std::size_t decided_agree_ml = 0;
  double round1_energy = 0.0;
  std::vector<std::chrono::nanoseconds> latencies;
};

struct CampaignResult {
  Scenario scenario;
  std::vector<InstanceRecord> records;
};

/// Runs the scenario; instances fan out over scenario.n_workers and are
/// merged in instance order.
CampaignResult run_campaign(const Scenario& scenario);

struct PmlEstimate {
  double p_ml = 0.0;
  Interval interval;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Success: output energy <= ML energy + 1e-9·(1 + |ML energy|).
bool reaches_ml(double energy, double ml_energy);

PmlEstimate estimate_p_ml(const CampaignResult& campaign);
PmlEstimate estimate_p_ml(const Scenario& scenario);

struct BerPoint {
  std::size_t n_pe = 0;
  double ber = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
};

std::vector<BerPoint> ber_curve(const CampaignResult& campaign);
std::vector<BerPoint> ber_campaign(Scenario scenario, std::span<const std::size_t> n_pe_list);

struct MetricsReport {
  std::string scenario_id;
  std::string detector;
  double ber = 0.0;
  std::vector<BerPoint> ber_curve;
  std::optional<PmlEstimate> p_ml;
  std::vector<std::pair<double, std::optional<std::uint64_t>>> required_npe;
  std::optional<SpinwiseRates> spinwise;
  std::optional<double> decided_fraction;
  std::optional<double> decided_agreement;
  LatencyStats latency;
};

inline constexpr double kNpeTargets[] = {0.9, 0.99, 0.999};

MetricsReport summarize(const CampaignResult& campaign);

/// Deterministic part of a report (no wall-clock fields).
nlohmann::json to_json(const MetricsReport& report);
/// Wall-clock part of a report; tts99 = required N_PE(0.99) · p995 latency.
nlohmann::json timing_json(const MetricsReport& report,
                           std::optional<double> time_budget_ms = std::nullopt);
nlohmann::json record_json(const Scenario& scenario, const InstanceRecord& record);

nlohmann::json to_json(const Scenario& scenario);
/// Overrides fields of `base` with those present in `doc`.
Scenario scenario_from_json(const nlohmann::json& doc, Scenario base = {});

/// CSV header and one row per BER point:
/// scenario,detector,n_pe,ber,p_ml,ci_lo,ci_hi
std::string csv_header();
std::string csv_rows(const nlohmann::json& summary);

/// Mean of a − b and its one-sided 95% upper confidence bound (normal
/// approximation on the paired differences).
struct PairedBound {
  double mean = 0.0;
  double upper = 0.0;
  std::size_t n = 0;
};
PairedBound paired_upper_bound(std::span<const double> a, std::span<const double> b);

}  // namespace isingmimo::bench
