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

#include "isingmimo/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "isingmimo/rng.hpp"
#include "isingmimo/soft_output.hpp"

namespace isingmimo::bench {

using nlohmann::json;
using std::chrono::nanoseconds;

Detector parse_detector(std::string_view name) {
  if (name == "paramax") return Detector::ParaMax;
  if (name == "2r-paramax") return Detector::TwoRoundParaMax;
  if (name == "sa") return Detector::SA;
  if (name == "zf") return Detector::ZF;
  if (name == "zf-sic") return Detector::ZFSIC;
  if (name == "fcsd") return Detector::FCSD;
  if (name == "sd") return Detector::SD;
  if (name == "bruteforce") return Detector::BruteForce;
  throw ContractError("unknown detector '" + std::string(name) + "'");
}

std::string detector_name(Detector detector) {
  switch (detector) {
    case Detector::ParaMax: return "paramax";
    case Detector::TwoRoundParaMax: return "2r-paramax";
    case Detector::SA: return "sa";
    case Detector::ZF: return "zf";
    case Detector::ZFSIC: return "zf-sic";
    case Detector::FCSD: return "fcsd";
    case Detector::SD: return "sd";
    case Detector::BruteForce: return "bruteforce";
  }
  return "?";
}

bool is_sampler(Detector detector) {
  return detector == Detector::ParaMax || detector == Detector::SA;
}

void Scenario::validate() const {
  if (instances.empty()) {
    if (n_users < 1 || n_rx < n_users) throw ContractError("need n_rx >= n_users >= 1");
    if (n_instances < 1) throw ContractError("scenario needs at least one instance");
  }
  if (n_runs < 1) throw ContractError("scenario needs at least one run per instance");
  for (auto n : n_pe_list) {
    if (n < 1 || n > n_runs) throw ContractError("n_pe values must lie in [1, n_runs]");
  }
  if (detector == Detector::FCSD && n_fs > n_users && instances.empty()) {
    throw ContractError("n_fs exceeds the number of users");
  }
  solver.validate();
}

std::size_t Scenario::instance_count() const {
  return instances.empty() ? n_instances : instances.size();
}

std::uint64_t instance_seed(const Scenario& scenario, std::size_t k) {
  return mix_seed(scenario.seed, 2 * static_cast<std::uint64_t>(k));
}

std::uint64_t solver_seed(const Scenario& scenario, std::size_t k) {
  return mix_seed(scenario.seed, 2 * static_cast<std::uint64_t>(k) + 1);
}

DetectionInstance Scenario::instance(std::size_t k) const {
  if (!instances.empty()) return instances.at(k);
  return generate_instance(n_users, n_rx, constellation, snr_db, instance_seed(*this, k));
}

std::vector<std::size_t> Scenario::budgets() const {
  std::vector<std::size_t> b = n_pe_list;
  b.push_back(n_runs);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0),
          std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

double success_probability(double p_ml, std::uint64_t n_pe) {
  if (!(p_ml >= 0.0 && p_ml <= 1.0)) throw ContractError("p_ml must lie in [0, 1]");
  if (n_pe < 1) throw ContractError("n_pe must be >= 1");
  return 1.0 - std::pow(1.0 - p_ml, static_cast<double>(n_pe));
}

std::optional<std::uint64_t> required_npe(double p_ml, double target) {
  if (!(target > 0.0 && target < 1.0)) throw ContractError("target must lie in (0, 1)");
  if (!(p_ml >= 0.0 && p_ml <= 1.0)) throw ContractError("p_ml must lie in [0, 1]");
  if (p_ml >= 1.0) return 1;
  if (p_ml <= 0.0) return std::nullopt;
  const double ratio = std::log1p(-target) / std::log1p(-p_ml);
  auto n = static_cast<std::uint64_t>(std::max(1.0, std::ceil(ratio * (1.0 - 1e-12))));
  // Absorb rounding in the logarithms.
  while (success_probability(p_ml, n) < target) ++n;
  return n;
}

LatencyStats latency_stats(std::span<const nanoseconds> samples) {
  if (samples.empty()) throw ContractError("latency statistics need at least one sample");
  std::vector<nanoseconds> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto rank = [&](double p) {
    const auto r = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(r, 1, sorted.size()) - 1];
  };
  return {rank(0.5), rank(0.995)};
}

std::optional<SpinwiseRates> spinwise_error_rates(std::span<const SpinConfig> results,
                                                  std::span<const SpinConfig> truths,
                                                  Constellation constellation) {
  if (results.size() != truths.size()) throw ContractError("results and truths differ in count");
  const std::size_t b = constellation.bits_per_symbol();
  const std::size_t per_axis = constellation.spins_per_axis();
  std::vector<double> position_sum(b, 0.0);
  double quadrant_sum = 0.0, inner_sum = 0.0;
  std::size_t incorrect = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    const SpinConfig& out = results[r];
    const SpinConfig& ref = truths[r];
    if (out.size() != ref.size() || out.size() % b != 0) {
      throw ContractError("configuration length does not match the constellation");
    }
    if (out == ref) continue;
    ++incorrect;
    const std::size_t users = out.size() / b;
    std::vector<std::size_t> wrong(b, 0);
    for (std::size_t j = 0; j < out.size(); ++j) wrong[j % b] += out[j] != ref[j];
    std::size_t q_wrong = 0, q_total = 0, i_wrong = 0, i_total = 0;
    for (std::size_t p = 0; p < b; ++p) {
      position_sum[p] += static_cast<double>(wrong[p]) / static_cast<double>(users);
      if (p % per_axis == 0) {
        q_wrong += wrong[p];
        q_total += users;
      } else {
        i_wrong += wrong[p];
        i_total += users;
      }
    }
    quadrant_sum += static_cast<double>(q_wrong) / static_cast<double>(q_total);
    if (i_total > 0) inner_sum += static_cast<double>(i_wrong) / static_cast<double>(i_total);
  }
  if (incorrect == 0) return std::nullopt;
  SpinwiseRates rates;
  rates.n_incorrect = incorrect;
  const double n = static_cast<double>(incorrect);
  for (double s : position_sum) rates.per_position.push_back(s / n);
  rates.quadrant = quadrant_sum / n;
  rates.in_quadrant = inner_sum / n;
  return rates;
}

bool reaches_ml(double energy, double ml_energy) {
  return energy <= ml_energy + 1e-9 * (1.0 + std::abs(ml_energy));
}

namespace {

/// Lower energy wins; equal energies fall back to configuration order.
bool better(const SpinConfig& a, double ea, const SpinConfig& b, double eb) {
  return ea < eb || (ea == eb && a < b);
}

void fill_sampler_record(InstanceRecord& rec, const Scenario& sc, std::vector<RunResult> runs) {
  const auto budgets = sc.budgets();
  std::size_t next = 0;
  SpinConfig best = runs.front().config;
  double best_energy = runs.front().energy;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (better(runs[r].config, runs[r].energy, best, best_energy)) {
      best = runs[r].config;
      best_energy = runs[r].energy;
    }
    if (rec.ml_energy && reaches_ml(runs[r].energy, *rec.ml_energy)) ++rec.successes;
    rec.latencies.push_back(runs[r].latency);
    while (next < budgets.size() && budgets[next] == r + 1) {
      rec.curve.push_back({budgets[next], best.hamming_distance(rec.truth), best_energy,
                           rec.ml_energy && reaches_ml(best_energy, *rec.ml_energy)});
      ++next;
    }
  }
  rec.trials = runs.size();
  rec.detected = best;
  rec.energy = best_energy;
  rec.outputs.reserve(runs.size());
  for (auto& r : runs) rec.outputs.push_back(std::move(r.config));
}

InstanceRecord run_instance(const Scenario& sc, std::size_t k) {
  const DetectionInstance inst = sc.instance(k);
  const IsingModel model = ml_to_ising(inst);
  InstanceRecord rec;
  rec.index = k;
  rec.seed = inst.seed;
  rec.n_vars = inst.n_vars();
  rec.truth = inst.truth_spins;
  if (sc.compute_ml && rec.n_vars <= kOracleMaxVars) {
    const DetectorResult ml = sphere_decode(inst);
    rec.ml_spins = ml.spins;
    rec.ml_energy = energy(model, ml.spins);
  }

  SolverParams solver = sc.solver;
  solver.seed = solver_seed(sc, k);

  switch (sc.detector) {
    case Detector::ParaMax:
      fill_sampler_record(rec, sc, run_batch(model, solver, sc.n_runs));
      break;
    case Detector::SA: {
      std::vector<RunResult> runs(sc.n_runs);
      for (std::size_t r = 0; r < sc.n_runs; ++r) {
        AnnealParams a = sc.anneal;
        a.seed = mix_seed(solver.seed, r);
        AnnealResult res = sa_run(model, a);
        runs[r] = {std::move(res.config), res.energy, res.latency};
      }
      fill_sampler_record(rec, sc, std::move(runs));
      break;
    }
    case Detector::TwoRoundParaMax: {
      for (std::size_t budget : sc.budgets()) {
        TwoRoundParams p;
        p.solver = solver;
        p.runs_round1 = budget;
        p.runs_round2 = sc.runs_round2 ? sc.runs_round2 : budget;
        p.c_th = sc.c_th;
        const auto start = std::chrono::steady_clock::now();
        TwoRoundResult res = two_round_detect(model, p);
        rec.latencies.push_back(std::chrono::duration_cast<nanoseconds>(
            std::chrono::steady_clock::now() - start));
        const bool ml = rec.ml_energy && reaches_ml(res.energy, *rec.ml_energy);
        rec.curve.push_back({budget, res.config.hamming_distance(rec.truth), res.energy, ml});
        if (budget == sc.n_runs) {
          rec.detected = res.config;
          rec.energy = res.energy;
          rec.round1_energy = res.report.round1_best_energy;
          rec.decided = res.report.pre_decision.decided.size();
          if (rec.ml_spins) {
            for (const auto& [j, v] : res.report.pre_decision.decided) {
              rec.decided_agree_ml += (*rec.ml_spins)[j] == v;
            }
          }
          rec.trials = 1;
          rec.successes = ml ? 1 : 0;
          rec.outputs = {res.config};
        }
      }
      break;
    }
    default: {
      DetectorResult res;
      switch (sc.detector) {
        case Detector::ZF: res = zero_forcing(inst); break;
        case Detector::ZFSIC: res = zf_sic(inst); break;
        case Detector::FCSD: res = fcsd(inst, sc.n_fs); break;
        case Detector::SD: res = sphere_decode(inst); break;
        default: res = brute_force_ml(inst); break;
      }
      rec.detected = res.spins;
      rec.energy = energy(model, res.spins);
      const bool ml = rec.ml_energy && reaches_ml(rec.energy, *rec.ml_energy);
      for (std::size_t budget : sc.budgets()) {
        rec.curve.push_back({budget, res.spins.hamming_distance(rec.truth), rec.energy, ml});
      }
      rec.trials = 1;
      rec.successes = ml ? 1 : 0;
      rec.outputs = {res.spins};
      rec.latencies = {res.latency};
      break;
    }
  }
  rec.bit_errors = rec.detected.hamming_distance(rec.truth);
  rec.objective = ml_objective(inst, spins_to_symbols(inst.constellation, rec.detected));
  return rec;
}

}  // namespace

CampaignResult run_campaign(const Scenario& scenario) {
  scenario.validate();
  CampaignResult out;
  out.scenario = scenario;
  out.records.resize(scenario.instance_count());
  parallel_for(out.records.size(), scenario.n_workers,
               [&](std::size_t k) { out.records[k] = run_instance(scenario, k); });
  return out;
}

PmlEstimate estimate_p_ml(const CampaignResult& campaign) {
  PmlEstimate est;
  for (const auto& rec : campaign.records) {
    if (!rec.ml_energy) throw ContractError("ML oracle unavailable for this scenario size");
    est.successes += rec.successes;
    est.trials += rec.trials;
  }
  if (est.trials == 0) throw ContractError("no runs to estimate P_ML from");
  est.p_ml = static_cast<double>(est.successes) / static_cast<double>(est.trials);
  est.interval = wilson_interval(est.successes, est.trials);
  return est;
}

PmlEstimate estimate_p_ml(const Scenario& scenario) {
  scenario.validate();
  if (scenario.instances.empty() &&
      scenario.n_users * scenario.constellation.bits_per_symbol() > kOracleMaxVars) {
    throw ContractError("scenario exceeds the ML oracle guard");
  }
  Scenario sc = scenario;
  sc.compute_ml = true;
  return estimate_p_ml(run_campaign(sc));
}

std::vector<BerPoint> ber_curve(const CampaignResult& campaign) {
  const auto budgets = campaign.scenario.budgets();
  std::vector<BerPoint> points;
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    BerPoint p;
    p.n_pe = budgets[b];
    for (const auto& rec : campaign.records) {
      p.bit_errors += rec.curve.at(b).bit_errors;
      p.bits += rec.n_vars;
    }
    p.ber = p.bits ? static_cast<double>(p.bit_errors) / static_cast<double>(p.bits) : 0.0;
    points.push_back(p);
  }
  return points;
}

std::vector<BerPoint> ber_campaign(Scenario scenario, std::span<const std::size_t> n_pe_list) {
  scenario.n_pe_list.assign(n_pe_list.begin(), n_pe_list.end());
  if (!scenario.n_pe_list.empty()) {
    scenario.n_runs = std::max(scenario.n_runs,
                               *std::max_element(scenario.n_pe_list.begin(), scenario.n_pe_list.end()));
  }
  scenario.compute_ml = false;
  auto curve = ber_curve(run_campaign(scenario));
  std::erase_if(curve, [&](const BerPoint& p) {
    return !n_pe_list.empty() &&
           std::find(n_pe_list.begin(), n_pe_list.end(), p.n_pe) == n_pe_list.end();
  });
  return curve;
}

MetricsReport summarize(const CampaignResult& campaign) {
  const Scenario& sc = campaign.scenario;
  MetricsReport rep;
  rep.scenario_id = sc.id;
  rep.detector = detector_name(sc.detector);
  rep.ber_curve = ber_curve(campaign);
  rep.ber = rep.ber_curve.back().ber;

  const bool have_ml = std::all_of(campaign.records.begin(), campaign.records.end(),
                                   [](const InstanceRecord& r) { return r.ml_energy.has_value(); });
  if (have_ml) {
    rep.p_ml = estimate_p_ml(campaign);
    for (double t : kNpeTargets) rep.required_npe.emplace_back(t, required_npe(rep.p_ml->p_ml, t));
  }

  std::vector<SpinConfig> outputs, refs;
  std::vector<nanoseconds> latencies;
  std::size_t decided = 0, agree = 0, vars = 0;
  for (const auto& rec : campaign.records) {
    const SpinConfig& ref = rec.ml_spins ? *rec.ml_spins : rec.truth;
    for (const auto& o : rec.outputs) {
      outputs.push_back(o);
      refs.push_back(ref);
    }
    latencies.insert(latencies.end(), rec.latencies.begin(), rec.latencies.end());
    decided += rec.decided;
    agree += rec.decided_agree_ml;
    vars += rec.n_vars;
  }
  rep.spinwise = spinwise_error_rates(outputs, refs, campaign.records.empty()
                                                         ? sc.constellation
                                                         : sc.instance(0).constellation);
  if (sc.detector == Detector::TwoRoundParaMax) {
    rep.decided_fraction = vars ? static_cast<double>(decided) / static_cast<double>(vars) : 0.0;
    if (have_ml && decided > 0) {
      rep.decided_agreement = static_cast<double>(agree) / static_cast<double>(decided);
    }
  }
  if (!latencies.empty()) rep.latency = latency_stats(latencies);
  return rep;
}

json to_json(const MetricsReport& report) {
  json curve = json::array();
  for (const auto& p : report.ber_curve) {
    curve.push_back({{"n_pe", p.n_pe}, {"ber", p.ber}, {"bit_errors", p.bit_errors}, {"bits", p.bits}});
  }
  json out = {{"scenario", report.scenario_id},
              {"detector", report.detector},
              {"ber", report.ber},
              {"ber_curve", std::move(curve)}};
  if (report.p_ml) {
    out["p_ml"] = {{"value", report.p_ml->p_ml},
                   {"ci_lo", report.p_ml->interval.lo},
                   {"ci_hi", report.p_ml->interval.hi},
                   {"successes", report.p_ml->successes},
                   {"trials", report.p_ml->trials}};
    json req = json::object();
    for (const auto& [t, n] : report.required_npe) {
      std::ostringstream key;
      key << t;
      req[key.str()] = n ? json(*n) : json("unbounded");
    }
    out["required_npe"] = std::move(req);
  } else {
    out["p_ml"] = nullptr;
    out["required_npe"] = nullptr;
  }
  if (report.spinwise) {
    out["spinwise_error"] = {{"per_position", report.spinwise->per_position},
                             {"quadrant", report.spinwise->quadrant},
                             {"in_quadrant", report.spinwise->in_quadrant},
                             {"n_incorrect", report.spinwise->n_incorrect}};
  } else {
    out["spinwise_error"] = "no-data";
  }
  if (report.decided_fraction) out["decided_fraction"] = *report.decided_fraction;
  if (report.decided_agreement) out["decided_agreement"] = *report.decided_agreement;
  return out;
}

json timing_json(const MetricsReport& report, std::optional<double> time_budget_ms) {
  const double p995_s = std::chrono::duration<double>(report.latency.p995).count();
  json out = {{"scenario", report.scenario_id},
              {"detector", report.detector},
              {"latency_median_ns", report.latency.median.count()},
              {"latency_p995_ns", report.latency.p995.count()}};
  out["tts99_s"] = nullptr;
  for (const auto& [t, n] : report.required_npe) {
    if (t == 0.99 && n) out["tts99_s"] = static_cast<double>(*n) * p995_s;
  }
  if (time_budget_ms) {
    out["time_budget_ms"] = *time_budget_ms;
    out["fits_time_budget"] = p995_s * 1e3 <= *time_budget_ms;
  }
  return out;
}

json record_json(const Scenario& scenario, const InstanceRecord& rec) {
  json curve = json::array();
  for (const auto& p : rec.curve) {
    curve.push_back({{"n_pe", p.n_pe}, {"bit_errors", p.bit_errors}, {"energy", p.energy}, {"ml", p.ml}});
  }
  json out = {{"scenario", scenario.id},
              {"detector", detector_name(scenario.detector)},
              {"instance", rec.index},
              {"seed", rec.seed},
              {"n_vars", rec.n_vars},
              {"energy", rec.energy},
              {"objective", rec.objective},
              {"bit_errors", rec.bit_errors},
              {"runs", rec.trials},
              {"ml_runs", rec.successes},
              {"curve", std::move(curve)}};
  out["ml_energy"] = rec.ml_energy ? json(*rec.ml_energy) : json(nullptr);
  if (scenario.detector == Detector::TwoRoundParaMax) {
    out["decided"] = rec.decided;
    out["decided_agree_ml"] = rec.decided_agree_ml;
    out["round1_energy"] = rec.round1_energy;
  }
  return out;
}

json to_json(const Scenario& sc) {
  return {{"id", sc.id},
          {"n_users", sc.n_users},
          {"n_rx", sc.n_rx},
          {"modulation", sc.constellation.name()},
          {"snr_db", std::isfinite(sc.snr_db) ? json(sc.snr_db) : json(nullptr)},
          {"n_instances", sc.n_instances},
          {"n_runs", sc.n_runs},
          {"detector", detector_name(sc.detector)},
          {"n_fs", sc.n_fs},
          {"solver", {{"sweeps", sc.solver.n_sweeps},
                      {"t_low", sc.solver.t_low},
                      {"t_high", sc.solver.t_high},
                      {"exchange_interval", sc.solver.exchange_interval},
                      {"normalize", sc.solver.normalize}}},
          {"sa", {{"sweeps", sc.anneal.n_sweeps},
                  {"t_start", sc.anneal.t_start},
                  {"t_end", sc.anneal.t_end}}},
          {"c_th", sc.c_th},
          {"runs_round2", sc.runs_round2},
          {"seed", sc.seed},
          {"n_pe_list", sc.n_pe_list},
          {"compute_ml", sc.compute_ml}};
}

Scenario scenario_from_json(const json& doc, Scenario base) {
  try {
    if (doc.contains("id")) base.id = doc["id"].get<std::string>();
    if (doc.contains("n_users")) base.n_users = doc["n_users"].get<std::size_t>();
    if (doc.contains("n_rx")) base.n_rx = doc["n_rx"].get<std::size_t>();
    if (doc.contains("modulation")) {
      base.constellation = Constellation::parse(doc["modulation"].get<std::string>());
    }
    if (doc.contains("snr_db")) {
      base.snr_db = doc["snr_db"].is_null() ? kNoiseFree : doc["snr_db"].get<double>();
    }
    if (doc.contains("n_instances")) base.n_instances = doc["n_instances"].get<std::size_t>();
    if (doc.contains("n_runs")) base.n_runs = doc["n_runs"].get<std::size_t>();
    if (doc.contains("detector")) base.detector = parse_detector(doc["detector"].get<std::string>());
    if (doc.contains("n_fs")) base.n_fs = doc["n_fs"].get<std::size_t>();
    if (doc.contains("solver")) {
      const auto& s = doc["solver"];
      if (s.contains("sweeps")) base.solver.n_sweeps = s["sweeps"].get<int>();
      if (s.contains("t_low")) base.solver.t_low = s["t_low"].get<double>();
      if (s.contains("t_high")) base.solver.t_high = s["t_high"].get<double>();
      if (s.contains("exchange_interval")) base.solver.exchange_interval = s["exchange_interval"].get<int>();
      if (s.contains("normalize")) base.solver.normalize = s["normalize"].get<bool>();
    }
    if (doc.contains("sa")) {
      const auto& s = doc["sa"];
      if (s.contains("sweeps")) base.anneal.n_sweeps = s["sweeps"].get<int>();
      if (s.contains("t_start")) base.anneal.t_start = s["t_start"].get<double>();
      if (s.contains("t_end")) base.anneal.t_end = s["t_end"].get<double>();
    }
    if (doc.contains("c_th")) base.c_th = doc["c_th"].get<double>();
    if (doc.contains("runs_round2")) base.runs_round2 = doc["runs_round2"].get<std::size_t>();
    if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("n_workers")) base.n_workers = doc["n_workers"].get<std::size_t>();
    if (doc.contains("n_pe_list")) base.n_pe_list = doc["n_pe_list"].get<std::vector<std::size_t>>();
    if (doc.contains("compute_ml")) base.compute_ml = doc["compute_ml"].get<bool>();
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed scenario: ") + e.what());
  }
  return base;
}

std::string csv_header() { return "scenario,detector,n_pe,ber,p_ml,ci_lo,ci_hi\n"; }

std::string csv_rows(const json& summary) {
  std::ostringstream out;
  out.precision(10);
  const json& pml = summary.at("p_ml");
  for (const auto& p : summary.at("ber_curve")) {
    out << summary.at("scenario").get<std::string>() << ',' << summary.at("detector").get<std::string>()
        << ',' << p.at("n_pe").get<std::size_t>() << ',' << p.at("ber").get<double>() << ',';
    if (pml.is_null()) {
      out << ",,";
    } else {
      out << pml.at("value").get<double>() << ',' << pml.at("ci_lo").get<double>() << ','
          << pml.at("ci_hi").get<double>();
    }
    out << '\n';
  }
  return out.str();
}

PairedBound paired_upper_bound(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw ContractError("paired samples must match and be non-empty");
  const std::size_t n = a.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  PairedBound out{mean, mean, n};
  if (n > 1) {
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    out.upper = mean + 1.6448536269514722 * se;
  }
  return out;
}

}  // namespace isingmimo::bench
