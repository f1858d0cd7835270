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

// Command-line driver: instance generation, detection, benchmarking and
// report aggregation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "isingmimo/bench.hpp"
#include "isingmimo/io.hpp"
#include "isingmimo/soft_output.hpp"
#include "isingmimo/two_round.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace isingmimo;

namespace {

// Flags shared by run and bench. Anything left unset keeps the value from
// the config file (or the Scenario default).
struct ScenarioFlags {
  std::optional<std::string> id, modulation, detector, instances_file;
  std::optional<std::size_t> users, rx, instances, runs, n_fs, runs_round2, workers;
  std::optional<double> snr, t_low, t_high, c_th, sa_t_start, sa_t_end;
  std::optional<int> sweeps, exchange_interval, sa_sweeps;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> n_pe;
  bool noise_free = false;
  bool two_round = false;
  bool no_ml = false;
  bool raw_temperatures = false;

  void add(CLI::App* app) {
    app->add_option("--id", id, "Scenario id used in outputs");
    app->add_option("--users", users, "Number of users (transmit antennas)");
    app->add_option("--rx", rx, "Number of receive antennas");
    app->add_option("--modulation", modulation, "bpsk, qpsk, 16qam or 64qam");
    app->add_option("--snr", snr, "SNR in dB");
    app->add_flag("--noise-free", noise_free, "Generate noiseless observations");
    app->add_option("--instances", instances, "Number of random instances");
    app->add_option("--instances-file", instances_file, "JSONL instance file (overrides generation)");
    app->add_option("--runs", runs, "Runs per instance (N_PE)");
    app->add_option("--n-pe", n_pe, "Budgets at which BER is reported");
    app->add_option("--detector", detector,
                    "paramax, 2r-paramax, sa, zf, zf-sic, fcsd, sd or bruteforce");
    app->add_flag("--two-round", two_round, "Use the two-round detector");
    app->add_option("--c-th", c_th, "Confidence threshold for round-1 pre-decisions");
    app->add_option("--runs-round2", runs_round2, "Runs in round 2 (default: round-1 budget)");
    app->add_option("--n-fs", n_fs, "Fully searched users for FCSD");
    app->add_option("--sweeps", sweeps, "Sweeps per run");
    app->add_option("--t-low", t_low, "Low replica temperature");
    app->add_option("--t-high", t_high, "High replica temperature");
    app->add_option("--exchange-interval", exchange_interval, "Sweeps between exchange attempts");
    app->add_flag("--raw-temperatures", raw_temperatures,
                  "Do not scale temperatures by the largest coefficient");
    app->add_option("--sa-sweeps", sa_sweeps, "Sweeps per annealing run");
    app->add_option("--sa-t-start", sa_t_start, "Annealing start temperature");
    app->add_option("--sa-t-end", sa_t_end, "Annealing end temperature");
    app->add_option("--seed", seed, "Base seed");
    app->add_option("--workers", workers, "Worker threads");
    app->add_flag("--no-ml", no_ml, "Skip the exact ML reference");
  }

  void apply(bench::Scenario& sc) const {
    if (id) sc.id = *id;
    if (users) sc.n_users = *users;
    if (rx) sc.n_rx = *rx;
    if (modulation) sc.constellation = Constellation::parse(*modulation);
    if (snr) sc.snr_db = *snr;
    if (noise_free) sc.snr_db = kNoiseFree;
    if (instances) sc.n_instances = *instances;
    if (runs) sc.n_runs = *runs;
    if (!n_pe.empty()) sc.n_pe_list = n_pe;
    if (detector) sc.detector = bench::parse_detector(*detector);
    if (two_round) sc.detector = bench::Detector::TwoRoundParaMax;
    if (c_th) sc.c_th = *c_th;
    if (runs_round2) sc.runs_round2 = *runs_round2;
    if (n_fs) sc.n_fs = *n_fs;
    if (sweeps) sc.solver.n_sweeps = *sweeps;
    if (t_low) sc.solver.t_low = *t_low;
    if (t_high) sc.solver.t_high = *t_high;
    if (exchange_interval) sc.solver.exchange_interval = *exchange_interval;
    if (raw_temperatures) {
      sc.solver.normalize = false;
      sc.anneal.normalize = false;
    }
    if (sa_sweeps) sc.anneal.n_sweeps = *sa_sweeps;
    if (sa_t_start) sc.anneal.t_start = *sa_t_start;
    if (sa_t_end) sc.anneal.t_end = *sa_t_end;
    if (seed) sc.seed = *seed;
    if (workers) sc.n_workers = *workers;
    if (no_ml) sc.compute_ml = false;
    if (instances_file) {
      sc.instances = io::read_instances(*instances_file);
      if (sc.instances.empty()) throw ContractError("instance file is empty");
      sc.n_users = sc.instances.front().n_users;
      sc.n_rx = sc.instances.front().n_rx;
      sc.constellation = sc.instances.front().constellation;
      sc.n_instances = sc.instances.size();
    }
  }
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct CampaignOutput {
  json summary;
  json timing;
  std::string records;
};

CampaignOutput execute(const bench::Scenario& sc, std::optional<double> time_budget_ms) {
  const bench::CampaignResult result = bench::run_campaign(sc);
  const bench::MetricsReport report = bench::summarize(result);
  CampaignOutput out;
  out.summary = bench::to_json(report);
  out.summary["config"] = bench::to_json(sc);
  out.timing = bench::timing_json(report, time_budget_ms);
  for (const auto& rec : result.records) out.records += bench::record_json(sc, rec).dump() + '\n';
  return out;
}

// A grid document is {"base": {...}, "grid": {"field": [values...], ...}}.
// Every combination of grid values is applied on top of the base scenario.
std::vector<bench::Scenario> expand_grid(const json& doc, const bench::Scenario& defaults) {
  const json base = doc.value("base", json::object());
  const json grid = doc.value("grid", json::object());
  std::vector<json> combos{base};
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array() || values.empty()) {
      throw ContractError("grid entry '" + key + "' must be a non-empty array");
    }
    std::vector<json> next;
    for (const auto& c : combos) {
      for (const auto& v : values) {
        json d = c;
        d[key] = v;
        next.push_back(std::move(d));
      }
    }
    combos = std::move(next);
  }
  std::vector<bench::Scenario> out;
  const std::string prefix = base.value("id", defaults.id);
  for (std::size_t i = 0; i < combos.size(); ++i) {
    json d = combos[i];
    if (combos.size() > 1) d["id"] = prefix + "-" + std::to_string(i);
    out.push_back(bench::scenario_from_json(d, defaults));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising-based MIMO detection toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Write random detection instances as JSON Lines");
  std::size_t gen_users = 8, gen_rx = 8, gen_count = 10;
  std::string gen_mod = "16qam", gen_out;
  double gen_snr = 20.0;
  bool gen_noise_free = false;
  std::uint64_t gen_seed = 1;
  std::optional<std::string> gen_trace;
  gen->add_option("--users", gen_users, "Number of users");
  gen->add_option("--rx", gen_rx, "Number of receive antennas");
  gen->add_option("--modulation", gen_mod, "bpsk, qpsk, 16qam or 64qam");
  gen->add_option("--snr", gen_snr, "SNR in dB");
  gen->add_flag("--noise-free", gen_noise_free, "Noiseless observations");
  gen->add_option("--instances", gen_count, "Number of instances");
  gen->add_option("--seed", gen_seed, "Base seed");
  gen->add_option("--trace", gen_trace, "Channel trace JSON to use instead of random channels");
  gen->add_option("--out", gen_out, "Output JSONL file")->required();

  // run
  auto* run = app.add_subcommand("run", "Detect one scenario and print its summary");
  ScenarioFlags run_flags;
  std::optional<std::string> run_config, run_records, run_out;
  std::optional<double> run_budget;
  run->add_option("--config", run_config, "Scenario JSON");
  run->add_option("--records", run_records, "Write per-instance JSONL records here");
  run->add_option("--out", run_out, "Write the summary JSON here instead of stdout");
  run->add_option("--time-budget", run_budget, "Latency budget in ms for the timing estimate");
  run_flags.add(run);

  // bench
  auto* bch = app.add_subcommand("bench", "Run a grid of scenarios");
  ScenarioFlags bench_flags;
  std::optional<std::string> bench_config;
  std::string bench_dir = "bench_out";
  std::optional<double> bench_budget;
  bch->add_option("--config", bench_config, "Grid JSON: {\"base\": {...}, \"grid\": {...}}");
  bch->add_option("--out-dir", bench_dir, "Output directory");
  bch->add_option("--time-budget", bench_budget, "Latency budget in ms for the timing estimate");
  bench_flags.add(bch);

  // report
  auto* rep = app.add_subcommand("report", "Aggregate summary files into CSV and JSON");
  std::vector<std::string> rep_inputs;
  std::optional<std::string> rep_csv, rep_json;
  rep->add_option("inputs", rep_inputs, "summary.json files")->required();
  rep->add_option("--csv", rep_csv, "CSV output (default stdout)");
  rep->add_option("--json", rep_json, "Merged JSON output");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an Ising model JSON and print soft output");
  std::string solve_model;
  SolverParams solve_params;
  std::size_t solve_runs = 256, solve_runs2 = 0;
  bool solve_two_round = false, solve_raw = false;
  double solve_cth = kDefaultConfidenceThreshold;
  std::optional<std::string> solve_config;
  solve->add_option("model", solve_model, "Model JSON file")->required();
  solve->add_option("--config", solve_config, "Solver parameters JSON");
  solve->add_option("--runs", solve_runs, "Number of runs");
  solve->add_option("--sweeps", solve_params.n_sweeps, "Sweeps per run");
  solve->add_option("--t-low", solve_params.t_low, "Low replica temperature");
  solve->add_option("--t-high", solve_params.t_high, "High replica temperature");
  solve->add_option("--exchange-interval", solve_params.exchange_interval, "Sweeps between exchanges");
  solve->add_option("--seed", solve_params.seed, "Seed");
  solve->add_flag("--raw-temperatures", solve_raw, "Do not scale temperatures");
  solve->add_flag("--two-round", solve_two_round, "Two-round detection");
  solve->add_option("--c-th", solve_cth, "Confidence threshold");
  solve->add_option("--runs-round2", solve_runs2, "Runs in round 2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Constellation c = Constellation::parse(gen_mod);
      const double snr = gen_noise_free ? kNoiseFree : gen_snr;
      std::optional<Eigen::MatrixXcd> trace;
      if (gen_trace) trace = load_trace_channel(*gen_trace, {}, {});
      std::vector<DetectionInstance> out;
      for (std::size_t k = 0; k < gen_count; ++k) {
        const std::uint64_t seed = mix_seed(gen_seed, 2 * static_cast<std::uint64_t>(k));
        out.push_back(trace ? instance_from_channel(*trace, c, snr, seed)
                            : generate_instance(gen_users, gen_rx, c, snr, seed));
      }
      io::write_instances(gen_out, out);
      return 0;
    }

    if (*run) {
      bench::Scenario sc;
      if (run_config) sc = bench::scenario_from_json(io::read_json_file(*run_config), sc);
      run_flags.apply(sc);
      const CampaignOutput out = execute(sc, run_budget);
      if (run_records) write_text(*run_records, out.records);
      json doc = out.summary;
      doc["timing"] = out.timing;
      if (run_out) {
        write_text(*run_out, doc.dump(2) + '\n');
      } else {
        std::cout << doc.dump(2) << '\n';
      }
      return 0;
    }

    if (*bch) {
      bench::Scenario defaults;
      std::vector<bench::Scenario> scenarios;
      if (bench_config) {
        scenarios = expand_grid(io::read_json_file(*bench_config), defaults);
      } else {
        scenarios.push_back(defaults);
      }
      for (auto& sc : scenarios) bench_flags.apply(sc);
      for (const auto& sc : scenarios) sc.validate();
      json summary = json::array(), timing = json::array();
      std::string records;
      for (const auto& sc : scenarios) {
        CampaignOutput out = execute(sc, bench_budget);
        std::cerr << sc.id << ": ber=" << out.summary["ber"] << '\n';
        summary.push_back(std::move(out.summary));
        timing.push_back(std::move(out.timing));
        records += out.records;
      }
      const fs::path dir(bench_dir);
      write_text(dir / "records.jsonl", records);
      write_text(dir / "summary.json", summary.dump(2) + '\n');
      write_text(dir / "timing.json", timing.dump(2) + '\n');
      return 0;
    }

    if (*rep) {
      std::string csv = bench::csv_header();
      json merged = json::array();
      for (const auto& path : rep_inputs) {
        json doc = io::read_json_file(path);
        if (!doc.is_array()) doc = json::array({doc});
        for (const auto& s : doc) {
          csv += bench::csv_rows(s);
          merged.push_back(s);
        }
      }
      if (rep_csv) {
        write_text(*rep_csv, csv);
      } else {
        std::cout << csv;
      }
      if (rep_json) write_text(*rep_json, merged.dump(2) + '\n');
      return 0;
    }

    if (*solve) {
      const IsingModel model = io::model_from_json(io::read_json_file(solve_model));
      SolverParams params = solve_params;
      if (solve_config) {
        params = io::solver_params_from_json(io::read_json_file(*solve_config), params);
        // Explicit flags still win over the file.
        if (solve->count("--sweeps")) params.n_sweeps = solve_params.n_sweeps;
        if (solve->count("--t-low")) params.t_low = solve_params.t_low;
        if (solve->count("--t-high")) params.t_high = solve_params.t_high;
        if (solve->count("--exchange-interval")) params.exchange_interval = solve_params.exchange_interval;
        if (solve->count("--seed")) params.seed = solve_params.seed;
      }
      if (solve_raw) params.normalize = false;
      params.validate();
      json out;
      if (solve_two_round) {
        TwoRoundParams tp;
        tp.solver = params;
        tp.runs_round1 = solve_runs;
        tp.runs_round2 = solve_runs2 ? solve_runs2 : solve_runs;
        tp.c_th = solve_cth;
        const TwoRoundResult res = two_round_detect(model, tp);
        out["best"] = io::to_json(res.config);
        out["energy"] = res.energy;
        out["report"] = io::to_json(res.report);
      } else {
        if (solve_runs < 1) throw ContractError("at least one run is required");
        const auto runs = run_batch(model, params, solve_runs);
        const OutputTable table = tabulate(runs);
        out = io::soft_output_json(table, confidence(table));
        out["energy"] = table.entries.front().energy;
      }
      out["params"] = io::to_json(params);
      std::cout << out.dump(2) << '\n';
      return 0;
    }
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
