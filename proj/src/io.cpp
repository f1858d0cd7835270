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

#include "isingmimo/io.hpp"

#include <cmath>
#include <fstream>

namespace isingmimo::io {

json to_json(const IsingModel& model) {
  json couplings = json::array();
  for (const auto& c : model.couplings()) couplings.push_back({c.i + 1, c.j + 1, c.g});
  return {{"n_vars", model.n_vars()},
          {"couplings", std::move(couplings)},
          {"fields", model.fields()},
          {"offset", model.offset()}};
}

IsingModel model_from_json(const json& doc) {
  try {
    const auto n = doc.at("n_vars").get<std::size_t>();
    std::vector<Coupling> couplings;
    for (const auto& c : doc.at("couplings")) {
      if (!c.is_array() || c.size() != 3) throw ContractError("coupling must be [i, j, g]");
      const auto i = c[0].get<std::size_t>();
      const auto j = c[1].get<std::size_t>();
      if (i < 1 || j < 1) throw ContractError("coupling indices are 1-based");
      couplings.push_back({i - 1, j - 1, c[2].get<double>()});
    }
    return IsingModel(n, std::move(couplings), doc.at("fields").get<std::vector<double>>(),
                      doc.value("offset", 0.0));
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed Ising model: ") + e.what());
  }
}

json to_json(const SpinConfig& config) {
  json out = json::array();
  for (auto s : config.spins()) out.push_back(static_cast<int>(s));
  return out;
}

SpinConfig spins_from_json(const json& doc) {
  std::vector<std::int8_t> spins;
  for (const auto& s : doc) spins.push_back(static_cast<std::int8_t>(s.get<int>()));
  return SpinConfig(std::move(spins));
}

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json to_json(const DetectionInstance& instance) {
  json channel = json::array();
  for (Eigen::Index r = 0; r < instance.channel.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < instance.channel.cols(); ++c) {
      row.push_back({instance.channel(r, c).real(), instance.channel(r, c).imag()});
    }
    channel.push_back(std::move(row));
  }
  return {{"n_users", instance.n_users},
          {"n_rx", instance.n_rx},
          {"constellation", instance.constellation.name()},
          {"channel", std::move(channel)},
          {"observation", to_json(instance.observation)},
          {"truth_spins", to_json(instance.truth_spins)},
          {"snr_db", std::isfinite(instance.snr_db) ? json(instance.snr_db) : json(nullptr)},
          {"seed", instance.seed}};
}

DetectionInstance instance_from_json(const json& doc) {
  try {
    DetectionInstance inst;
    inst.n_users = doc.at("n_users").get<std::size_t>();
    inst.n_rx = doc.at("n_rx").get<std::size_t>();
    inst.constellation = Constellation::parse(doc.at("constellation").get<std::string>());
    const auto& rows = doc.at("channel");
    if (rows.size() != inst.n_rx) throw ContractError("channel row count mismatch");
    inst.channel.resize(static_cast<Eigen::Index>(inst.n_rx), static_cast<Eigen::Index>(inst.n_users));
    for (std::size_t r = 0; r < inst.n_rx; ++r) {
      if (rows[r].size() != inst.n_users) throw ContractError("channel column count mismatch");
      for (std::size_t c = 0; c < inst.n_users; ++c) {
        inst.channel(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {
            rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>()};
      }
    }
    const auto& obs = doc.at("observation");
    if (obs.size() != inst.n_rx) throw ContractError("observation length mismatch");
    inst.observation.resize(static_cast<Eigen::Index>(inst.n_rx));
    for (std::size_t r = 0; r < inst.n_rx; ++r) {
      inst.observation(static_cast<Eigen::Index>(r)) = {obs[r].at(0).get<double>(),
                                                        obs[r].at(1).get<double>()};
    }
    inst.truth_spins = spins_from_json(doc.at("truth_spins"));
    if (inst.truth_spins.size() != inst.n_vars()) throw ContractError("truth_spins length mismatch");
    const auto& snr = doc.at("snr_db");
    inst.snr_db = snr.is_null() ? kNoiseFree : snr.get<double>();
    inst.seed = doc.at("seed").get<std::uint64_t>();
    return inst;
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed instance: ") + e.what());
  }
}

json soft_output_json(const OutputTable& table, std::span<const double> confidences) {
  json entries = json::array();
  for (const auto& e : table.entries) {
    entries.push_back({{"energy", e.energy}, {"count", e.count}, {"spins", to_json(e.config)}});
  }
  return {{"best", to_json(filter_best(table))},
          {"confidence", std::vector<double>(confidences.begin(), confidences.end())},
          {"table", std::move(entries)}};
}

json to_json(const RoundReport& report) {
  json decided = json::array();
  for (const auto& [k, v] : report.pre_decision.decided) decided.push_back({k + 1, v});
  json out = {{"c_th", report.pre_decision.threshold},
              {"decided", std::move(decided)},
              {"decided_fraction", report.pre_decision.decided_fraction},
              {"round1_best_energy", report.round1_best_energy},
              {"round1", soft_output_json(report.round1_table, report.round1_confidence)},
              {"round2_improved", report.round2_improved}};
  if (report.round2_table) {
    json index_map = json::array();
    for (auto k : report.round2_index_map) index_map.push_back(k + 1);
    out["round2_best_energy"] = *report.round2_best_energy;
    out["round2"] = soft_output_json(*report.round2_table, report.round2_confidence);
    out["round2"]["index_map"] = std::move(index_map);
  } else {
    out["round2_best_energy"] = nullptr;
  }
  return out;
}

SolverParams solver_params_from_json(const json& doc, SolverParams base) {
  try {
    if (doc.contains("sweeps")) base.n_sweeps = doc["sweeps"].get<int>();
    if (doc.contains("t_low")) base.t_low = doc["t_low"].get<double>();
    if (doc.contains("t_high")) base.t_high = doc["t_high"].get<double>();
    if (doc.contains("exchange_interval")) base.exchange_interval = doc["exchange_interval"].get<int>();
    if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("normalize")) base.normalize = doc["normalize"].get<bool>();
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed solver parameters: ") + e.what());
  }
  base.validate();
  return base;
}

json to_json(const SolverParams& params) {
  return {{"sweeps", params.n_sweeps},
          {"t_low", params.t_low},
          {"t_high", params.t_high},
          {"exchange_interval", params.exchange_interval},
          {"seed", params.seed},
          {"normalize", params.normalize}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ContractError("cannot parse " + path + ": " + e.what());
  }
}

std::vector<DetectionInstance> read_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open " + path);
  std::vector<DetectionInstance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(instance_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ContractError("cannot parse instance line: " + std::string(e.what()));
    }
  }
  return out;
}

void write_instances(const std::string& path, std::span<const DetectionInstance> instances) {
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path);
  for (const auto& inst : instances) out << to_json(inst).dump() << '\n';
}

}  // namespace isingmimo::io
