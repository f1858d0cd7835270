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

#include <string>

#include <nlohmann/json.hpp>

#include "isingmimo/baselines.hpp"
#include "isingmimo/ising.hpp"
#include "isingmimo/mimo.hpp"
#include "isingmimo/pmis.hpp"
#include "isingmimo/soft_output.hpp"
#include "isingmimo/two_round.hpp"

namespace isingmimo::io {

using nlohmann::json;

/// {"n_vars", "couplings": [[i, j, g], ...], "fields", "offset"}, 1-based.
json to_json(const IsingModel& model);
IsingModel model_from_json(const json& doc);

/// One JSON Lines record; complex values as [re, im], snr_db null when
/// noise-free.
json to_json(const DetectionInstance& instance);
DetectionInstance instance_from_json(const json& doc);

json to_json(const SpinConfig& config);
SpinConfig spins_from_json(const json& doc);

json to_json(const Eigen::VectorXcd& v);

/// {"best", "confidence", "table": [{"energy", "count", "spins"}]}.
json soft_output_json(const OutputTable& table, std::span<const double> confidences);

/// Round report fields for the result JSON of a two-round detection.
json to_json(const RoundReport& report);

/// Reads any subset of {"sweeps", "t_low", "t_high", "exchange_interval",
/// "seed", "normalize"} over `base`.
SolverParams solver_params_from_json(const json& doc, SolverParams base = {});
json to_json(const SolverParams& params);

json read_json_file(const std::string& path);
std::vector<DetectionInstance> read_instances(const std::string& path);
void write_instances(const std::string& path, std::span<const DetectionInstance> instances);

}  // namespace isingmimo::io
