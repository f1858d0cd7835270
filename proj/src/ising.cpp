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

#include "isingmimo/ising.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isingmimo {

namespace {

void require_spin(int value) {
  if (value != -1 && value != 1) {
    throw ContractError("spin value must be -1 or +1, got " + std::to_string(value));
  }
}

void require_length(const IsingModel& model, const SpinConfig& config) {
  if (config.size() != model.n_vars()) {
    throw ContractError("config has " + std::to_string(config.size()) +
                        " spins, model has " + std::to_string(model.n_vars()));
  }
}

}  // namespace

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (auto s : spins_) require_spin(s);
}

SpinConfig::SpinConfig(std::initializer_list<int> spins) {
  spins_.reserve(spins.size());
  for (int s : spins) {
    require_spin(s);
    spins_.push_back(static_cast<std::int8_t>(s));
  }
}

SpinConfig SpinConfig::filled(std::size_t n, int value) {
  require_spin(value);
  return SpinConfig(std::vector<std::int8_t>(n, static_cast<std::int8_t>(value)));
}

void SpinConfig::set(std::size_t i, int value) {
  require_spin(value);
  if (i >= spins_.size()) throw ContractError("spin index out of range");
  spins_[i] = static_cast<std::int8_t>(value);
}

std::size_t SpinConfig::hamming_distance(const SpinConfig& other) const {
  if (other.size() != size()) throw ContractError("hamming distance of unequal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < size(); ++i) d += spins_[i] != other.spins_[i];
  return d;
}

IsingModel::IsingModel(std::size_t n_vars, std::vector<Coupling> couplings,
                       std::vector<double> fields, double offset)
    : couplings_(std::move(couplings)), fields_(std::move(fields)), offset_(offset) {
  if (n_vars == 0) throw ContractError("model needs at least one variable");
  if (fields_.size() != n_vars) {
    throw ContractError("fields vector length " + std::to_string(fields_.size()) +
                        " does not match n_vars " + std::to_string(n_vars));
  }
  if (!std::isfinite(offset_)) throw ContractError("non-finite offset");
  for (double f : fields_) {
    if (!std::isfinite(f)) throw ContractError("non-finite field");
  }
  for (const auto& c : couplings_) {
    if (c.i >= c.j || c.j >= n_vars) {
      throw ContractError("coupling (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                          ") violates i < j < n_vars");
    }
    if (!std::isfinite(c.g)) throw ContractError("non-finite coupling");
  }
  std::sort(couplings_.begin(), couplings_.end(), [](const Coupling& a, const Coupling& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  auto dup = std::adjacent_find(couplings_.begin(), couplings_.end(),
                                [](const Coupling& a, const Coupling& b) {
                                  return a.i == b.i && a.j == b.j;
                                });
  if (dup != couplings_.end()) {
    throw ContractError("duplicate coupling (" + std::to_string(dup->i) + ", " +
                        std::to_string(dup->j) + ")");
  }
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(couplings_.begin(), couplings_.end(), std::pair{i, j},
                             [](const Coupling& c, const std::pair<std::size_t, std::size_t>& key) {
                               return c.i != key.first ? c.i < key.first : c.j < key.second;
                             });
  if (it != couplings_.end() && it->i == i && it->j == j) return it->g;
  return 0.0;
}

Eigen::MatrixXd IsingModel::dense_couplings() const {
  const auto n = static_cast<Eigen::Index>(n_vars());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (const auto& c : couplings_) {
    g(static_cast<Eigen::Index>(c.i), static_cast<Eigen::Index>(c.j)) = c.g;
    g(static_cast<Eigen::Index>(c.j), static_cast<Eigen::Index>(c.i)) = c.g;
  }
  return g;
}

Eigen::VectorXd IsingModel::field_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(fields_.data(),
                                           static_cast<Eigen::Index>(fields_.size()));
}

double IsingModel::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (double f : fields_) m = std::max(m, std::abs(f));
  for (const auto& c : couplings_) m = std::max(m, std::abs(c.g));
  return m;
}

IsingModel operator+(const IsingModel& a, const IsingModel& b) {
  if (a.n_vars() != b.n_vars()) throw ContractError("model sum needs equal n_vars");
  std::map<std::pair<std::size_t, std::size_t>, double> sum;
  for (const auto& c : a.couplings_) sum[{c.i, c.j}] += c.g;
  for (const auto& c : b.couplings_) sum[{c.i, c.j}] += c.g;
  std::vector<Coupling> couplings;
  couplings.reserve(sum.size());
  for (const auto& [key, g] : sum) couplings.push_back({key.first, key.second, g});
  std::vector<double> fields(a.fields_);
  for (std::size_t i = 0; i < fields.size(); ++i) fields[i] += b.fields_[i];
  return IsingModel(a.n_vars(), std::move(couplings), std::move(fields), a.offset_ + b.offset_);
}

double energy(const IsingModel& model, const SpinConfig& config) {
  require_length(model, config);
  double h = 0.0;
  for (const auto& c : model.couplings()) h += c.g * config[c.i] * config[c.j];
  const auto& f = model.fields();
  for (std::size_t i = 0; i < f.size(); ++i) h += f[i] * config[i];
  return h;
}

double energy_with_offset(const IsingModel& model, const SpinConfig& config) {
  return energy(model, config) + model.offset();
}

double energy_matrix_form(const Eigen::MatrixXd& couplings, const Eigen::VectorXd& fields,
                          const SpinConfig& config) {
  if (static_cast<std::size_t>(fields.size()) != config.size() ||
      couplings.rows() != fields.size() || couplings.cols() != fields.size()) {
    throw ContractError("matrix form dimension mismatch");
  }
  Eigen::VectorXd s(fields.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = config[static_cast<std::size_t>(i)];
  return s.dot(couplings * s + 2.0 * fields) / 2.0;
}

double energy_matrix_form(const IsingModel& model, const SpinConfig& config) {
  require_length(model, config);
  return energy_matrix_form(model.dense_couplings(), model.field_vector(), config);
}

double flip_delta(const IsingModel& model, const SpinConfig& config, std::size_t index) {
  require_length(model, config);
  if (index >= model.n_vars()) throw ContractError("flip index out of range");
  double local = model.fields()[index];
  for (const auto& c : model.couplings()) {
    if (c.i == index) {
      local += c.g * config[c.j];
    } else if (c.j == index) {
      local += c.g * config[c.i];
    }
  }
  return -2.0 * config[index] * local;
}

SpinConfig ClampResult::restore(const SpinConfig& reduced) const {
  if (reduced.size() != index_map.size()) throw ContractError("reduced config length mismatch");
  std::vector<std::int8_t> full(index_map.size() + fixed.size(), 1);
  for (std::size_t r = 0; r < index_map.size(); ++r) {
    full[index_map[r]] = static_cast<std::int8_t>(reduced[r]);
  }
  for (const auto& [k, v] : fixed) full[k] = static_cast<std::int8_t>(v);
  return SpinConfig(std::move(full));
}

SpinConfig ClampResult::restrict(const SpinConfig& full) const {
  if (full.size() != index_map.size() + fixed.size()) {
    throw ContractError("full config length mismatch");
  }
  std::vector<std::int8_t> reduced;
  reduced.reserve(index_map.size());
  for (auto k : index_map) reduced.push_back(static_cast<std::int8_t>(full[k]));
  return SpinConfig(std::move(reduced));
}

ClampResult clamp_spins(const IsingModel& model, const std::map<std::size_t, int>& assignments) {
  const std::size_t n = model.n_vars();
  for (const auto& [k, v] : assignments) {
    if (k >= n) throw ContractError("clamp index " + std::to_string(k) + " out of range");
    require_spin(v);
  }
  if (assignments.size() >= n) throw ContractError("cannot clamp every spin");

  ClampResult out;
  out.fixed = assignments;
  std::vector<std::size_t> reduced_index(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!assignments.contains(i)) {
      reduced_index[i] = out.index_map.size();
      out.index_map.push_back(i);
    }
  }

  std::vector<double> fields(out.index_map.size());
  for (std::size_t r = 0; r < out.index_map.size(); ++r) fields[r] = model.fields()[out.index_map[r]];
  double constant = model.offset();
  for (const auto& [k, v] : assignments) constant += model.fields()[k] * v;

  std::vector<Coupling> couplings;
  for (const auto& c : model.couplings()) {
    const bool fi = reduced_index[c.i] == n;
    const bool fj = reduced_index[c.j] == n;
    if (!fi && !fj) {
      couplings.push_back({reduced_index[c.i], reduced_index[c.j], c.g});
    } else if (fi && fj) {
      constant += c.g * assignments.at(c.i) * assignments.at(c.j);
    } else if (fj) {
      fields[reduced_index[c.i]] += c.g * assignments.at(c.j);
    } else {
      fields[reduced_index[c.j]] += c.g * assignments.at(c.i);
    }
  }
  out.reduced_model =
      IsingModel(out.index_map.size(), std::move(couplings), std::move(fields), constant);
  return out;
}

}  // namespace isingmimo
