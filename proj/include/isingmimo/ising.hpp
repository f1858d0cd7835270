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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isingmimo {

/// Raised when a caller breaks an operation's preconditions (dimension
/// mismatch, out-of-range index, malformed input).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A ±1 assignment to every spin of a model. Indices are 0-based in the C++
/// API; serialized forms use 1-based indices.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> spins);
  SpinConfig(std::initializer_list<int> spins);

  /// All spins set to `value` (must be ±1).
  static SpinConfig filled(std::size_t n, int value);

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  std::span<const std::int8_t> spins() const noexcept { return spins_; }

  void flip(std::size_t i) noexcept { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  void set(std::size_t i, int value);

  /// Number of positions where the two configurations differ.
  std::size_t hamming_distance(const SpinConfig& other) const;

  bool operator==(const SpinConfig&) const = default;
  /// Lexicographic, with −1 ordered before +1.
  std::strong_ordering operator<=>(const SpinConfig& other) const {
    return spins_ <=> other.spins_;
  }

 private:
  std::vector<std::int8_t> spins_;
};

struct Coupling {
  std::size_t i;
  std::size_t j;
  double g;

  bool operator==(const Coupling&) const = default;
};

/// Ising energy landscape H(s) = Σ_{i<j} g_ij s_i s_j + Σ_i f_i s_i, plus a
/// constant offset so that H(s) + offset reproduces the objective the model
/// was reduced from.
///
/// Couplings are stored canonically: i < j, sorted by (i, j), no duplicates,
/// zero couplings kept only if given explicitly.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(std::size_t n_vars, std::vector<Coupling> couplings,
             std::vector<double> fields, double offset = 0.0);

  std::size_t n_vars() const noexcept { return fields_.size(); }
  const std::vector<Coupling>& couplings() const noexcept { return couplings_; }
  const std::vector<double>& fields() const noexcept { return fields_; }
  double offset() const noexcept { return offset_; }

  /// Coupling between i and j in either order; 0 when absent.
  double coupling(std::size_t i, std::size_t j) const;

  /// Symmetric dense coupling matrix with zero diagonal.
  Eigen::MatrixXd dense_couplings() const;
  Eigen::VectorXd field_vector() const;

  /// Largest absolute coefficient among couplings and fields (0 for an
  /// empty model).
  double max_abs_coefficient() const noexcept;

  /// Coefficient-wise sum of two models over the same variables.
  friend IsingModel operator+(const IsingModel& a, const IsingModel& b);

  bool operator==(const IsingModel&) const = default;

 private:
  std::vector<Coupling> couplings_;
  std::vector<double> fields_;
  double offset_ = 0.0;
};

/// Direct term-by-term evaluation. Excludes the offset.
double energy(const IsingModel& model, const SpinConfig& config);
double energy_with_offset(const IsingModel& model, const SpinConfig& config);

/// H(s) = s·(G·s + 2f)/2 with dense symmetric G.
double energy_matrix_form(const IsingModel& model, const SpinConfig& config);
double energy_matrix_form(const Eigen::MatrixXd& couplings, const Eigen::VectorXd& fields,
                          const SpinConfig& config);

/// Energy change caused by flipping spin `index`: −2 s_i (f_i + Σ_j g_ij s_j).
double flip_delta(const IsingModel& model, const SpinConfig& config, std::size_t index);

struct ClampResult {
  IsingModel reduced_model;
  /// reduced index -> original index, strictly increasing.
  std::vector<std::size_t> index_map;
  /// original index -> clamped value.
  std::map<std::size_t, int> fixed;

  /// Rebuilds a full-length configuration from a reduced one.
  SpinConfig restore(const SpinConfig& reduced) const;
  /// Projects a full configuration onto the free variables.
  SpinConfig restrict(const SpinConfig& full) const;
};

/// Fixes the given spins and folds their contributions into the remaining
/// fields (f'_i = f_i + g_ik s_k) and the offset. For every full config s
/// consistent with the assignment:
///   energy_with_offset(model, s) == energy_with_offset(reduced, restrict(s)).
ClampResult clamp_spins(const IsingModel& model, const std::map<std::size_t, int>& assignments);

}  // namespace isingmimo
