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

#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "isingmimo/ising.hpp"

namespace isingmimo {

enum class Modulation { BPSK, QPSK, QAM16, QAM64 };

/// Square QAM family on the raw odd-integer grid. Each axis value is a
/// weighted sum of spins, e.g. 16-QAM uses 2·s_a + s_b per axis, so the
/// symbol of user n is (2s_{4n-3} + s_{4n-2}) + j(2s_{4n-1} + s_{4n}).
class Constellation {
 public:
  constexpr Constellation() = default;
  constexpr explicit Constellation(Modulation kind) : kind_(kind) {}

  static Constellation parse(std::string_view name);

  Modulation kind() const noexcept { return kind_; }
  std::string name() const;
  bool experimental() const noexcept { return kind_ == Modulation::QAM64; }

  /// log2 |O|.
  std::size_t bits_per_symbol() const noexcept;
  /// Spins per real axis (b/2; 1 for BPSK).
  std::size_t spins_per_axis() const noexcept;
  /// 2 for complex constellations, 1 for BPSK (real axis only).
  std::size_t axes() const noexcept { return kind_ == Modulation::BPSK ? 1 : 2; }
  /// Spin weights of one axis, most significant first: {1}, {2,1}, {4,2,1}.
  std::vector<int> axis_coefficients() const;
  /// Odd integer levels of one axis in ascending order.
  std::vector<int> axis_levels() const;
  /// Number of points |O|.
  std::size_t size() const noexcept { return std::size_t{1} << bits_per_symbol(); }
  /// Mean of |v|² over the alphabet: 1, 2, 10, 42.
  double average_energy() const noexcept;

  /// Nearest axis level; exact midpoints resolve toward the smaller level.
  int quantize_axis(double x) const noexcept;
  /// Spins of one axis value, most significant first.
  std::vector<int> axis_spins(int level) const;
  bool is_axis_level(double x) const noexcept;

  bool operator==(const Constellation&) const = default;

 private:
  Modulation kind_ = Modulation::BPSK;
};

/// Noise-free sentinel for generate_instance.
inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

struct DetectionInstance {
  std::size_t n_users = 0;
  std::size_t n_rx = 0;
  Constellation constellation;
  Eigen::MatrixXcd channel;        // n_rx × n_users
  Eigen::VectorXcd observation;    // n_rx
  SpinConfig truth_spins;          // n_users · b
  double snr_db = kNoiseFree;
  std::uint64_t seed = 0;

  std::size_t n_vars() const noexcept { return n_users * constellation.bits_per_symbol(); }
};

/// i.i.d. CN(0,1) channel, uniform spins, AWGN with per-complex-dimension
/// variance σ² = N_t·E_s / SNR. Pure function of its arguments.
DetectionInstance generate_instance(std::size_t n_users, std::size_t n_rx,
                                    Constellation constellation, double snr_db,
                                    std::uint64_t seed);

/// Same as generate_instance but with a given channel (e.g. from a trace).
DetectionInstance instance_from_channel(const Eigen::MatrixXcd& channel,
                                        Constellation constellation, double snr_db,
                                        std::uint64_t seed);

/// Reads a channel trace {"n_rx", "n_users", "entries": [[re, im], ...]}
/// (row-major) and returns the rows/columns selected by the 0-based subsets.
/// An empty subset selects everything.
Eigen::MatrixXcd load_trace_channel(const std::filesystem::path& path,
                                    std::span<const std::size_t> rx_subset = {},
                                    std::span<const std::size_t> user_subset = {});
void write_trace_channel(const std::filesystem::path& path, const Eigen::MatrixXcd& channel);

/// Spin-to-symbol transform T: stacked [Re v; Im v] = T·s. 2N_t × N_V.
Eigen::MatrixXd spin_symbol_transform(Constellation constellation, std::size_t n_users);

Eigen::VectorXcd spins_to_symbols(Constellation constellation, const SpinConfig& config);
/// Inverse of spins_to_symbols; every symbol must be an alphabet point.
SpinConfig symbols_to_spins(Constellation constellation, const Eigen::VectorXcd& symbols);

/// D(v) = ‖y − Hv‖². Symbols must lie in the alphabet.
double ml_objective(const DetectionInstance& instance, const Eigen::VectorXcd& symbols);

/// Exact reduction: energy(model, s) + model.offset() == ml_objective(instance,
/// spins_to_symbols(s)) for every s.
IsingModel ml_to_ising(const DetectionInstance& instance);

/// s = +1 -> 1, s = -1 -> 0.
std::vector<std::uint8_t> spins_to_bits(const SpinConfig& config);
SpinConfig bits_to_spins(std::span<const std::uint8_t> bits);

/// Real-valued view used by the classical detectors: observation ỹ and the
/// channel restricted to the real dimensions that carry data (N_t for BPSK,
/// 2N_t otherwise; real parts first, then imaginary parts).
struct RealSystem {
  Eigen::MatrixXd channel;
  Eigen::VectorXd observation;
  /// Owning user of each real dimension.
  std::vector<std::size_t> user_of_dim;
};

RealSystem real_system(const DetectionInstance& instance);
/// Maps real-dimension levels back to complex symbols.
Eigen::VectorXcd dims_to_symbols(const DetectionInstance& instance, std::span<const int> levels);

}  // namespace isingmimo
