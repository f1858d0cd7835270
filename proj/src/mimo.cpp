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

#include "isingmimo/mimo.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "isingmimo/rng.hpp"

namespace isingmimo {

Constellation Constellation::parse(std::string_view name) {
  if (name == "bpsk" || name == "BPSK") return Constellation(Modulation::BPSK);
  if (name == "qpsk" || name == "QPSK") return Constellation(Modulation::QPSK);
  if (name == "16qam" || name == "qam16" || name == "16-QAM") return Constellation(Modulation::QAM16);
  if (name == "64qam" || name == "qam64" || name == "64-QAM") return Constellation(Modulation::QAM64);
  throw ContractError("unknown constellation '" + std::string(name) + "'");
}

std::string Constellation::name() const {
  switch (kind_) {
    case Modulation::BPSK: return "bpsk";
    case Modulation::QPSK: return "qpsk";
    case Modulation::QAM16: return "16qam";
    case Modulation::QAM64: return "64qam";
  }
  return "?";
}

std::size_t Constellation::bits_per_symbol() const noexcept {
  switch (kind_) {
    case Modulation::BPSK: return 1;
    case Modulation::QPSK: return 2;
    case Modulation::QAM16: return 4;
    case Modulation::QAM64: return 6;
  }
  return 0;
}

std::size_t Constellation::spins_per_axis() const noexcept {
  return kind_ == Modulation::BPSK ? 1 : bits_per_symbol() / 2;
}

std::vector<int> Constellation::axis_coefficients() const {
  std::vector<int> c;
  for (std::size_t k = spins_per_axis(); k-- > 0;) c.push_back(1 << k);
  return c;
}

std::vector<int> Constellation::axis_levels() const {
  const int top = (1 << spins_per_axis()) - 1;
  std::vector<int> levels;
  for (int x = -top; x <= top; x += 2) levels.push_back(x);
  return levels;
}

double Constellation::average_energy() const noexcept {
  // Per axis mean of x² over {±1, ±3, ..., ±(L-1)} is (L² - 1)/3.
  const double l = static_cast<double>(1 << spins_per_axis());
  return static_cast<double>(axes()) * (l * l - 1.0) / 3.0;
}

int Constellation::quantize_axis(double x) const noexcept {
  const int top = (1 << spins_per_axis()) - 1;
  if (!(x > -top)) return -top;
  if (!(x < top)) return top;
  const double k = std::ceil((x - 1.0) / 2.0 - 0.5);
  return 2 * static_cast<int>(k) + 1;
}

std::vector<int> Constellation::axis_spins(int level) const {
  if (!is_axis_level(level)) {
    throw ContractError("value " + std::to_string(level) + " is not a " + name() + " axis level");
  }
  std::vector<int> spins;
  int rest = level;
  for (int c : axis_coefficients()) {
    const int s = rest > 0 ? 1 : -1;
    spins.push_back(s);
    rest -= c * s;
  }
  return spins;
}

bool Constellation::is_axis_level(double x) const noexcept {
  const int top = (1 << spins_per_axis()) - 1;
  if (x != std::floor(x) || x < -top || x > top) return false;
  return static_cast<long>(x) % 2 != 0;
}

namespace {

std::complex<double> draw_cn(std::normal_distribution<double>& normal, Xoshiro256& rng,
                             double variance) {
  const double sd = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {sd * re, sd * im};
}

DetectionInstance complete_instance(Eigen::MatrixXcd channel, Constellation constellation,
                                    double snr_db, std::uint64_t seed, Xoshiro256& rng) {
  if (channel.cols() < 1 || channel.rows() < channel.cols()) {
    throw ContractError("channel must have n_rx >= n_users >= 1");
  }
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw ContractError("snr_db must be finite or +inf (noise-free)");
  }
  DetectionInstance inst;
  inst.n_users = static_cast<std::size_t>(channel.cols());
  inst.n_rx = static_cast<std::size_t>(channel.rows());
  inst.constellation = constellation;
  inst.snr_db = snr_db;
  inst.seed = seed;

  std::vector<std::int8_t> spins(inst.n_vars());
  for (auto& s : spins) s = rng.coin() ? 1 : -1;
  inst.truth_spins = SpinConfig(std::move(spins));

  inst.observation = channel * spins_to_symbols(constellation, inst.truth_spins);
  if (std::isfinite(snr_db)) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double sigma2 =
        static_cast<double>(inst.n_users) * constellation.average_energy() / snr;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index r = 0; r < inst.observation.size(); ++r) {
      inst.observation(r) += draw_cn(normal, rng, sigma2);
    }
  }
  inst.channel = std::move(channel);
  return inst;
}

}  // namespace

DetectionInstance generate_instance(std::size_t n_users, std::size_t n_rx,
                                    Constellation constellation, double snr_db,
                                    std::uint64_t seed) {
  if (n_users < 1 || n_rx < n_users) throw ContractError("need n_rx >= n_users >= 1");
  Xoshiro256 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(n_rx), static_cast<Eigen::Index>(n_users));
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) h(r, c) = draw_cn(normal, rng, 1.0);
  }
  return complete_instance(std::move(h), constellation, snr_db, seed, rng);
}

DetectionInstance instance_from_channel(const Eigen::MatrixXcd& channel,
                                        Constellation constellation, double snr_db,
                                        std::uint64_t seed) {
  if (!channel.allFinite()) throw ContractError("channel has non-finite entries");
  Xoshiro256 rng(seed);
  return complete_instance(channel, constellation, snr_db, seed, rng);
}

Eigen::MatrixXcd load_trace_channel(const std::filesystem::path& path,
                                    std::span<const std::size_t> rx_subset,
                                    std::span<const std::size_t> user_subset) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open trace file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("trace parse failure: " + std::string(e.what()));
  }
  std::size_t n_rx = 0, n_users = 0;
  std::vector<std::complex<double>> entries;
  try {
    n_rx = doc.at("n_rx").get<std::size_t>();
    n_users = doc.at("n_users").get<std::size_t>();
    for (const auto& e : doc.at("entries")) {
      if (!e.is_array() || e.size() != 2) throw ContractError("trace entry must be [re, im]");
      if (e[0].is_null() || e[1].is_null()) throw ContractError("trace has non-finite entries");
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractError("malformed trace: " + std::string(e.what()));
  }
  if (entries.size() != n_rx * n_users) {
    throw ContractError("trace has " + std::to_string(entries.size()) + " entries, expected " +
                        std::to_string(n_rx * n_users));
  }

  std::vector<std::size_t> rows(rx_subset.begin(), rx_subset.end());
  std::vector<std::size_t> cols(user_subset.begin(), user_subset.end());
  if (rows.empty()) for (std::size_t r = 0; r < n_rx; ++r) rows.push_back(r);
  if (cols.empty()) for (std::size_t c = 0; c < n_users; ++c) cols.push_back(c);

  Eigen::MatrixXcd h(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= n_rx) throw ContractError("rx index " + std::to_string(rows[r]) + " out of range");
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c] >= n_users) {
        throw ContractError("user index " + std::to_string(cols[c]) + " out of range");
      }
      const auto v = entries[rows[r] * n_users + cols[c]];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ContractError("trace has non-finite entries");
      }
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return h;
}

void write_trace_channel(const std::filesystem::path& path, const Eigen::MatrixXcd& channel) {
  nlohmann::json doc;
  doc["n_rx"] = channel.rows();
  doc["n_users"] = channel.cols();
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < channel.rows(); ++r) {
    for (Eigen::Index c = 0; c < channel.cols(); ++c) {
      entries.push_back({channel(r, c).real(), channel(r, c).imag()});
    }
  }
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write trace file " + path.string());
  out << doc.dump() << '\n';
}

Eigen::MatrixXd spin_symbol_transform(Constellation constellation, std::size_t n_users) {
  const auto coeffs = constellation.axis_coefficients();
  const std::size_t per_axis = coeffs.size();
  const std::size_t b = constellation.bits_per_symbol();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * n_users),
                                            static_cast<Eigen::Index>(n_users * b));
  for (std::size_t n = 0; n < n_users; ++n) {
    for (std::size_t axis = 0; axis < constellation.axes(); ++axis) {
      const auto row = static_cast<Eigen::Index>(axis * n_users + n);
      for (std::size_t k = 0; k < per_axis; ++k) {
        const auto col = static_cast<Eigen::Index>(n * b + axis * per_axis + k);
        t(row, col) = coeffs[k];
      }
    }
  }
  return t;
}

Eigen::VectorXcd spins_to_symbols(Constellation constellation, const SpinConfig& config) {
  const std::size_t b = constellation.bits_per_symbol();
  if (config.size() == 0 || config.size() % b != 0) {
    throw ContractError("config length " + std::to_string(config.size()) +
                        " is not a multiple of " + std::to_string(b));
  }
  const auto coeffs = constellation.axis_coefficients();
  const std::size_t n_users = config.size() / b;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n_users));
  for (std::size_t n = 0; n < n_users; ++n) {
    double axis_value[2] = {0.0, 0.0};
    for (std::size_t axis = 0; axis < constellation.axes(); ++axis) {
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        axis_value[axis] += coeffs[k] * config[n * b + axis * coeffs.size() + k];
      }
    }
    v(static_cast<Eigen::Index>(n)) = {axis_value[0], axis_value[1]};
  }
  return v;
}

SpinConfig symbols_to_spins(Constellation constellation, const Eigen::VectorXcd& symbols) {
  std::vector<std::int8_t> spins;
  spins.reserve(static_cast<std::size_t>(symbols.size()) * constellation.bits_per_symbol());
  for (Eigen::Index n = 0; n < symbols.size(); ++n) {
    const double parts[2] = {symbols(n).real(), symbols(n).imag()};
    if (constellation.axes() == 1 && parts[1] != 0.0) {
      throw ContractError("BPSK symbol with non-zero imaginary part");
    }
    for (std::size_t axis = 0; axis < constellation.axes(); ++axis) {
      if (!constellation.is_axis_level(parts[axis])) {
        throw ContractError("symbol is not in the " + constellation.name() + " alphabet");
      }
      for (int s : constellation.axis_spins(static_cast<int>(parts[axis]))) {
        spins.push_back(static_cast<std::int8_t>(s));
      }
    }
  }
  return SpinConfig(std::move(spins));
}

double ml_objective(const DetectionInstance& instance, const Eigen::VectorXcd& symbols) {
  if (static_cast<std::size_t>(symbols.size()) != instance.n_users) {
    throw ContractError("symbol vector length mismatch");
  }
  const auto& c = instance.constellation;
  for (Eigen::Index n = 0; n < symbols.size(); ++n) {
    const bool ok = c.is_axis_level(symbols(n).real()) &&
                    (c.axes() == 1 ? symbols(n).imag() == 0.0 : c.is_axis_level(symbols(n).imag()));
    if (!ok) throw ContractError("symbol is off the " + c.name() + " alphabet");
  }
  return (instance.observation - instance.channel * symbols).squaredNorm();
}

IsingModel ml_to_ising(const DetectionInstance& instance) {
  const Eigen::Index nr = static_cast<Eigen::Index>(instance.n_rx);
  const Eigen::Index nt = static_cast<Eigen::Index>(instance.n_users);
  const Eigen::MatrixXd hr = instance.channel.real();
  const Eigen::MatrixXd hi = instance.channel.imag();

  Eigen::MatrixXd h(2 * nr, 2 * nt);
  h << hr, -hi, hi, hr;
  Eigen::VectorXd y(2 * nr);
  y << instance.observation.real(), instance.observation.imag();

  const Eigen::MatrixXd ht = h * spin_symbol_transform(instance.constellation, instance.n_users);
  const Eigen::MatrixXd a = ht.transpose() * ht;
  const Eigen::VectorXd b = ht.transpose() * y;

  const std::size_t n = instance.n_vars();
  std::vector<Coupling> couplings;
  couplings.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      couplings.push_back({i, j, 2.0 * a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  std::vector<double> fields(n);
  for (std::size_t i = 0; i < n; ++i) fields[i] = -2.0 * b(static_cast<Eigen::Index>(i));
  const double offset = y.squaredNorm() + a.trace();
  return IsingModel(n, std::move(couplings), std::move(fields), offset);
}

std::vector<std::uint8_t> spins_to_bits(const SpinConfig& config) {
  std::vector<std::uint8_t> bits(config.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = config[i] > 0 ? 1 : 0;
  return bits;
}

SpinConfig bits_to_spins(std::span<const std::uint8_t> bits) {
  std::vector<std::int8_t> spins(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw ContractError("bit value must be 0 or 1");
    spins[i] = bits[i] ? 1 : -1;
  }
  return SpinConfig(std::move(spins));
}

RealSystem real_system(const DetectionInstance& instance) {
  const Eigen::Index nr = static_cast<Eigen::Index>(instance.n_rx);
  const Eigen::Index nt = static_cast<Eigen::Index>(instance.n_users);
  const Eigen::MatrixXd hr = instance.channel.real();
  const Eigen::MatrixXd hi = instance.channel.imag();
  RealSystem sys;
  sys.observation.resize(2 * nr);
  sys.observation << instance.observation.real(), instance.observation.imag();
  if (instance.constellation.axes() == 1) {
    sys.channel.resize(2 * nr, nt);
    sys.channel << hr, hi;
  } else {
    sys.channel.resize(2 * nr, 2 * nt);
    sys.channel << hr, -hi, hi, hr;
  }
  for (std::size_t axis = 0; axis < instance.constellation.axes(); ++axis) {
    for (std::size_t n = 0; n < instance.n_users; ++n) sys.user_of_dim.push_back(n);
  }
  return sys;
}

Eigen::VectorXcd dims_to_symbols(const DetectionInstance& instance, std::span<const int> levels) {
  const std::size_t nt = instance.n_users;
  if (levels.size() != nt * instance.constellation.axes()) {
    throw ContractError("level vector length mismatch");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(nt));
  for (std::size_t n = 0; n < nt; ++n) {
    const double im = instance.constellation.axes() == 2 ? levels[nt + n] : 0.0;
    v(static_cast<Eigen::Index>(n)) = {static_cast<double>(levels[n]), im};
  }
  return v;
}

}  // namespace isingmimo
