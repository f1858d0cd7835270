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

// Independent reference computations shared by the test binaries. Nothing
// here calls into the library's energy or reduction code.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "isingmimo/ising.hpp"
#include "isingmimo/mimo.hpp"

namespace oracle {

/// Raw coefficients kept alongside the model so energies can be recomputed
/// without going through the library.
struct RawModel {
  std::size_t n = 0;
  std::vector<std::vector<double>> g;  // upper triangle used, i < j
  std::vector<double> f;
  double c = 0.0;

  isingmimo::IsingModel model() const {
    std::vector<isingmimo::Coupling> cs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (g[i][j] != 0.0) cs.push_back({i, j, g[i][j]});
      }
    }
    return isingmimo::IsingModel(n, cs, f, c);
  }

  double energy(const std::vector<int>& s) const {
    double pairs = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += f[i] * s[i];
      for (std::size_t j = i + 1; j < n; ++j) pairs += g[i][j] * s[i] * s[j];
    }
    return pairs + lin;
  }
};

inline RawModel random_model(std::size_t n, std::mt19937_64& rng, double density = 1.0,
                             bool with_fields = true) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::bernoulli_distribution keep(density);
  RawModel m;
  m.n = n;
  m.g.assign(n, std::vector<double>(n, 0.0));
  m.f.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (with_fields) m.f[i] = coef(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (keep(rng)) m.g[i][j] = coef(rng);
    }
  }
  m.c = coef(rng);
  return m;
}

/// Spin vector for the k-th configuration: bit t of k set means s_t = +1.
inline std::vector<int> config_of(std::uint64_t k, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t t = 0; t < n; ++t) s[t] = (k >> t) & 1 ? 1 : -1;
  return s;
}

inline isingmimo::SpinConfig to_config(const std::vector<int>& s) {
  std::vector<std::int8_t> v(s.begin(), s.end());
  return isingmimo::SpinConfig(std::move(v));
}

inline std::vector<int> random_spins(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s(n);
  for (auto& x : s) x = coin(rng) ? 1 : -1;
  return s;
}

/// Axis weights per modulation, written out by hand.
inline std::vector<int> axis_weights(isingmimo::Modulation m) {
  switch (m) {
    case isingmimo::Modulation::BPSK: return {1};
    case isingmimo::Modulation::QPSK: return {1};
    case isingmimo::Modulation::QAM16: return {2, 1};
    case isingmimo::Modulation::QAM64: return {4, 2, 1};
  }
  return {};
}

/// Symbols for a spin vector: per user, real-axis spins then imaginary-axis
/// spins, most significant first.
inline Eigen::VectorXcd symbols_of(isingmimo::Modulation m, std::size_t n_users,
                                   const std::vector<int>& s) {
  const auto w = axis_weights(m);
  const bool complex_axes = m != isingmimo::Modulation::BPSK;
  const std::size_t per_user = w.size() * (complex_axes ? 2 : 1);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n_users));
  for (std::size_t u = 0; u < n_users; ++u) {
    double re = 0.0, im = 0.0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      re += w[t] * s[u * per_user + t];
      if (complex_axes) im += w[t] * s[u * per_user + w.size() + t];
    }
    v[static_cast<Eigen::Index>(u)] = {re, im};
  }
  return v;
}

/// ‖y − Hv‖² accumulated entry by entry.
inline double residual(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y,
                       const Eigen::VectorXcd& v) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    std::complex<double> acc = y[r];
    for (Eigen::Index c = 0; c < h.cols(); ++c) acc -= h(r, c) * v[c];
    total += std::norm(acc);
  }
  return total;
}

}  // namespace oracle
