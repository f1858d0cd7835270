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

#include "isingmimo/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "isingmimo/pmis.hpp"
#include "isingmimo/rng.hpp"

namespace isingmimo {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::nanoseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

/// Square upper-triangular system equivalent to the least-squares problem,
/// ‖ỹ − Bx‖² = ‖z − Rx‖² + const.
struct Triangular {
  Eigen::MatrixXd r;
  Eigen::VectorXd z;
  bool regularized = false;
};

Triangular triangularize(const Eigen::MatrixXd& b, const Eigen::VectorXd& y, bool allow_ridge,
                         double ridge) {
  const Eigen::Index m = b.cols();
  auto factor = [m](const Eigen::MatrixXd& a, const Eigen::VectorXd& v) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Triangular t;
    t.r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    t.z = (qr.householderQ().transpose() * v).head(m);
    return t;
  };
  Triangular t = factor(b, y);
  const double tol = 1e-10 * std::max(1.0, t.r.cwiseAbs().maxCoeff());
  if (t.r.diagonal().cwiseAbs().minCoeff() > tol) return t;
  if (!allow_ridge) throw ContractError("channel is rank deficient");
  Eigen::MatrixXd a(b.rows() + m, m);
  a << b, std::sqrt(ridge) * Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd v(y.size() + m);
  v << y, Eigen::VectorXd::Zero(m);
  t = factor(a, v);
  t.regularized = true;
  return t;
}

/// (BᵀB)⁻¹Bᵀ, rejecting singular Gram matrices.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& b) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
  qr.setThreshold(1e-10);
  if (qr.rank() < b.cols()) throw ContractError("singular normal equations");
  return qr.solve(Eigen::MatrixXd::Identity(b.rows(), b.rows()));
}

}  // namespace

DetectorResult make_result(const DetectionInstance& instance, Eigen::VectorXcd symbols) {
  DetectorResult out;
  out.spins = symbols_to_spins(instance.constellation, symbols);
  out.objective = ml_objective(instance, symbols);
  out.symbols = std::move(symbols);
  return out;
}

DetectorResult brute_force_ml(const DetectionInstance& instance) {
  const auto start = Clock::now();
  const std::size_t n = instance.n_vars();
  if (n > 24) throw ContractError("brute-force search space exceeds 2^24");

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::int8_t> spins(n);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_index = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // Position 0 is the most significant digit; digit 0 means −1, so idx
    // order is lexicographic order on configurations.
    for (std::size_t i = 0; i < n; ++i) spins[i] = ((idx >> (n - 1 - i)) & 1U) ? 1 : -1;
    const Eigen::VectorXcd v = spins_to_symbols(instance.constellation, SpinConfig(spins));
    const double d = (instance.observation - instance.channel * v).squaredNorm();
    if (d < best) {
      best = d;
      best_index = idx;
    }
  }
  for (std::size_t i = 0; i < n; ++i) spins[i] = ((best_index >> (n - 1 - i)) & 1U) ? 1 : -1;
  DetectorResult out =
      make_result(instance, spins_to_symbols(instance.constellation, SpinConfig(spins)));
  out.leaves_visited = total;
  out.nodes_visited = total;
  out.latency = since(start);
  return out;
}

DetectorResult sphere_decode(const DetectionInstance& instance, const SphereDecoderOptions& options) {
  const auto start = Clock::now();
  const RealSystem sys = real_system(instance);
  const Triangular tri =
      triangularize(sys.channel, sys.observation, options.allow_regularization, options.ridge);
  const auto m = static_cast<std::size_t>(sys.channel.cols());
  const std::vector<int> alphabet = instance.constellation.axis_levels();

  std::vector<int> x(m, 0), best_x(m, 0);
  double radius = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0, leaves = 0;

  // Depth-first from the last row of R upwards; children in order of
  // increasing distance from the per-level centre (Schnorr-Euchner).
  auto search = [&](auto&& self, std::size_t level, double partial) -> void {
    const auto k = static_cast<Eigen::Index>(level);
    double interference = 0.0;
    for (std::size_t l = level + 1; l < m; ++l) {
      interference += tri.r(k, static_cast<Eigen::Index>(l)) * x[l];
    }
    const double rkk = tri.r(k, k);
    const double centre = (tri.z(k) - interference) / rkk;
    std::vector<int> order = alphabet;
    std::stable_sort(order.begin(), order.end(), [centre](int a, int b) {
      return std::abs(a - centre) < std::abs(b - centre);
    });
    for (int level_value : order) {
      const double e = rkk * (level_value - centre);
      const double d = partial + e * e;
      if (d >= radius) break;
      ++nodes;
      x[level] = level_value;
      if (level == 0) {
        ++leaves;
        radius = d;
        best_x = x;
      } else {
        self(self, level - 1, d);
      }
    }
  };
  search(search, m - 1, 0.0);

  DetectorResult out = make_result(instance, dims_to_symbols(instance, best_x));
  out.regularized = tri.regularized;
  out.nodes_visited = nodes;
  out.leaves_visited = leaves;
  out.latency = since(start);
  return out;
}

DetectorResult zero_forcing(const DetectionInstance& instance) {
  const auto start = Clock::now();
  const RealSystem sys = real_system(instance);
  const Eigen::VectorXd est = pseudo_inverse(sys.channel) * sys.observation;
  std::vector<int> levels(static_cast<std::size_t>(est.size()));
  for (Eigen::Index d = 0; d < est.size(); ++d) {
    levels[static_cast<std::size_t>(d)] = instance.constellation.quantize_axis(est(d));
  }
  DetectorResult out = make_result(instance, dims_to_symbols(instance, levels));
  out.latency = since(start);
  return out;
}

DetectorResult zf_sic(const DetectionInstance& instance) {
  const auto start = Clock::now();
  const RealSystem sys = real_system(instance);
  const std::size_t m = static_cast<std::size_t>(sys.channel.cols());
  std::vector<int> levels(m, 0);
  std::vector<std::size_t> remaining(m);
  std::iota(remaining.begin(), remaining.end(), 0);
  Eigen::VectorXd residual = sys.observation;

  while (!remaining.empty()) {
    Eigen::MatrixXd b(sys.channel.rows(), static_cast<Eigen::Index>(remaining.size()));
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      b.col(static_cast<Eigen::Index>(c)) = sys.channel.col(static_cast<Eigen::Index>(remaining[c]));
    }
    const Eigen::MatrixXd pinv = pseudo_inverse(b);

    // Post-equalization noise of a user is the squared norm of its rows.
    std::vector<double> noise(instance.n_users, 0.0);
    std::vector<bool> present(instance.n_users, false);
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      const std::size_t u = sys.user_of_dim[remaining[c]];
      noise[u] += pinv.row(static_cast<Eigen::Index>(c)).squaredNorm();
      present[u] = true;
    }
    std::size_t pick = instance.n_users;
    for (std::size_t u = 0; u < instance.n_users; ++u) {
      if (present[u] && (pick == instance.n_users || noise[u] < noise[pick])) pick = u;
    }

    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < remaining.size(); ++c) {
      const std::size_t dim = remaining[c];
      if (sys.user_of_dim[dim] != pick) {
        kept.push_back(dim);
        continue;
      }
      const double est = pinv.row(static_cast<Eigen::Index>(c)).dot(residual);
      levels[dim] = instance.constellation.quantize_axis(est);
      residual -= sys.channel.col(static_cast<Eigen::Index>(dim)) * levels[dim];
    }
    remaining = std::move(kept);
  }

  DetectorResult out = make_result(instance, dims_to_symbols(instance, levels));
  out.latency = since(start);
  return out;
}

DetectorResult fcsd(const DetectionInstance& instance, std::size_t n_fs) {
  const auto start = Clock::now();
  if (n_fs > instance.n_users) throw ContractError("n_fs exceeds the number of users");
  const std::size_t axes = instance.constellation.axes();
  if (static_cast<double>(n_fs * axes * instance.constellation.spins_per_axis()) > 24) {
    throw ContractError("full-search candidate count exceeds 2^24");
  }
  const RealSystem sys = real_system(instance);
  const std::size_t nt = instance.n_users;

  // Worst streams (largest pseudo-inverse row norm) are detected first.
  const Eigen::MatrixXd pinv = pseudo_inverse(sys.channel);
  std::vector<double> noise(nt, 0.0);
  for (Eigen::Index d = 0; d < pinv.rows(); ++d) {
    noise[sys.user_of_dim[static_cast<std::size_t>(d)]] += pinv.row(d).squaredNorm();
  }
  std::vector<std::size_t> order(nt);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return noise[a] > noise[b]; });

  // Column layout: last detected user first, so the tree root (last column
  // of R) is order[0]. Each user contributes its real, then imaginary dim.
  std::vector<std::size_t> dims;  // tree column -> real dimension
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (std::size_t a = 0; a < axes; ++a) dims.push_back(a * nt + *it);
  }
  const std::size_t m = dims.size();
  Eigen::MatrixXd b(sys.channel.rows(), static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < m; ++c) {
    b.col(static_cast<Eigen::Index>(c)) = sys.channel.col(static_cast<Eigen::Index>(dims[c]));
  }
  const Triangular tri = triangularize(b, sys.observation, true, 1e-9);

  const std::vector<int> alphabet = instance.constellation.axis_levels();
  const std::size_t fs_levels = n_fs * axes;  // tree columns m-1 .. m-fs_levels
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < fs_levels; ++i) candidates *= alphabet.size();

  std::vector<int> x(m, 0), best_x(m, 0);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t cand = 0; cand < candidates; ++cand) {
    std::uint64_t digits = cand;
    double dist = 0.0;
    for (std::size_t level = m; level-- > 0;) {
      const auto k = static_cast<Eigen::Index>(level);
      double interference = 0.0;
      for (std::size_t l = level + 1; l < m; ++l) {
        interference += tri.r(k, static_cast<Eigen::Index>(l)) * x[l];
      }
      const double centre = (tri.z(k) - interference) / tri.r(k, k);
      if (m - 1 - level < fs_levels) {
        x[level] = alphabet[digits % alphabet.size()];
        digits /= alphabet.size();
      } else {
        x[level] = instance.constellation.quantize_axis(centre);
      }
      const double e = tri.r(k, k) * (x[level] - centre);
      dist += e * e;
    }
    if (dist < best) {
      best = dist;
      best_x = x;
    }
  }

  std::vector<int> levels(m, 0);
  for (std::size_t c = 0; c < m; ++c) levels[dims[c]] = best_x[c];
  DetectorResult out = make_result(instance, dims_to_symbols(instance, levels));
  out.leaves_visited = candidates;
  out.regularized = tri.regularized;
  out.latency = since(start);
  return out;
}

AnnealResult sa_run(const IsingModel& model, const AnnealParams& params) {
  if (params.n_sweeps < 1) throw ContractError("n_sweeps must be >= 1");
  if (!(params.t_end > 0.0) || !(params.t_start >= params.t_end)) {
    throw ContractError("annealing needs t_start >= t_end > 0");
  }
  const auto start = Clock::now();
  const DenseModel dense(model);
  const double unit = params.normalize ? dense.scale() : 1.0;
  Xoshiro256 rng(params.seed);
  std::vector<std::int8_t> init(model.n_vars());
  for (auto& s : init) s = rng.coin() ? 1 : -1;
  MetropolisChain chain(dense, SpinConfig(std::move(init)));

  SpinConfig best = chain.config();
  double best_energy = chain.energy();
  const double ratio = params.t_end / params.t_start;
  for (int k = 0; k < params.n_sweeps; ++k) {
    const double t = params.n_sweeps == 1
                         ? params.t_end
                         : params.t_start * std::pow(ratio, static_cast<double>(k) / (params.n_sweeps - 1));
    chain.sweep(1.0 / (t * unit), rng, [&](double e) {
      if (e < best_energy) {
        best_energy = e;
        best = chain.config();
      }
    });
  }
  AnnealResult out;
  out.energy = energy(model, best);
  out.config = std::move(best);
  out.latency = since(start);
  return out;
}

}  // namespace isingmimo
