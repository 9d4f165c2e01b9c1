#include "scalerel/geodesic_sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "scalerel/error.hpp"

namespace scalerel {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt", "expected a positive number");
  if (n_steps < 1) throw ConfigError("n_steps", "expected an integer >= 1");
  if (!(D >= 0.0)) throw ConfigError("D", "expected a non-negative number");
  if (!(m > 0.0)) throw ConfigError("m", "expected a positive number");
  if (n_traj < 1) throw ConfigError("n_traj", "expected an integer >= 1");
  if (!(core_radius >= 0.0)) throw ConfigError("core_radius", "expected a non-negative number");
}

double SimConfig::regularization_radius() const { return 10.0 * std::sqrt(2.0 * D * dt); }

Vec3 dezael_drift(const Vec3& pos, double m, double p0, double sigma0, double core_radius) {
  const double rho2 = pos.x() * pos.x() + pos.y() * pos.y();
  if (rho2 <= core_radius * core_radius || rho2 == 0.0) {
    throw AxisSingularity("geodesic-sim/dezael_drift", "position inside the core radius");
  }
  const double s = sigma0 / m;
  return {-s * pos.y() / rho2, s * pos.x() / rho2, p0 / m};
}

Vec3 drift_velocity(const SimConfig& cfg, const Vec3& pos, double r_cap) {
  if (cfg.drift == DriftModel::uniform) return cfg.velocity;
  const double rho = std::hypot(pos.x(), pos.y());
  const double r = std::max(rho, r_cap);
  if (r == 0.0) {
    throw AxisSingularity("geodesic-sim/integrate_stochastic", "path reached the z axis");
  }
  const double s = cfg.sigma0 / (cfg.m * r * r);
  return {-s * pos.y(), s * pos.x(), cfg.p0 / cfg.m};
}

Trajectory integrate_deterministic(const SimConfig& cfg) {
  cfg.validate();
  auto f = [&](const Vec3& x) -> Vec3 {
    if (cfg.drift == DriftModel::uniform) return cfg.velocity;
    try {
      return dezael_drift(x, cfg.m, cfg.p0, cfg.sigma0, cfg.core_radius);
    } catch (const AxisSingularity&) {
      throw AxisSingularity("geodesic-sim/integrate_deterministic", "path entered the core radius");
    }
  };
  const auto n = static_cast<std::size_t>(cfg.n_steps);
  Trajectory tr;
  tr.times.resize(n + 1);
  tr.positions.resize(n + 1);
  tr.times[0] = 0.0;
  tr.positions[0] = cfg.x0;
  const double h = cfg.dt;
  Vec3 x = cfg.x0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 k1 = f(x);
    const Vec3 k2 = f(x + 0.5 * h * k1);
    const Vec3 k3 = f(x + 0.5 * h * k2);
    const Vec3 k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tr.times[i + 1] = static_cast<double>(i + 1) * h;
    tr.positions[i + 1] = x;
  }
  return tr;
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Trajectory integrate_stochastic(const SimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  auto draw = [&]() {
    if (cfg.noise == NoiseKind::rademacher) return coin(rng) ? 1.0 : -1.0;
    return gauss(rng);
  };

  const auto n = static_cast<std::size_t>(cfg.n_steps);
  const double amp = std::sqrt(2.0 * cfg.D * cfg.dt);
  const double cap = cfg.regularization_radius();
  Trajectory tr;
  tr.times.resize(n + 1);
  tr.positions.resize(n + 1);
  if (cfg.record_noise) tr.noise.resize(n);
  tr.times[0] = 0.0;
  tr.positions[0] = cfg.x0;
  Vec3 x = cfg.x0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 eta;
    eta.x() = draw();
    eta.y() = draw();
    eta.z() = draw();
    x += drift_velocity(cfg, x, cap) * cfg.dt + amp * eta;
    if (cfg.record_noise) tr.noise[i] = eta;
    tr.times[i + 1] = static_cast<double>(i + 1) * cfg.dt;
    tr.positions[i + 1] = x;
  }
  return tr;
}

std::vector<Vec3> fractal_increments(const Trajectory& traj, const SimConfig& cfg) {
  const double cap = cfg.regularization_radius();
  std::vector<Vec3> out;
  if (traj.size() < 2) return out;
  out.reserve(traj.size() - 1);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double dt = traj.times[i + 1] - traj.times[i];
    out.push_back(traj.positions[i + 1] - traj.positions[i] -
                  drift_velocity(cfg, traj.positions[i], cap) * dt);
  }
  return out;
}

Vec3 increment_variance(const std::vector<Vec3>& dxi, double dt) {
  if (dxi.empty()) throw InsufficientData("geodesic-sim/increment_variance", "no increments");
  Vec3 sum = Vec3::Zero();
  for (const auto& d : dxi) sum += d.cwiseProduct(d);
  return sum / (static_cast<double>(dxi.size()) * dt);
}

ScalingFit fit_scaling(std::vector<int> lags, std::vector<double> rms) {
  if (lags.size() != rms.size() || lags.size() < 2) {
    throw std::invalid_argument("fit_scaling: need at least two (lag, rms) pairs");
  }
  const double n = static_cast<double>(lags.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    const double lx = std::log(static_cast<double>(lags[i]));
    const double ly = std::log(rms[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_scaling: lags must differ");
  ScalingFit fit;
  fit.H = (n * sxy - sx * sy) / denom;
  fit.D_F = 1.0 / fit.H;
  fit.lags = std::move(lags);
  fit.rms = std::move(rms);
  return fit;
}

ScalingFit increment_scaling(const Trajectory& traj, const std::vector<int>& lags) {
  if (lags.size() < 2) throw std::invalid_argument("increment_scaling: need at least two lags");
  const int max_lag = *std::max_element(lags.begin(), lags.end());
  if (*std::min_element(lags.begin(), lags.end()) < 1) {
    throw std::invalid_argument("increment_scaling: lags must be >= 1");
  }
  const auto n = static_cast<long long>(traj.size());
  if (n - max_lag < 1000) {
    throw InsufficientData("geodesic-sim/increment_scaling",
                           "fewer than 1000 increments at lag " + std::to_string(max_lag));
  }
  std::vector<double> rms;
  rms.reserve(lags.size());
  for (int lag : lags) {
    double sum = 0.0;
    for (long long i = 0; i + lag < n; ++i) {
      sum += (traj.positions[static_cast<std::size_t>(i + lag)] -
              traj.positions[static_cast<std::size_t>(i)])
                 .squaredNorm();
    }
    rms.push_back(std::sqrt(sum / static_cast<double>(n - lag)));
  }
  return fit_scaling(lags, std::move(rms));
}

std::pair<Vec3, Vec3> two_sided_velocity(const Trajectory& traj, std::size_t index) {
  if (index == 0 || index + 1 >= traj.size()) {
    throw std::out_of_range("two_sided_velocity: index must be interior");
  }
  const auto& x = traj.positions;
  const auto& t = traj.times;
  const Vec3 plus = (x[index + 1] - x[index]) / (t[index + 1] - t[index]);
  const Vec3 minus = (x[index] - x[index - 1]) / (t[index] - t[index - 1]);
  return {plus, minus};
}

Vec3 two_sided_rms(const Trajectory& traj) {
  if (traj.size() < 3) throw InsufficientData("geodesic-sim/two_sided_rms", "path too short");
  Vec3 sum = Vec3::Zero();
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const auto [plus, minus] = two_sided_velocity(traj, i);
    const Vec3 d = plus - minus;
    sum += d.cwiseProduct(d);
  }
  return (sum / static_cast<double>(traj.size() - 2)).cwiseSqrt();
}

namespace {

double wrap_angle(double a) {
  while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

std::vector<double> lz_series(const Trajectory& traj, double m) {
  std::vector<double> out;
  if (traj.size() < 2) return out;
  out.reserve(traj.size() - 1);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const Vec3& a = traj.positions[i];
    const Vec3& b = traj.positions[i + 1];
    const double dphi = wrap_angle(std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x()));
    const double ra = std::hypot(a.x(), a.y());
    const double rb = std::hypot(b.x(), b.y());
    out.push_back(m * ra * rb * dphi / (traj.times[i + 1] - traj.times[i]));
  }
  return out;
}

std::vector<double> radius_series(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& p : traj.positions) out.push_back(std::hypot(p.x(), p.y()));
  return out;
}

double winding_number(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const Vec3& a = traj.positions[i];
    const Vec3& b = traj.positions[i + 1];
    total += wrap_angle(std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x()));
  }
  return total / (2.0 * std::numbers::pi);
}

namespace {

constexpr int kBlockSize = 32;

struct BlockSums {
  std::vector<Vec3> path;
  Vec3 final_sum = Vec3::Zero();
  Vec3 final_sq = Vec3::Zero();
  Vec3 xi_sq = Vec3::Zero();
  double xi_count = 0.0;
  std::vector<double> lag_sq;
  std::vector<double> lag_count;
  std::vector<double> lz;  // per-path mean L_z, in index order
};

BlockSums run_block(const SimConfig& cfg, const EnsembleOptions& opts, int first, int last) {
  BlockSums b;
  const auto n = static_cast<std::size_t>(cfg.n_steps);
  if (opts.keep_mean_path) b.path.assign(n + 1, Vec3::Zero());
  b.lag_sq.assign(opts.lags.size(), 0.0);
  b.lag_count.assign(opts.lags.size(), 0.0);
  SimConfig one = cfg;
  one.record_noise = false;
  for (int i = first; i < last; ++i) {
    one.seed = trajectory_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Trajectory tr = integrate_stochastic(one);
    if (opts.keep_mean_path) {
      for (std::size_t s = 0; s <= n; ++s) b.path[s] += tr.positions[s];
    }
    const Vec3 disp = tr.positions.back() - tr.positions.front();
    b.final_sum += disp;
    b.final_sq += disp.cwiseProduct(disp);
    for (const auto& d : fractal_increments(tr, one)) b.xi_sq += d.cwiseProduct(d);
    b.xi_count += static_cast<double>(n);
    for (std::size_t l = 0; l < opts.lags.size(); ++l) {
      const auto lag = static_cast<std::size_t>(opts.lags[l]);
      for (std::size_t s = 0; s + lag <= n; ++s) {
        b.lag_sq[l] += (tr.positions[s + lag] - tr.positions[s]).squaredNorm();
        b.lag_count[l] += 1.0;
      }
    }
    const auto lz = lz_series(tr, cfg.m);
    double sum = 0.0;
    for (double v : lz) sum += v;
    b.lz.push_back(sum / static_cast<double>(lz.size()));
  }
  return b;
}

void merge(BlockSums& into, const BlockSums& b) {
  for (std::size_t s = 0; s < into.path.size(); ++s) into.path[s] += b.path[s];
  into.final_sum += b.final_sum;
  into.final_sq += b.final_sq;
  into.xi_sq += b.xi_sq;
  into.xi_count += b.xi_count;
  for (std::size_t l = 0; l < into.lag_sq.size(); ++l) {
    into.lag_sq[l] += b.lag_sq[l];
    into.lag_count[l] += b.lag_count[l];
  }
  into.lz.insert(into.lz.end(), b.lz.begin(), b.lz.end());
}

}  // namespace

EnsembleStats ensemble_run(const SimConfig& cfg, const EnsembleOptions& opts) {
  cfg.validate();
  for (int lag : opts.lags) {
    if (lag < 1) throw std::invalid_argument("ensemble_run: lags must be >= 1");
  }
  const int n_blocks = (cfg.n_traj + kBlockSize - 1) / kBlockSize;
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_blocks));

  BlockSums total;
  if (opts.keep_mean_path) total.path.assign(static_cast<std::size_t>(cfg.n_steps) + 1, Vec3::Zero());
  total.lag_sq.assign(opts.lags.size(), 0.0);
  total.lag_count.assign(opts.lags.size(), 0.0);

  // Blocks finish in any order but are merged strictly in index order.
  std::atomic<int> next{0};
  std::mutex mu;
  std::map<int, BlockSums> pending;
  int merged = 0;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= n_blocks) return;
      BlockSums sums;
      try {
        sums = run_block(cfg, opts, b * kBlockSize, std::min(cfg.n_traj, (b + 1) * kBlockSize));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(n_blocks);
        return;
      }
      std::lock_guard lock(mu);
      pending.emplace(b, std::move(sums));
      while (!pending.empty() && pending.begin()->first == merged) {
        merge(total, pending.begin()->second);
        pending.erase(pending.begin());
        ++merged;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const double n = static_cast<double>(cfg.n_traj);
  EnsembleStats st;
  st.n_traj = cfg.n_traj;
  st.seed = cfg.seed;
  if (opts.keep_mean_path) {
    st.mean_path.reserve(total.path.size());
    for (const auto& p : total.path) st.mean_path.push_back(p / n);
  }
  st.mean_final_displacement = total.final_sum / n;
  const Vec3 var = total.final_sq / n - st.mean_final_displacement.cwiseProduct(st.mean_final_displacement);
  st.final_displacement_std = var.cwiseMax(0.0).cwiseSqrt();
  st.increment_var = total.xi_sq / (total.xi_count * cfg.dt);

  if (opts.lags.size() >= 2) {
    const auto largest = std::max_element(opts.lags.begin(), opts.lags.end()) - opts.lags.begin();
    if (total.lag_count[static_cast<std::size_t>(largest)] >= 1000.0) {
      std::vector<double> rms;
      for (std::size_t l = 0; l < opts.lags.size(); ++l) {
        rms.push_back(std::sqrt(total.lag_sq[l] / total.lag_count[l]));
      }
      st.scaling = fit_scaling(opts.lags, std::move(rms));
      st.scaling_available = true;
    }
  }

  double sum = 0.0;
  for (double v : total.lz) sum += v;
  st.Lz_mean = sum / n;
  double sq = 0.0;
  for (double v : total.lz) sq += (v - st.Lz_mean) * (v - st.Lz_mean);
  st.Lz_std = cfg.n_traj > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
  return st;
}

}  // namespace scalerel
