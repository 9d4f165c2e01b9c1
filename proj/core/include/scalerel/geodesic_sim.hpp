#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "scalerel/quaternion.hpp"

namespace scalerel {

enum class DriftModel {
  dezael,   // spiral drift (-sigma0 y / r^2, sigma0 x / r^2, p0) / m
  uniform,  // constant velocity
};

enum class NoiseKind {
  normal,      // standard normal per component
  rademacher,  // +-1 with equal probability
};

struct SimConfig {
  double D = 0.05;
  double dt = 0.01;
  int n_steps = 1000;
  std::uint64_t seed = 1;
  double m = 1.0;
  double p0 = 1.0;
  double sigma0 = 0.5;
  Vec3 x0 = Vec3(1.0, 0.0, 0.0);
  int n_traj = 1;

  DriftModel drift = DriftModel::dezael;
  Vec3 velocity = Vec3::Zero();  // uniform drift only
  NoiseKind noise = NoiseKind::normal;
  // Deterministic runs: AxisSingularity once r <= core_radius.
  double core_radius = 0.0;
  // Keep the injected eta of every step in Trajectory::noise.
  bool record_noise = false;

  /// Throws ConfigError on dt <= 0, n_steps < 1, D < 0, m <= 0, n_traj < 1.
  void validate() const;

  /// Drift-cap radius for stochastic runs: 10 sqrt(2 D dt).
  double regularization_radius() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> positions;
  std::vector<Vec3> noise;  // eta_n, one per step, when recorded

  std::size_t size() const { return positions.size(); }
};

/// (-(sigma0/m) y/rho^2, (sigma0/m) x/rho^2, p0/m). Throws AxisSingularity when
/// rho <= core_radius (and always on the axis itself).
Vec3 dezael_drift(const Vec3& pos, double m, double p0, double sigma0, double core_radius = 0.0);

/// Drift of cfg at pos with the 1/rho factor evaluated at max(rho, r_cap).
Vec3 drift_velocity(const SimConfig& cfg, const Vec3& pos, double r_cap);

/// Classical RK4 integration of the drift, n_steps + 1 samples.
Trajectory integrate_deterministic(const SimConfig& cfg);

/// Euler-Maruyama: X_{n+1} = X_n + v(X_n) dt + eta_n sqrt(2 D dt). The drift's
/// 1/rho factor is capped at regularization_radius(). Bit-reproducible per
/// (seed, config).
Trajectory integrate_stochastic(const SimConfig& cfg);

/// Generator for trajectory `index` of an ensemble with master seed `seed`.
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

/// Fractal increments dxi_n = X_{n+1} - X_n - v(X_n) dt reconstructed from
/// the path with the same regularised drift as the integrator.
std::vector<Vec3> fractal_increments(const Trajectory& traj, const SimConfig& cfg);

/// Per-component <dxi^2>/dt; approximately 2D for every component.
Vec3 increment_variance(const std::vector<Vec3>& dxi, double dt);

struct ScalingFit {
  double H = 0.0;
  double D_F = 0.0;
  std::vector<int> lags;
  std::vector<double> rms;  // RMS |X(t + lag) - X(t)| per lag
};

/// Least-squares slope of log RMS increment against log lag over overlapping
/// windows. Throws InsufficientData with fewer than 1000 increments at the
/// largest lag; std::invalid_argument for lags < 1 or fewer than two lags.
ScalingFit increment_scaling(const Trajectory& traj, const std::vector<int>& lags);

/// Fit H from lags and matching RMS values.
ScalingFit fit_scaling(std::vector<int> lags, std::vector<double> rms);

/// Forward and backward difference quotients at an interior sample.
std::pair<Vec3, Vec3> two_sided_velocity(const Trajectory& traj, std::size_t index);

/// Per-component RMS of v_plus - v_minus over all interior samples.
Vec3 two_sided_rms(const Trajectory& traj);

/// L_z per step, m r_n r_{n+1} dphi_n / dt_n, with dphi wrapped to (-pi, pi].
/// For exact rotation at constant radius this equals m r^2 phidot.
std::vector<double> lz_series(const Trajectory& traj, double m);

std::vector<double> radius_series(const Trajectory& traj);

/// Net unwrapped azimuth change divided by 2 pi.
double winding_number(const Trajectory& traj);

struct EnsembleOptions {
  std::vector<int> lags = {1, 2, 3};
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_mean_path = true;
};

struct EnsembleStats {
  int n_traj = 0;
  std::uint64_t seed = 0;
  std::vector<Vec3> mean_path;
  Vec3 mean_final_displacement = Vec3::Zero();
  Vec3 final_displacement_std = Vec3::Zero();
  Vec3 increment_var = Vec3::Zero();  // pooled <dxi^2>/dt per component
  bool scaling_available = false;
  ScalingFit scaling;  // pooled over all paths
  double Lz_mean = 0.0;
  double Lz_std = 0.0;
};

/// Runs n_traj independent stochastic paths with seeds trajectory_seed(seed, i).
/// Paths are grouped in fixed index blocks and reduced in index order, so the
/// statistics do not depend on the thread count.
EnsembleStats ensemble_run(const SimConfig& cfg, const EnsembleOptions& opts = {});

}  // namespace scalerel
