#pragma once

#include <functional>
#include <vector>

#include "scalerel/quaternion.hpp"

namespace scalerel {

/// Event (t, x, y, z). Index mu = 0 is time t (not ct); mu = 1, 2, 3 are x, y, z.
struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double coord(int mu) const;
  SpacetimePoint shifted(int mu, double delta) const;
  Vec3 position() const { return {x, y, z}; }
};

/// Physical constants carried by a field. S0 is the action scale of the
/// velocity map; in the standard quantum setting S0 = 2 m D = hbar.
struct Constants {
  double hbar = 1.0;
  double m = 1.0;
  double c = 1.0;
  double S0 = 1.0;

  double diffusion() const { return hbar / (2.0 * m); }
};

/// A * exp((i/hbar)(p.r - E t + sigma * azimuth)).
struct PlaneWaveTerm {
  Biquaternion amplitude = Biquaternion::one();
  Vec3 p = Vec3::Zero();
  double E = 0.0;
  double sigma = 0.0;
};

/// Azimuth atan2(y, x) in (-pi, pi].
double azimuth(double x, double y);

/// Superposition of plane-wave terms. Values are biquaternions; the phase
/// factor multiplies every complex coefficient through the commuting i.
class SpinorField {
 public:
  SpinorField() = default;
  SpinorField(std::vector<PlaneWaveTerm> terms, Constants constants);

  const std::vector<PlaneWaveTerm>& terms() const { return terms_; }
  const Constants& constants() const { return constants_; }
  bool has_spin() const;

  /// Throws AxisSingularity on the z axis when any term has sigma != 0.
  Biquaternion evaluate(const SpacetimePoint& pt) const;

  /// Same, but with the azimuth taken on the branch (center - pi, center + pi].
  Biquaternion evaluate_on_branch(const SpacetimePoint& pt, double center) const;

  /// Exact d psi / d x^mu (mu = 0 is d/dt).
  Biquaternion partial(const SpacetimePoint& pt, int mu) const;

 private:
  std::vector<PlaneWaveTerm> terms_;
  Constants constants_;
};

/// Single-term field.
SpinorField plane_wave(const Biquaternion& amplitude, const Vec3& p, double E, const Constants& k,
                       double sigma = 0.0);

/// Two-term spiral field A0 e^{i theta_0} + A1 e^{i theta_1}. Throws
/// std::invalid_argument unless p0 == p1 and sigma0 == sigma1.
SpinorField dezael_field(const Biquaternion& a0, const Biquaternion& a1, const Vec3& p0,
                         const Vec3& p1, double e0, double e1, double sigma0, double sigma1,
                         const Constants& k);

/// cos(theta/2) e^{-i phi/2} |+> + sin(theta/2) e^{i phi/2} |->, stored in the
/// large (e0, e1) slots of a biquaternion.
struct CTSpinor {
  double theta = 0.0;
  double phi = 0.0;

  Biquaternion value() const;
};

Biquaternion partial_analytic(const SpinorField& field, const SpacetimePoint& pt, int mu);

/// Central difference (f(x + h) - f(x - h)) / 2h along mu. Throws
/// std::invalid_argument for h <= 0 and AxisSingularity when a spinning
/// field's stencil passes within h/2 of the axis.
Biquaternion partial_fd(const SpinorField& field, const SpacetimePoint& pt, int mu,
                        double h = 1e-4);

}  // namespace scalerel
