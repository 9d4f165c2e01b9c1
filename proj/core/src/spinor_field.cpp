#include "scalerel/spinor_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scalerel/error.hpp"

namespace scalerel {

double SpacetimePoint::coord(int mu) const {
  switch (mu) {
    case 0: return t;
    case 1: return x;
    case 2: return y;
    case 3: return z;
    default: throw std::out_of_range("spacetime index must be 0..3");
  }
}

SpacetimePoint SpacetimePoint::shifted(int mu, double delta) const {
  SpacetimePoint p = *this;
  switch (mu) {
    case 0: p.t += delta; break;
    case 1: p.x += delta; break;
    case 2: p.y += delta; break;
    case 3: p.z += delta; break;
    default: throw std::out_of_range("spacetime index must be 0..3");
  }
  return p;
}

double azimuth(double x, double y) { return std::atan2(y, x); }

namespace {

double azimuth_on_branch(double x, double y, double center) {
  double phi = std::atan2(y, x);
  while (phi - center > std::numbers::pi) phi -= 2.0 * std::numbers::pi;
  while (phi - center <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
  return phi;
}

void require_off_axis(const SpinorField& f, const SpacetimePoint& pt, const char* op) {
  if (f.has_spin() && pt.x * pt.x + pt.y * pt.y == 0.0) {
    throw AxisSingularity(std::string("spinor-field/") + op, "azimuth undefined on the z axis");
  }
}

}  // namespace

SpinorField::SpinorField(std::vector<PlaneWaveTerm> terms, Constants constants)
    : terms_(std::move(terms)), constants_(constants) {}

bool SpinorField::has_spin() const {
  for (const auto& t : terms_) {
    if (t.sigma != 0.0) return true;
  }
  return false;
}

Biquaternion SpinorField::evaluate(const SpacetimePoint& pt) const {
  require_off_axis(*this, pt, "evaluate");
  return evaluate_on_branch(pt, 0.0);
}

Biquaternion SpinorField::evaluate_on_branch(const SpacetimePoint& pt, double center) const {
  require_off_axis(*this, pt, "evaluate");
  const double phi = has_spin() ? azimuth_on_branch(pt.x, pt.y, center) : 0.0;
  const Vec3 r = pt.position();
  Biquaternion sum;
  for (const auto& term : terms_) {
    const double theta = (term.p.dot(r) - term.E * pt.t + term.sigma * phi) / constants_.hbar;
    sum += term.amplitude * std::polar(1.0, theta);
  }
  return sum;
}

Biquaternion SpinorField::partial(const SpacetimePoint& pt, int mu) const {
  require_off_axis(*this, pt, "partial_analytic");
  const double rho2 = pt.x * pt.x + pt.y * pt.y;
  const double phi = has_spin() ? std::atan2(pt.y, pt.x) : 0.0;
  // Branch-free azimuth gradient.
  const double dphi_dx = has_spin() ? -pt.y / rho2 : 0.0;
  const double dphi_dy = has_spin() ? pt.x / rho2 : 0.0;
  const Vec3 r = pt.position();
  Biquaternion sum;
  for (const auto& term : terms_) {
    const double theta = (term.p.dot(r) - term.E * pt.t + term.sigma * phi) / constants_.hbar;
    double dtheta = 0.0;
    switch (mu) {
      case 0: dtheta = -term.E; break;
      case 1: dtheta = term.p.x() + term.sigma * dphi_dx; break;
      case 2: dtheta = term.p.y() + term.sigma * dphi_dy; break;
      case 3: dtheta = term.p.z(); break;
      default: throw std::out_of_range("spacetime index must be 0..3");
    }
    dtheta /= constants_.hbar;
    sum += term.amplitude * (kI * dtheta * std::polar(1.0, theta));
  }
  return sum;
}

SpinorField plane_wave(const Biquaternion& amplitude, const Vec3& p, double E, const Constants& k,
                       double sigma) {
  return SpinorField({PlaneWaveTerm{amplitude, p, E, sigma}}, k);
}

SpinorField dezael_field(const Biquaternion& a0, const Biquaternion& a1, const Vec3& p0,
                         const Vec3& p1, double e0, double e1, double sigma0, double sigma1,
                         const Constants& k) {
  if (p0 != p1) throw std::invalid_argument("dezael_field: requires p0 == p1");
  if (sigma0 != sigma1) throw std::invalid_argument("dezael_field: requires sigma0 == sigma1");
  return SpinorField({PlaneWaveTerm{a0, p0, e0, sigma0}, PlaneWaveTerm{a1, p1, e1, sigma1}}, k);
}

Biquaternion CTSpinor::value() const {
  return {std::cos(theta / 2.0) * std::polar(1.0, -phi / 2.0),
          std::sin(theta / 2.0) * std::polar(1.0, phi / 2.0), 0.0, 0.0};
}

Biquaternion partial_analytic(const SpinorField& field, const SpacetimePoint& pt, int mu) {
  return field.partial(pt, mu);
}

Biquaternion partial_fd(const SpinorField& field, const SpacetimePoint& pt, int mu, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("partial_fd: step must be positive");
  const SpacetimePoint lo = pt.shifted(mu, -h);
  const SpacetimePoint hi = pt.shifted(mu, h);
  if (field.has_spin() && (mu == 1 || mu == 2)) {
    // Distance from the axis to the stencil segment in the xy plane.
    const double dx = hi.x - lo.x;
    const double dy = hi.y - lo.y;
    const double len2 = dx * dx + dy * dy;
    double s = -(lo.x * dx + lo.y * dy) / len2;
    s = std::clamp(s, 0.0, 1.0);
    const double cx = lo.x + s * dx;
    const double cy = lo.y + s * dy;
    if (std::hypot(cx, cy) < 0.5 * h) {
      throw AxisSingularity("spinor-field/partial_fd", "stencil crosses the z axis");
    }
  }
  require_off_axis(field, pt, "partial_fd");
  // Both stencil points share the azimuth branch of the centre point, so the
  // difference never straddles the atan2 cut.
  const double center = field.has_spin() ? std::atan2(pt.y, pt.x) : 0.0;
  return (field.evaluate_on_branch(hi, center) - field.evaluate_on_branch(lo, center)) /
         (2.0 * h);
}

}  // namespace scalerel
