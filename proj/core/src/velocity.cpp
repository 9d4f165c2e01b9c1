#include "scalerel/velocity.hpp"

#include <algorithm>
#include <cmath>

#include "scalerel/error.hpp"

namespace scalerel {

namespace {

// Real and imaginary parts of one biquaternion, split into phi_k and chi_k.
template <class T>
struct Components {
  std::array<T, 4> phi{};
  std::array<T, 4> chi{};
};

Components<double> split(const Biquaternion& q) {
  Components<double> c;
  for (std::size_t k = 0; k < 4; ++k) {
    c.phi[k] = q[k].real();
    c.chi[k] = q[k].imag();
  }
  return c;
}

// The sixteen bilinear sums of the component velocity formulas. For each
// basis slot b (1, e1, e2, e3), X[b] collects the phi*d(chi) + chi*d(phi)
// terms and Y[b] the phi*d(phi) - chi*d(chi) terms; then
//   v_{+}[b] = -k (X[b] + Y[b]),  v_{-}[b] = -k (X[b] - Y[b]).
template <class T>
struct Sums {
  std::array<T, 4> X{};
  std::array<T, 4> Y{};
};

template <class T>
Sums<T> component_sums(const Components<T>& f, const Components<T>& d) {
  const auto& p = f.phi;
  const auto& c = f.chi;
  const auto& dp = d.phi;
  const auto& dc = d.chi;
  Sums<T> s;
  s.X[0] = p[0] * dc[0] + c[0] * dp[0] + p[1] * dc[1] + c[1] * dp[1] + p[2] * dc[2] +
           c[2] * dp[2] + p[3] * dc[3] + c[3] * dp[3];
  s.Y[0] = p[0] * dp[0] - c[0] * dc[0] + p[1] * dp[1] - c[1] * dc[1] + p[2] * dp[2] -
           c[2] * dc[2] + p[3] * dp[3] - c[3] * dc[3];

  s.X[1] = p[0] * dc[1] + c[0] * dp[1] - p[1] * dc[0] - c[1] * dp[0] - p[2] * dc[3] -
           c[2] * dp[3] + p[3] * dc[2] + c[3] * dp[2];
  s.Y[1] = p[0] * dp[1] - c[0] * dc[1] - p[1] * dp[0] + c[1] * dc[0] - p[2] * dp[3] +
           c[2] * dc[3] + p[3] * dp[2] - c[3] * dc[2];

  s.X[2] = p[0] * dc[2] + c[0] * dp[2] + p[1] * dc[3] + c[1] * dp[3] - p[2] * dc[0] -
           c[2] * dp[0] - p[3] * dc[1] - c[3] * dp[1];
  s.Y[2] = p[0] * dp[2] - c[0] * dc[2] + p[1] * dp[3] - c[1] * dc[3] - p[2] * dp[0] +
           c[2] * dc[0] - p[3] * dp[1] + c[3] * dc[1];

  s.X[3] = p[0] * dc[3] + c[0] * dp[3] - p[1] * dc[2] - c[1] * dp[2] + p[2] * dc[1] +
           c[2] * dp[1] - p[3] * dc[0] - c[3] * dp[0];
  s.Y[3] = p[0] * dp[3] - c[0] * dc[3] - p[1] * dp[2] + c[1] * dc[2] + p[2] * dp[1] -
           c[2] * dc[1] - p[3] * dp[0] + c[3] * dc[0];
  return s;
}

// d^mu from ordinary partials: (1/c) d_t for mu = 0, -d_k for k = 1..3.
double contravariant_factor(int mu, const Constants& k) { return mu == 0 ? 1.0 / k.c : -1.0; }

Biquaternion contravariant_partial(const SpinorField& f, const SpacetimePoint& pt, int mu) {
  return f.partial(pt, mu) * contravariant_factor(mu, f.constants());
}

Biquaternion normalized_left_factor(const Biquaternion& psi, const char* op) {
  const Complex n = psi.complex_norm();
  if (std::abs(n) < kInverseEpsilon) {
    throw ZeroDivisor(std::string("velocity-extraction/") + op, "psi is a zero divisor");
  }
  return psi / n;
}

}  // namespace

double max_abs_diff(const BqVelocity& a, const BqVelocity& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, max_abs_diff(a[i], b[i]));
  return m;
}

double VelocityComponents::max_tilde() const {
  return std::max({vt_pp.cwiseAbs().maxCoeff(), vt_pm.cwiseAbs().maxCoeff(),
                   vt_mp.cwiseAbs().maxCoeff(), vt_mm.cwiseAbs().maxCoeff()});
}

BqVelocity bq_velocity(const SpinorField& field, const SpacetimePoint& pt) {
  const Constants& k = field.constants();
  Biquaternion inv;
  try {
    inv = field.evaluate(pt).inverse();
  } catch (const ZeroDivisor&) {
    throw ZeroDivisor("velocity-extraction/bq_velocity", "psi(pt) is not invertible");
  }
  const Complex prefactor = kI * (k.S0 / k.m);
  BqVelocity v;
  for (int mu = 0; mu < 4; ++mu) {
    v[mu] = prefactor * (inv * contravariant_partial(field, pt, mu));
  }
  return v;
}

BqVelocity bq_velocity_fd(const SpinorField& field, const SpacetimePoint& pt, double h) {
  const Constants& k = field.constants();
  Biquaternion inv;
  try {
    inv = field.evaluate(pt).inverse();
  } catch (const ZeroDivisor&) {
    throw ZeroDivisor("velocity-extraction/bq_velocity", "psi(pt) is not invertible");
  }
  const Complex prefactor = kI * (k.S0 / k.m);
  BqVelocity v;
  for (int mu = 0; mu < 4; ++mu) {
    const Biquaternion d = partial_fd(field, pt, mu, h) * contravariant_factor(mu, k);
    v[mu] = prefactor * (inv * d);
  }
  return v;
}

VelocityComponents component_velocities(const SpinorField& field, const SpacetimePoint& pt) {
  const Constants& k = field.constants();
  const auto left = split(normalized_left_factor(field.evaluate(pt), "component_velocities"));
  const double scale = k.S0 / k.m;
  VelocityComponents out;
  for (int mu = 0; mu < 4; ++mu) {
    const auto d = split(contravariant_partial(field, pt, mu));
    const Sums<double> s = component_sums(left, d);
    out.v_pp[mu] = -scale * (s.X[0] + s.Y[0]);
    out.v_mm[mu] = -scale * (s.X[0] - s.Y[0]);
    out.v_pm[mu] = -scale * (s.X[1] + s.Y[1]);
    out.v_mp[mu] = -scale * (s.X[1] - s.Y[1]);
    out.vt_pp[mu] = -scale * (s.X[2] + s.Y[2]);
    out.vt_mm[mu] = -scale * (s.X[2] - s.Y[2]);
    out.vt_pm[mu] = -scale * (s.X[3] + s.Y[3]);
    out.vt_mp[mu] = -scale * (s.X[3] - s.Y[3]);
  }
  return out;
}

BqVelocity recompose(const VelocityComponents& c) {
  auto slot = [](double plus, double minus) {
    return Complex(0.5 * (plus + minus), -0.5 * (plus - minus));
  };
  BqVelocity v;
  for (int mu = 0; mu < 4; ++mu) {
    v[mu] = Biquaternion(slot(c.v_pp[mu], c.v_mm[mu]), slot(c.v_pm[mu], c.v_mp[mu]),
                         slot(c.vt_pp[mu], c.vt_mm[mu]), slot(c.vt_pm[mu], c.vt_mp[mu]));
  }
  return v;
}

Vec4 rejected_assignment_vt_mm(const SpinorField& field, const SpacetimePoint& pt) {
  const Constants& k = field.constants();
  const auto left = split(normalized_left_factor(field.evaluate(pt), "rejected_assignment"));
  Vec4 out;
  for (int mu = 0; mu < 4; ++mu) {
    const Sums<double> s = component_sums(left, split(contravariant_partial(field, pt, mu)));
    // Identifying the scalar slot with (v_pp + vt_mm)/2 - i (v_pp - vt_mm)/2.
    out[mu] = -(k.S0 / k.m) * (s.X[0] - s.Y[0]);
  }
  return out;
}

PauliVelocity nonrel_reduce(const SpinorField& field, const SpacetimePoint& pt,
                            const ReduceOptions& opts) {
  const Constants& k = field.constants();
  const Biquaternion psi = field.evaluate(pt);
  const double small = std::max(std::abs(psi[2]), std::abs(psi[3]));
  if (small > opts.small_threshold * std::max(psi.magnitude(), 1e-300)) {
    throw SmallComponentsNotSmall("velocity-extraction/nonrel_reduce",
                                  "small components of magnitude " + std::to_string(small));
  }
  const double omega = k.m * k.c * k.c / k.hbar;
  const Complex unphase = std::polar(1.0, omega * pt.t);
  const Complex a0 = psi[0] * unphase;
  const Complex a1 = psi[1] * unphase;
  const double norm2 = std::norm(a0) + std::norm(a1);
  if (std::abs(norm2 - 1.0) > opts.norm_tolerance) {
    throw NotNormalized("velocity-extraction/nonrel_reduce",
                        "|phi'|^2 = " + std::to_string(norm2));
  }

  PauliVelocity out;

  // Timelike part: slowly varying phi', so d^0 phi = -(i m c / hbar) phi with
  // phi = phi' exp(-i m c^2 t / hbar). The scalar slot of the large-component
  // formulas is evaluated with complex-valued phi_k, chi_k.
  {
    const Complex rest = std::conj(unphase);
    Components<Complex> f;
    f.phi = {a0.real() * rest, a1.real() * rest, 0.0, 0.0};
    f.chi = {a0.imag() * rest, a1.imag() * rest, 0.0, 0.0};
    Components<Complex> d;
    const Complex dt = -kI * k.m * k.c / k.hbar;
    for (std::size_t j = 0; j < 4; ++j) {
      d.phi[j] = dt * f.phi[j];
      d.chi[j] = dt * f.chi[j];
    }
    const Sums<Complex> s = component_sums(f, d);
    // (S0/m) [-X + i Y] in velocity units.
    out.V0_with_rest_phase = (k.S0 / k.m) * (-s.X[0] + kI * s.Y[0]);
    out.V0 = k.c * (k.S0 / k.hbar) * (a0 * a0 + a1 * a1);
  }

  // Spatial part from the primed spinor: d^k phi = d^k phi' exp(...) so the
  // rest phase cancels between the left factor and the derivative.
  const Biquaternion primed(a0, a1, 0.0, 0.0);
  const auto left = split(normalized_left_factor(primed, "nonrel_reduce"));
  const double scale = k.S0 / k.m;
  for (int j = 1; j <= 3; ++j) {
    const Biquaternion dpsi = field.partial(pt, j) * (-unphase);
    const Biquaternion dprimed(dpsi[0], dpsi[1], 0.0, 0.0);
    const Sums<double> s = component_sums(left, split(dprimed));
    const double v_pp = -scale * (s.X[0] + s.Y[0]);
    const double v_mm = -scale * (s.X[0] - s.Y[0]);
    const double v_pm = -scale * (s.X[1] + s.Y[1]);
    const double v_mp = -scale * (s.X[1] - s.Y[1]);
    out.Vk[j - 1] = Biquaternion(Complex(0.5 * (v_pp + v_mm), -0.5 * (v_pp - v_mm)),
                                 Complex(0.5 * (v_pm + v_mp), -0.5 * (v_pm - v_mp)), 0.0, 0.0);
  }
  return out;
}

}  // namespace scalerel
