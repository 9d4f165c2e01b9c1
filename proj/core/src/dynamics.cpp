#include "scalerel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scalerel/error.hpp"

namespace scalerel {

namespace {

void require_step(double h, const char* op) {
  if (!(h > 0.0)) throw std::invalid_argument(std::string(op) + ": step must be positive");
}

Biquaternion d_fd(const QuaternionField& f, const SpacetimePoint& pt, int mu, double h) {
  return (f(pt.shifted(mu, h)) - f(pt.shifted(mu, -h))) / (2.0 * h);
}

Biquaternion laplacian_fd(const QuaternionField& f, const SpacetimePoint& pt, double h) {
  const Biquaternion centre = f(pt) * 2.0;
  Biquaternion sum;
  for (int k = 1; k <= 3; ++k) sum += f(pt.shifted(k, h)) + f(pt.shifted(k, -h)) - centre;
  return sum / (h * h);
}

Spinor2 d_fd(const PauliField& f, const SpacetimePoint& pt, int mu, double h) {
  return (f(pt.shifted(mu, h)) - f(pt.shifted(mu, -h))) / (2.0 * h);
}

Spinor2 laplacian_fd(const PauliField& f, const SpacetimePoint& pt, double h) {
  const Spinor2 centre = 2.0 * f(pt);
  Spinor2 sum = Spinor2::Zero();
  for (int k = 1; k <= 3; ++k) sum += f(pt.shifted(k, h)) + f(pt.shifted(k, -h)) - centre;
  return sum / (h * h);
}

Biquaternion inverse_at(const QuaternionField& f, const SpacetimePoint& pt, const char* op) {
  try {
    return f(pt).inverse();
  } catch (const ZeroDivisor&) {
    throw ZeroDivisor(std::string("dynamics/") + op, "psi is not invertible near the sample point");
  }
}

// psi^{-1} d_k psi
Biquaternion log_gradient(const QuaternionField& f, const SpacetimePoint& pt, int k, double h,
                          const char* op) {
  return inverse_at(f, pt, op) * d_fd(f, pt, k, h);
}

double grid_coord(double lo, double hi, int i, int n) {
  if (n <= 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

EMField EMField::none() {
  EMField f;
  f.A0 = [](const SpacetimePoint&) { return 0.0; };
  f.A = [](const SpacetimePoint&) { return Vec3::Zero().eval(); };
  f.B = [](const SpacetimePoint&) { return Vec3::Zero().eval(); };
  return f;
}

EMField EMField::uniform_magnetic(const Vec3& B) {
  EMField f;
  f.A0 = [](const SpacetimePoint&) { return 0.0; };
  f.A = [B](const SpacetimePoint& pt) { return Vec3(0.5 * B.cross(pt.position())); };
  f.B = [B](const SpacetimePoint&) { return B; };
  return f;
}

Vec3 EMField::magnetic_fd(const SpacetimePoint& pt, double h) const {
  require_step(h, "EMField::magnetic_fd");
  auto dA = [&](int k, int comp) {
    return (A(pt.shifted(k, h))[comp] - A(pt.shifted(k, -h))[comp]) / (2.0 * h);
  };
  return {dA(2, 2) - dA(3, 1), dA(3, 0) - dA(1, 2), dA(1, 1) - dA(2, 0)};
}

Vec3 EMField::magnetic(const SpacetimePoint& pt, double h) const {
  if (B) return B(pt);
  return magnetic_fd(pt, h);
}

Biquaternion covariant_derivative(const VelocityField& V, double D, const QuaternionField& f,
                                  const SpacetimePoint& pt, const FdSteps& steps) {
  require_step(steps.first, "covariant_derivative");
  require_step(steps.second, "covariant_derivative");
  const auto v = V(pt);
  Biquaternion out = d_fd(f, pt, 0, steps.first);
  for (int k = 1; k <= 3; ++k) out += v[k - 1] * d_fd(f, pt, k, steps.first);
  out -= (kI * D) * laplacian_fd(f, pt, steps.second);
  return out;
}

double NestedSteps::outer_step() const { return outer > 0.0 ? outer : std::pow(inner, 0.75); }

std::array<Biquaternion, 3> geodesic_residual(const QuaternionField& psi, double D,
                                              const SpacetimePoint& pt, const NestedSteps& steps) {
  require_step(steps.inner, "geodesic_residual");
  const double h = steps.inner;
  const double H = steps.outer_step();
  require_step(H, "geodesic_residual");

  std::array<QuaternionField, 3> A;
  for (int k = 1; k <= 3; ++k) {
    A[k - 1] = [&psi, k, h](const SpacetimePoint& p) {
      return log_gradient(psi, p, k, h, "geodesic_residual");
    };
  }
  std::array<Biquaternion, 3> a_here;
  for (int j = 0; j < 3; ++j) a_here[j] = A[j](pt);

  std::array<Biquaternion, 3> out;
  for (int k = 0; k < 3; ++k) {
    Biquaternion transport;
    for (int j = 0; j < 3; ++j) transport += a_here[j] * d_fd(A[k], pt, j + 1, H);
    const Biquaternion rhs = transport + laplacian_fd(A[k], pt, H) * 0.5;
    out[k] = d_fd(A[k], pt, 0, H) - (2.0 * kI * D) * rhs;
  }
  return out;
}

double gradient_witness(const QuaternionField& psi, double D, const SampleBox& region,
                        const WitnessSteps& steps) {
  require_step(steps.inner, "gradient_witness");
  require_step(steps.outer, "gradient_witness");
  if (region.n < 1 || region.nt < 1) {
    throw std::invalid_argument("gradient_witness: sample counts must be positive");
  }
  const double h = steps.inner;
  const double H = steps.outer;

  // G = Laplacian(psi) psi^{-1}
  const QuaternionField G = [&psi, h](const SpacetimePoint& p) {
    return laplacian_fd(psi, p, h) * inverse_at(psi, p, "gradient_witness");
  };
  auto E = [&](int k, const SpacetimePoint& p) {
    const QuaternionField A = [&psi, k, h](const SpacetimePoint& q) {
      return log_gradient(psi, q, k, h, "gradient_witness");
    };
    return d_fd(A, p, 0, H) - (2.0 * kI * D) * d_fd(G, p, k, H);
  };

  double worst = 0.0;
  for (int it = 0; it < region.nt; ++it) {
    for (int ix = 0; ix < region.n; ++ix) {
      for (int iy = 0; iy < region.n; ++iy) {
        for (int iz = 0; iz < region.n; ++iz) {
          const SpacetimePoint pt{grid_coord(region.lo.t, region.hi.t, it, region.nt),
                                  grid_coord(region.lo.x, region.hi.x, ix, region.n),
                                  grid_coord(region.lo.y, region.hi.y, iy, region.n),
                                  grid_coord(region.lo.z, region.hi.z, iz, region.n)};
          for (int j = 1; j <= 3; ++j) {
            for (int k = j + 1; k <= 3; ++k) {
              const Biquaternion djEk = (E(k, pt.shifted(j, H)) - E(k, pt.shifted(j, -H))) / (2.0 * H);
              const Biquaternion dkEj = (E(j, pt.shifted(k, H)) - E(j, pt.shifted(k, -H))) / (2.0 * H);
              worst = std::max(worst, (djEk - dkEj).magnitude());
            }
          }
        }
      }
    }
  }
  return worst;
}

QuaternionField witness_control_field() {
  return [](const SpacetimePoint& p) {
    const Complex v = std::exp(kI * (1.2 * p.x - 0.8 * p.y + 0.5 * p.z - 0.9 * p.t)) +
                      0.4 * std::exp(kI * (-0.6 * p.x + 1.1 * p.y + 0.9 * p.z - 0.7 * p.t)) +
                      0.2 * std::exp(kI * (0.9 * p.x + 0.4 * p.y - 1.3 * p.z - p.t));
    return Biquaternion(v, 0.0, 0.0, 0.0);
  };
}

double witness_noise_floor(double D, const SampleBox& region, const WitnessSteps& steps) {
  return gradient_witness(witness_control_field(), D, region, steps);
}

Spinor2 small_component(const PauliField& phi, const EMField& em, const SpacetimePoint& pt,
                        const ChargedConstants& k, const FdSteps& steps) {
  require_step(steps.first, "small_component");
  const Spinor2 here = phi(pt);
  const Vec3 A = em.A(pt);
  Spinor2 out = Spinor2::Zero();
  for (int j = 1; j <= 3; ++j) {
    const Spinor2 pi = -kI * k.hbar * d_fd(phi, pt, j, steps.first) - (k.e / k.c) * A[j - 1] * here;
    out += pauli(j) * pi;
  }
  return out / (2.0 * k.m * k.c);
}

Spinor2 pauli_residual(const PauliField& phi, const EMField& em, const SpacetimePoint& pt,
                       const ChargedConstants& k, const FdSteps& steps) {
  require_step(steps.first, "pauli_residual");
  require_step(steps.second, "pauli_residual");
  const Spinor2 here = phi(pt);
  const Vec3 A = em.A(pt);
  const double q = k.e / k.c;

  double divA = 0.0;
  Spinor2 a_dot_grad = Spinor2::Zero();
  for (int j = 1; j <= 3; ++j) {
    divA += (em.A(pt.shifted(j, steps.first))[j - 1] - em.A(pt.shifted(j, -steps.first))[j - 1]) /
            (2.0 * steps.first);
    a_dot_grad += A[j - 1] * d_fd(phi, pt, j, steps.first);
  }
  // (-i hbar grad - q A)^2 phi, expanded.
  const Spinor2 kinetic = -k.hbar * k.hbar * laplacian_fd(phi, pt, steps.second) +
                          kI * k.hbar * q * (divA * here + 2.0 * a_dot_grad) +
                          q * q * A.squaredNorm() * here;
  const Vec3 B = em.magnetic(pt, steps.first);
  const Spinor2 spin = (k.g / 2.0) * (k.e * k.hbar / (2.0 * k.m * k.c)) * (pauli_dot(B) * here);
  const Spinor2 rhs = kinetic / (2.0 * k.m) - spin + k.e * em.A0(pt) * here;
  const Spinor2 lhs = kI * k.hbar * d_fd(phi, pt, 0, steps.first);
  return lhs - rhs;
}

Mat4c gamma_matrix(int mu) {
  Mat4c g = Mat4c::Zero();
  if (mu == 0) {
    g.diagonal() << 1.0, 1.0, -1.0, -1.0;
    return g;
  }
  if (mu < 1 || mu > 3) throw std::out_of_range("gamma index must be 0..3");
  const Mat2c s = pauli(mu);
  g.block<2, 2>(0, 2) = s;
  g.block<2, 2>(2, 0) = -s;
  return g;
}

Spinor4 to_spinor(const Biquaternion& q) { return {q[0], q[1], q[2], q[3]}; }

Biquaternion from_spinor(const Spinor4& s) { return {s[0], s[1], s[2], s[3]}; }

Biquaternion dirac_residual(const SpinorField& psi, const EMField& em, const SpacetimePoint& pt,
                            double charge) {
  const Constants& k = psi.constants();
  const Spinor4 here = to_spinor(psi.evaluate(pt));
  const Vec3 A = em.A(pt);
  const double q = charge / k.c;
  Spinor4 out = -k.m * k.c * here;
  for (int mu = 0; mu < 4; ++mu) {
    Spinor4 d = to_spinor(psi.partial(pt, mu));
    if (mu == 0) d /= k.c;
    const double A_lower = mu == 0 ? em.A0(pt) : -A[mu - 1];
    out += gamma_matrix(mu) * (kI * k.hbar * d - q * A_lower * here);
  }
  return from_spinor(out);
}

double on_shell_energy(const Vec3& p, const Constants& k) {
  const double mc2 = k.m * k.c * k.c;
  return std::sqrt(p.squaredNorm() * k.c * k.c + mc2 * mc2);
}

Biquaternion dirac_spinor(const Vec3& p, const Spinor2& spin, const Constants& k) {
  const double E = on_shell_energy(p, k);
  const Spinor2 lower = (k.c / (E + k.m * k.c * k.c)) * (pauli_dot(p) * spin);
  Spinor4 u;
  u << spin, lower;
  const double n = u.norm();
  if (n == 0.0) throw std::invalid_argument("dirac_spinor: zero spin state");
  return from_spinor(u / n);
}

PauliField pauli_limit(const SpinorField& dirac, const Constants& k) {
  const double omega = k.m * k.c * k.c / k.hbar;
  return [dirac, omega](const SpacetimePoint& pt) {
    const Biquaternion v = dirac.evaluate(pt);
    const Complex phase = std::polar(1.0, omega * pt.t);
    return Spinor2(v[0] * phase, v[1] * phase);
  };
}

}  // namespace scalerel
