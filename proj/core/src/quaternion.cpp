#include "scalerel/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "scalerel/error.hpp"

namespace scalerel {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) {
    throw ZeroDivisor("quaternion-core/q_inverse", "zero quaternion has no inverse");
  }
  return conj() * (1.0 / n2);
}

Biquaternion Biquaternion::from_reals(const std::array<double, 8>& r) {
  return {Complex(r[0], r[1]), Complex(r[2], r[3]), Complex(r[4], r[5]), Complex(r[6], r[7])};
}

std::array<double, 8> Biquaternion::to_reals() const {
  return {c_[0].real(), c_[0].imag(), c_[1].real(), c_[1].imag(),
          c_[2].real(), c_[2].imag(), c_[3].real(), c_[3].imag()};
}

Complex Biquaternion::complex_norm() const {
  return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3];
}

double Biquaternion::hermitian_norm2() const {
  return std::norm(c_[0]) + std::norm(c_[1]) + std::norm(c_[2]) + std::norm(c_[3]);
}

double Biquaternion::magnitude() const { return std::sqrt(hermitian_norm2()); }

bool Biquaternion::is_unit(double tol) const { return std::abs(hermitian_norm2() - 1.0) <= tol; }

Biquaternion Biquaternion::inverse(double eps) const {
  const Complex n = complex_norm();
  if (std::abs(n) < eps) {
    throw ZeroDivisor("quaternion-core/q_inverse",
                      "complex norm " + std::to_string(std::abs(n)) + " below epsilon");
  }
  return conj() / n;
}

Biquaternion& Biquaternion::operator+=(const Biquaternion& o) {
  for (std::size_t k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator-=(const Biquaternion& o) {
  for (std::size_t k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator*=(Complex s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

double max_abs_diff(const Biquaternion& a, const Biquaternion& b) {
  const auto ra = a.to_reals();
  const auto rb = b.to_reals();
  double m = 0.0;
  for (std::size_t k = 0; k < 8; ++k) m = std::max(m, std::abs(ra[k] - rb[k]));
  return m;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

std::ostream& operator<<(std::ostream& os, const Biquaternion& q) {
  return os << "(" << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ")";
}

SymplecticPair symplectic_split(const Quaternion& q) {
  return {Complex(q.w, q.x), Complex(q.y, -q.z)};
}

Quaternion symplectic_join(const SymplecticPair& p) {
  return {p.alpha.real(), p.alpha.imag(), p.beta.real(), -p.beta.imag()};
}

BiSymplecticPair symplectic_split(const Biquaternion& q) {
  return {{q[0], q[1]}, {q[2], -q[3]}};
}

Biquaternion symplectic_join(const BiSymplecticPair& p) {
  return {p.alpha[0], p.alpha[1], p.beta[0], -p.beta[1]};
}

Mat2c pauli(int k) {
  Mat2c m;
  switch (k) {
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -kI, kI, 0.0; break;
    case 3: m << 1.0, 0.0, 0.0, -1.0; break;
    default: m.setIdentity(); break;
  }
  return m;
}

Mat2c pauli_dot(const Vec3& a) {
  return a.x() * pauli(1) + a.y() * pauli(2) + a.z() * pauli(3);
}

Mat2c to_matrix(const Biquaternion& q) {
  return q[0] * Mat2c::Identity() - kI * (q[1] * pauli(1) + q[2] * pauli(2) + q[3] * pauli(3));
}

Biquaternion from_matrix(const Mat2c& m) {
  // tr(sigma_k sigma_l) = 2 delta_kl, so a_k = i tr(sigma_k M) / 2.
  const Complex a0 = m.trace() / 2.0;
  const Complex a1 = kI * (pauli(1) * m).trace() / 2.0;
  const Complex a2 = kI * (pauli(2) * m).trace() / 2.0;
  const Complex a3 = kI * (pauli(3) * m).trace() / 2.0;
  return {a0, a1, a2, a3};
}

double pauli_identity_residual(const Vec3& a, const Vec3& b) {
  const Mat2c lhs = pauli_dot(a) * pauli_dot(b);
  const Mat2c rhs = a.dot(b) * Mat2c::Identity() + kI * pauli_dot(a.cross(b));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace scalerel
