#pragma once

#include <array>
#include <complex>
#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace scalerel {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

// Complex norms below this magnitude are treated as zero divisors.
inline constexpr double kInverseEpsilon = 1e-12;

/// Real quaternion w + x e1 + y e2 + z e3 with e1 e2 = e3 (and cyclic).
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion e1() { return {0, 1, 0, 0}; }
  static constexpr Quaternion e2() { return {0, 0, 1, 0}; }
  static constexpr Quaternion e3() { return {0, 0, 0, 1}; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;

  /// Throws ZeroDivisor when norm2() == 0.
  Quaternion inverse() const;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

  // Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Complex quaternion a0 + a1 e1 + a2 e2 + a3 e3 with complex coefficients
/// a_k = phi_k + i chi_k. The imaginary unit i commutes with e1, e2, e3.
///
/// Storage is (phi0, chi0, phi1, chi1, phi2, chi2, phi3, chi3), which is the
/// memory layout of std::array<std::complex<double>, 4>.
class Biquaternion {
 public:
  constexpr Biquaternion() = default;
  constexpr Biquaternion(Complex a0, Complex a1, Complex a2, Complex a3) : c_{a0, a1, a2, a3} {}
  constexpr explicit Biquaternion(const std::array<Complex, 4>& c) : c_(c) {}
  constexpr Biquaternion(const Quaternion& q) : c_{q.w, q.x, q.y, q.z} {}  // NOLINT: embedding

  /// Build from the eight real components in canonical order.
  static Biquaternion from_reals(const std::array<double, 8>& r);
  std::array<double, 8> to_reals() const;

  static constexpr Biquaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Biquaternion i() { return {kI, 0.0, 0.0, 0.0}; }
  static constexpr Biquaternion e1() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Biquaternion e2() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Biquaternion e3() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr const Complex& operator[](std::size_t k) const { return c_[k]; }
  constexpr Complex& operator[](std::size_t k) { return c_[k]; }
  constexpr const std::array<Complex, 4>& coeffs() const { return c_; }

  double phi(std::size_t k) const { return c_[k].real(); }
  double chi(std::size_t k) const { return c_[k].imag(); }

  /// Quaternionic conjugate a0 - a1 e1 - a2 e2 - a3 e3 (no complex conjugation).
  constexpr Biquaternion conj() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }

  /// q * conj(q) = a0^2 + a1^2 + a2^2 + a3^2, a complex scalar. Zero for the
  /// zero divisors, e.g. 1 + i e1.
  Complex complex_norm() const;

  /// Sum of the squares of the eight real components.
  double hermitian_norm2() const;

  /// sqrt(hermitian_norm2()).
  double magnitude() const;

  bool is_unit(double tol = 1e-12) const;

  /// conj(q) / complex_norm(q). Throws ZeroDivisor when
  /// |complex_norm(q)| < eps.
  Biquaternion inverse(double eps = kInverseEpsilon) const;

  Biquaternion& operator+=(const Biquaternion& o);
  Biquaternion& operator-=(const Biquaternion& o);
  Biquaternion& operator*=(Complex s);

  friend Biquaternion operator+(Biquaternion a, const Biquaternion& b) { return a += b; }
  friend Biquaternion operator-(Biquaternion a, const Biquaternion& b) { return a -= b; }
  friend Biquaternion operator-(const Biquaternion& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
  friend Biquaternion operator*(Biquaternion a, Complex s) { return a *= s; }
  friend Biquaternion operator*(Complex s, Biquaternion a) { return a *= s; }
  friend Biquaternion operator*(Biquaternion a, double s) { return a *= Complex(s); }
  friend Biquaternion operator*(double s, Biquaternion a) { return a *= Complex(s); }
  friend Biquaternion operator/(Biquaternion a, Complex s) { return a *= (1.0 / s); }
  friend Biquaternion operator/(Biquaternion a, double s) { return a *= Complex(1.0 / s); }

  // Hamilton product with complex coefficients.
  friend Biquaternion operator*(const Biquaternion& a, const Biquaternion& b);

  friend bool operator==(const Biquaternion&, const Biquaternion&) = default;

 private:
  std::array<Complex, 4> c_{};
};

/// Largest absolute difference over the eight real components.
double max_abs_diff(const Biquaternion& a, const Biquaternion& b);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const Biquaternion& q);

// Symplectic form q = alpha + e2 * beta. For a real quaternion with e1 read
// as the complex unit, alpha = w + i x and beta = y - i z.
struct SymplecticPair {
  Complex alpha;
  Complex beta;

  friend bool operator==(const SymplecticPair&, const SymplecticPair&) = default;
};

SymplecticPair symplectic_split(const Quaternion& q);
Quaternion symplectic_join(const SymplecticPair& p);

// Biquaternion version. alpha = a0 + a1 e1 and beta = a2 - a3 e1 are elements
// of the commuting subalgebra spanned by {1, e1} over the complex numbers,
// stored as their two complex coefficients.
struct BiSymplecticPair {
  std::array<Complex, 2> alpha;
  std::array<Complex, 2> beta;

  friend bool operator==(const BiSymplecticPair&, const BiSymplecticPair&) = default;
};

BiSymplecticPair symplectic_split(const Biquaternion& q);
Biquaternion symplectic_join(const BiSymplecticPair& p);

/// Pauli matrix sigma_k, k = 1, 2, 3.
Mat2c pauli(int k);

/// sigma . a
Mat2c pauli_dot(const Vec3& a);

/// Faithful 2x2 representation: 1 -> I, e_k -> -i sigma_k (commuting i).
/// A ring homomorphism with complex_norm(q) = det(to_matrix(q)).
Mat2c to_matrix(const Biquaternion& q);
Biquaternion from_matrix(const Mat2c& m);

/// Max-norm of (sigma.a)(sigma.b) - (a.b) I - i sigma.(a x b).
double pauli_identity_residual(const Vec3& a, const Vec3& b);

}  // namespace scalerel
