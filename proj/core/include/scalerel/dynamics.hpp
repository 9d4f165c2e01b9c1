#pragma once

#include <array>
#include <functional>

#include <Eigen/Core>

#include "scalerel/quaternion.hpp"
#include "scalerel/spinor_field.hpp"

namespace scalerel {

using Spinor2 = Eigen::Vector2cd;
using Spinor4 = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

/// Biquaternion-valued field over spacetime. Real quaternion and complex
/// fields embed through the Biquaternion constructors.
using QuaternionField = std::function<Biquaternion(const SpacetimePoint&)>;

/// Quaternionic velocity field: one biquaternion per spatial direction.
using VelocityField = std::function<std::array<Biquaternion, 3>(const SpacetimePoint&)>;

/// Pauli two-spinor field.
using PauliField = std::function<Spinor2(const SpacetimePoint&)>;

using Vector3Field = std::function<Vec3(const SpacetimePoint&)>;
using ScalarField = std::function<double(const SpacetimePoint&)>;

/// Scalar potential A0, vector potential A and (optionally) its analytic curl.
struct EMField {
  ScalarField A0;
  Vector3Field A;
  Vector3Field B;  // empty: take the finite-difference curl of A

  static EMField none();
  /// Uniform B in the symmetric gauge A = (B x r) / 2, analytic curl.
  static EMField uniform_magnetic(const Vec3& B);

  /// curl A, analytic if B is set, otherwise central differences of step h.
  Vec3 magnetic(const SpacetimePoint& pt, double h = 1e-4) const;
  Vec3 magnetic_fd(const SpacetimePoint& pt, double h = 1e-4) const;
};

/// Charged-particle constants for the Pauli/Dirac operators (Gaussian units).
/// g multiplies the spin term; g = 2 is the value implied by the Dirac limit.
struct ChargedConstants {
  double hbar = 1.0;
  double m = 1.0;
  double c = 1.0;
  double e = 1.0;
  double g = 2.0;
};

/// Finite-difference steps shared by the operators below.
struct FdSteps {
  double first = 1e-5;   // first derivatives
  double second = 1e-4;  // second derivatives / Laplacians
};

/// (d_t + V . grad - i D Laplacian) f at pt. V multiplies from the left.
/// On the coordinate field f = X^k it returns V^k.
Biquaternion covariant_derivative(const VelocityField& V, double D, const QuaternionField& f,
                                  const SpacetimePoint& pt, const FdSteps& steps = {});

/// Steps for nested third-derivative stencils. The outer step is
/// inner^(3/4) unless set explicitly.
struct NestedSteps {
  double inner = 1e-4;
  double outer = 0.0;

  double outer_step() const;
};

/// Residual of the fractal-space geodesic equation with S0 = 2 m D:
///   d_t A_k - 2 i D [ sum_j A_j d_j A_k + (1/2) Laplacian A_k ],  A_k = psi^{-1} d_k psi.
/// Throws ZeroDivisor if psi is not invertible near pt.
std::array<Biquaternion, 3> geodesic_residual(const QuaternionField& psi, double D,
                                              const SpacetimePoint& pt,
                                              const NestedSteps& steps = {});

/// Axis-aligned sample box; n points per spatial axis and nt in time
/// (a single value sits at the box centre).
struct SampleBox {
  SpacetimePoint lo;
  SpacetimePoint hi;
  int n = 3;
  int nt = 2;
};

struct WitnessSteps {
  double inner = 1e-3;  // A_k and the Laplacian inside E_k
  double outer = 1e-2;  // d_t, d_k and the curl
};

/// Max over the box and over pairs j < k of |d_j E_k - d_k E_j|, where
///   E_k = d_t(psi^{-1} d_k psi) - 2 i D d_k(Laplacian(psi) psi^{-1}).
/// Vanishes (to discretisation noise) when E is a gradient.
double gradient_witness(const QuaternionField& psi, double D, const SampleBox& region,
                        const WitnessSteps& steps = {});

/// Known-gradient control: a complex three-wave superposition
///   e^{i(1.2x - 0.8y + 0.5z - 0.9t)} + 0.4 e^{i(-0.6x + 1.1y + 0.9z - 0.7t)}
///   + 0.2 e^{i(0.9x + 0.4y - 1.3z - t)},
/// bounded away from zero (|psi| >= 0.4). Any complex psi gives a gradient E.
QuaternionField witness_control_field();

/// Witness of the control field on the same box and steps: the finite
/// difference noise floor.
double witness_noise_floor(double D, const SampleBox& region, const WitnessSteps& steps = {});

/// A witness counts as zero below this multiple of the noise floor.
inline constexpr double kWitnessZeroFactor = 100.0;

/// chi' = sigma . (i hbar grad^ - (e/c) A) phi' / (2 m c), where grad^ is the
/// contravariant gradient -d_k, so i hbar grad^ is the momentum operator.
Spinor2 small_component(const PauliField& phi, const EMField& em, const SpacetimePoint& pt,
                        const ChargedConstants& k, const FdSteps& steps = {});

/// i hbar d_t phi' - [ (1/2m)(i hbar grad^ - (e/c)A)^2 - (g/2)(e hbar/2mc) sigma.B + e A0 ] phi'.
Spinor2 pauli_residual(const PauliField& phi, const EMField& em, const SpacetimePoint& pt,
                       const ChargedConstants& k, const FdSteps& steps = {});

/// Dirac-representation gamma^mu, signature (+,-,-,-).
Mat4c gamma_matrix(int mu);

/// Bi-spinor column (a0, a1, a2, a3) of a biquaternion and back.
Spinor4 to_spinor(const Biquaternion& q);
Biquaternion from_spinor(const Spinor4& s);

/// [gamma^mu (i hbar d_mu - (e/c) A_mu) - m c] psi with d_0 = (1/c) d_t and
/// A_mu = (A0, -A). Uses the field's exact derivatives; hbar, m and c come
/// from the field constants.
Biquaternion dirac_residual(const SpinorField& psi, const EMField& em, const SpacetimePoint& pt,
                            double charge = 1.0);

/// Unit-norm positive-energy free Dirac spinor (phi, c sigma.p/(E + m c^2) phi)
/// for the given large-component spin state, with E = sqrt(p^2 c^2 + m^2 c^4).
Biquaternion dirac_spinor(const Vec3& p, const Spinor2& spin, const Constants& k);

double on_shell_energy(const Vec3& p, const Constants& k);

/// Large components with the rest phase removed: (a0, a1) exp(i m c^2 t / hbar).
PauliField pauli_limit(const SpinorField& dirac, const Constants& k);

}  // namespace scalerel
