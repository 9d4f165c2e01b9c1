#pragma once

#include <array>

#include <Eigen/Core>

#include "scalerel/quaternion.hpp"
#include "scalerel/spinor_field.hpp"

namespace scalerel {

using Vec4 = Eigen::Vector4d;

/// Biquaternionic 4-velocity, one biquaternion per component V^0..V^3.
struct BqVelocity {
  std::array<Biquaternion, 4> mu;

  const Biquaternion& operator[](std::size_t i) const { return mu[i]; }
  Biquaternion& operator[](std::size_t i) { return mu[i]; }
};

double max_abs_diff(const BqVelocity& a, const BqVelocity& b);

/// The eight classical 4-velocities. Suffixes give the (t, x) signs: pm is
/// v_{+-}; vt_ marks the tilde components.
struct VelocityComponents {
  Vec4 v_pp = Vec4::Zero();
  Vec4 v_pm = Vec4::Zero();
  Vec4 v_mp = Vec4::Zero();
  Vec4 v_mm = Vec4::Zero();
  Vec4 vt_pp = Vec4::Zero();
  Vec4 vt_pm = Vec4::Zero();
  Vec4 vt_mp = Vec4::Zero();
  Vec4 vt_mm = Vec4::Zero();

  double max_tilde() const;
};

/// V^mu = i (S0/m) psi^{-1} d^mu psi, with d^mu = ((1/c) d_t, -grad).
///
/// For psi = exp((i/hbar)(p.r - E t)) this gives V = (E/(m c), p/m); on a
/// spiral field the spatial part picks up sigma/(m r) along u_phi.
/// Throws ZeroDivisor when psi(pt) is not invertible.
BqVelocity bq_velocity(const SpinorField& field, const SpacetimePoint& pt);

/// Same map with central finite-difference derivatives of step h.
BqVelocity bq_velocity_fd(const SpinorField& field, const SpacetimePoint& pt, double h = 1e-4);

/// Component velocities from the eight real component fields phi_k, chi_k and
/// their derivatives. The left factor is psi / N(psi) with N the complex
/// norm, so for unit complex norm the sums are the literal component
/// formulas; in general they resolve psi^{-1} d psi rather than conj(psi) d psi.
VelocityComponents component_velocities(const SpinorField& field, const SpacetimePoint& pt);

/// Symmetric assembly of V^mu from the eight components:
///   scalar: (v_pp + v_mm)/2 - i (v_pp - v_mm)/2, e1: same with (v_pm, v_mp),
///   e2: (vt_pp, vt_mm), e3: (vt_pm, vt_mp).
BqVelocity recompose(const VelocityComponents& c);

/// Tilde-minus-minus component under the older asymmetric assignment, where
/// the scalar part pairs v_pp with vt_mm. Kept only as a comparison fixture:
/// it does not vanish on large-component-only fields.
Vec4 rejected_assignment_vt_mm(const SpinorField& field, const SpacetimePoint& pt);

struct ReduceOptions {
  // Small components must satisfy max(|a2|, |a3|) <= small_threshold * |psi|.
  double small_threshold = 1e-8;
  // | |phi'|^2 - 1 | must not exceed this.
  double norm_tolerance = 1e-8;
};

/// Non-relativistic degeneracy to a Pauli quaternionic 3-velocity.
struct PauliVelocity {
  /// c (S0/hbar) [(phi'0 + i chi'0)^2 + (phi'1 + i chi'1)^2] on the rest-phase
  /// stripped spinor phi'. Equals c for unit-norm real-component spinors.
  Complex V0;
  /// The same bracket still multiplied by the rest phase exp(-2 i m c^2 t/hbar).
  Complex V0_with_rest_phase;
  /// Spatial components; only the 1 and e1 coefficients are populated.
  std::array<Biquaternion, 3> Vk;
};

/// Drops the small components, strips exp(-i m c^2 t/hbar) from the large
/// ones and rebuilds V0 and V^k from the primed spinor.
/// Throws SmallComponentsNotSmall or NotNormalized on invalid input.
PauliVelocity nonrel_reduce(const SpinorField& field, const SpacetimePoint& pt,
                            const ReduceOptions& opts = {});

}  // namespace scalerel
