#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scalerel/error.hpp"
#include "scalerel/velocity.hpp"

using namespace scalerel;

namespace {

std::mt19937_64 rng(77);

double uni(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SpacetimePoint off_axis() {
  const double rho = uni(0.3, 1.5), a = uni(-3.0, 3.0);
  return {uni(), rho * std::cos(a), rho * std::sin(a), uni()};
}

SpinorField large_only(const Constants& k) {
  const Vec3 p(uni(), uni(), uni());
  const double sigma = uni(0.2, 1.0);
  return dezael_field(CTSpinor{uni(0, 3), uni(-3, 3)}.value(),
                      CTSpinor{uni(0, 3), uni(-3, 3)}.value() * 0.5, p, p, uni(0.5, 1.5),
                      uni(0.5, 1.5), sigma, sigma, k);
}

Biquaternion scalar(double v) { return {v, 0.0, 0.0, 0.0}; }

}  // namespace

TEST(BqVelocity, PlaneWave) {
  const Constants k{1.0, 1.3, 2.0, 1.0};
  for (int n = 0; n < 100; ++n) {
    const Vec3 p(uni(-2, 2), uni(-2, 2), uni(-2, 2));
    const double E = uni(0.5, 3.0);
    const SpinorField f = plane_wave(CTSpinor{uni(0, 3), uni(-3, 3)}.value(), p, E, k);
    const SpacetimePoint pt{uni(), uni(), uni(), uni()};
    const BqVelocity v = bq_velocity(f, pt);
    EXPECT_LT(max_abs_diff(v[0], scalar(E / (k.m * k.c))), 1e-10);
    for (int j = 1; j <= 3; ++j) ASSERT_LT(max_abs_diff(v[j], scalar(p[j - 1] / k.m)), 1e-10);
    const BqVelocity w = bq_velocity_fd(f, pt, 1e-5);
    ASSERT_LT(max_abs_diff(w, v), 1e-6);
  }
}

TEST(BqVelocity, ActionScaleMultiplies) {
  const Constants k{1.0, 1.0, 1.0, 3.0};
  const SpinorField f = plane_wave(Biquaternion::one(), Vec3(0.2, 0.0, 0.0), 0.1, k);
  EXPECT_LT(max_abs_diff(bq_velocity(f, {})[1], scalar(0.6)), 1e-14);
}

TEST(BqVelocity, SpiralTangentialSpeed) {
  const Constants k;
  const double sigma = 0.7, r = 1.6;
  const SpinorField f = plane_wave(Biquaternion::one(), Vec3(0, 0, 0.5), 0.2, k, sigma);
  const BqVelocity v = bq_velocity(f, {0.0, r, 0.0, 0.1});
  EXPECT_LT(max_abs_diff(v[1], scalar(0.0)), 1e-14);
  EXPECT_LT(max_abs_diff(v[2], scalar(sigma / (k.m * r))), 1e-14);
  EXPECT_LT(max_abs_diff(v[3], scalar(0.5)), 1e-14);
}

TEST(BqVelocity, ZeroDivisor) {
  const SpinorField f = plane_wave(Biquaternion(1.0, kI, 0.0, 0.0), Vec3(0, 0, 1), 0.5, {});
  EXPECT_THROW(bq_velocity(f, {}), ZeroDivisor);
}

TEST(Components, PlaneWaveHasOnlyPlusPlus) {
  const Constants k{1.0, 2.0, 1.0, 1.0};
  const Vec3 p(0.3, -0.4, 0.8);
  const SpinorField f = plane_wave(Biquaternion::one(), p, 1.1, k);
  const VelocityComponents c = component_velocities(f, {0.1, 0.2, 0.3, 0.4});
  // V = v_pp real scalar: (v_pp + v_mm)/2 = v_pp and (v_pp - v_mm)/2 = 0 force v_mm = v_pp.
  const Vec4 expect(1.1 / 2.0, 0.15, -0.2, 0.4);
  EXPECT_LT((c.v_pp - expect).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((c.v_mm - expect).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(c.v_pm.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(c.max_tilde(), 1e-14);
}

TEST(Components, RecomposeClosure) {
  const Constants k;
  for (int n = 0; n < 100; ++n) {
    const SpinorField f = large_only(k);
    const SpacetimePoint pt = off_axis();
    const VelocityComponents c = component_velocities(f, pt);
    ASSERT_LT(max_abs_diff(recompose(c), bq_velocity(f, pt)), 1e-10);
    ASSERT_LT(c.max_tilde(), 1e-10);
  }
}

TEST(Components, RecomposeClosureWithSmallComponents) {
  const Constants k;
  const Vec3 p(0.2, 0.1, 0.7);
  const Biquaternion a0(Complex(0.6, 0.1), Complex(0.2, -0.3), Complex(0.1, 0.2), Complex(-0.2, 0.1));
  const Biquaternion a1(Complex(0.1, 0.4), Complex(-0.3, 0.2), Complex(0.2, 0.0), Complex(0.0, 0.3));
  const SpinorField f = dezael_field(a0, a1, p, p, 1.0, 1.4, 0.5, 0.5, k);
  const SpacetimePoint pt{0.3, 0.5, -0.6, 0.2};
  const VelocityComponents c = component_velocities(f, pt);
  EXPECT_LT(max_abs_diff(recompose(c), bq_velocity(f, pt)), 1e-10);
  EXPECT_GT(c.max_tilde(), 1e-3);
}

TEST(Components, RecomposeFormula) {
  VelocityComponents c;
  c.v_pp = Vec4(1, 2, 3, 4);
  c.v_mm = Vec4(3, 2, 1, 0);
  c.v_pm = Vec4(0, 1, 0, 0);
  c.vt_pp = Vec4(0, 0, 2, 0);
  const BqVelocity v = recompose(c);
  EXPECT_EQ(v[0][0], Complex(2.0, 1.0));  // (1+3)/2 - i (1-3)/2
  EXPECT_EQ(v[3][0], Complex(2.0, -2.0));
  EXPECT_EQ(v[1][1], Complex(0.5, -0.5));
  EXPECT_EQ(v[2][2], Complex(1.0, -1.0));
}

TEST(RejectedAssignment, NonzeroOnLargeOnlyField) {
  const Constants k;
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const SpinorField f = large_only(k);
    worst = std::max(worst, rejected_assignment_vt_mm(f, off_axis()).cwiseAbs().maxCoeff());
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(NonrelReduce, RestFrameV0IsC) {
  const Constants k{0.7, 1.1, 2.5, 0.7};
  for (int n = 0; n < 50; ++n) {
    const double a = uni(0.0, 6.28);
    const SpinorField f =
        plane_wave(Biquaternion(std::cos(a), std::sin(a), 0.0, 0.0), Vec3::Zero(), k.m * k.c * k.c, k);
    const SpacetimePoint pt{uni(), uni(), uni(), uni()};
    const PauliVelocity v = nonrel_reduce(f, pt);
    ASSERT_LT(std::abs(v.V0 - Complex(k.c)), 1e-10);
    // The bracket still carrying the rest phase rotates with t.
    const Complex expect = k.c * std::exp(-2.0 * kI * k.m * k.c * k.c * pt.t / k.hbar);
    ASSERT_LT(std::abs(v.V0_with_rest_phase - expect), 1e-10);
  }
}

TEST(NonrelReduce, SpatialMatchesFullVelocity) {
  const Constants k;
  const Vec3 p(0.01, 0.0, 0.02);
  const SpinorField f = plane_wave(Biquaternion(0.6, 0.8, 0.0, 0.0), p, k.m + 0.5 * p.squaredNorm(), k);
  const PauliVelocity v = nonrel_reduce(f, {0.3, 0.1, 0.2, 0.3});
  for (int j = 0; j < 3; ++j) EXPECT_LT(max_abs_diff(v.Vk[j], scalar(p[j] / k.m)), 1e-12);
}

TEST(NonrelReduce, Errors) {
  const Constants k;
  const SpinorField small = plane_wave(Biquaternion(0.6, 0.0, 0.8, 0.0), Vec3::Zero(), 1.0, k);
  EXPECT_THROW(nonrel_reduce(small, {}), SmallComponentsNotSmall);
  const SpinorField big = plane_wave(Biquaternion(2.0, 0.0, 0.0, 0.0), Vec3::Zero(), 1.0, k);
  EXPECT_THROW(nonrel_reduce(big, {}), NotNormalized);
}
