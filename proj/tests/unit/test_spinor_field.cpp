#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "scalerel/error.hpp"
#include "scalerel/spinor_field.hpp"

using namespace scalerel;

TEST(SpacetimePoint, Coordinates) {
  const SpacetimePoint p{1.0, 2.0, 3.0, 4.0};
  for (int mu = 0; mu < 4; ++mu) EXPECT_EQ(p.coord(mu), 1.0 + mu);
  EXPECT_EQ(p.shifted(2, 0.5).y, 3.5);
  EXPECT_EQ(p.shifted(0, -1.0).t, 0.0);
}

TEST(PlaneWave, Value) {
  const Constants k{0.8, 1.0, 1.0, 0.8};
  const Vec3 p(0.4, -0.2, 1.1);
  const double E = 0.9;
  const Biquaternion A(Complex(0.3, 0.1), 0.5, Complex(0.0, -0.2), 0.7);
  const SpinorField f = plane_wave(A, p, E, k);
  const SpacetimePoint pt{0.6, -0.3, 0.2, 1.4};
  const Complex phase = std::exp(kI * (p.dot(pt.position()) - E * pt.t) / k.hbar);
  EXPECT_LT(max_abs_diff(f.evaluate(pt), A * phase), 1e-15);
  EXPECT_FALSE(f.has_spin());
}

TEST(PlaneWave, AnalyticDerivatives) {
  const Constants k{0.8, 1.0, 1.0, 0.8};
  const Vec3 p(0.4, -0.2, 1.1);
  const SpinorField f = plane_wave(Biquaternion::one(), p, 0.9, k);
  const SpacetimePoint pt{0.6, -0.3, 0.2, 1.4};
  const Biquaternion v = f.evaluate(pt);
  EXPECT_LT(max_abs_diff(f.partial(pt, 0), v * (-kI * 0.9 / k.hbar)), 1e-14);
  for (int j = 1; j <= 3; ++j) {
    EXPECT_LT(max_abs_diff(f.partial(pt, j), v * (kI * p[j - 1] / k.hbar)), 1e-14);
  }
}

TEST(SpiralField, AzimuthalPhase) {
  const Constants k;
  const SpinorField f = plane_wave(Biquaternion::one(), Vec3::Zero(), 0.0, k, 1.0);
  EXPECT_TRUE(f.has_spin());
  EXPECT_LT(max_abs_diff(f.evaluate({0.0, 0.0, 1.0, 0.0}), Biquaternion(kI, 0.0, 0.0, 0.0)), 1e-15);
  EXPECT_LT(max_abs_diff(f.evaluate({0.0, -1.0, 0.0, 0.0}), Biquaternion(-1.0, 0.0, 0.0, 0.0)), 1e-15);
  // d phi / dy at (r, 0) is 1/r.
  const Biquaternion dy = f.partial({0.0, 2.0, 0.0, 0.0}, 2);
  EXPECT_LT(max_abs_diff(dy, Biquaternion(0.5 * kI, 0.0, 0.0, 0.0)), 1e-15);
}

TEST(SpiralField, AxisSingularity) {
  const SpinorField f = plane_wave(Biquaternion::one(), Vec3::Zero(), 0.0, {}, 0.5);
  EXPECT_THROW(f.evaluate({0.0, 0.0, 0.0, 3.0}), AxisSingularity);
  EXPECT_THROW(f.partial({0.0, 0.0, 0.0, 3.0}, 1), AxisSingularity);
  EXPECT_THROW(partial_fd(f, {0.0, 1e-5, 0.0, 0.0}, 1, 1e-4), AxisSingularity);
  // No spin: the axis is an ordinary point.
  const SpinorField g = plane_wave(Biquaternion::one(), Vec3(0, 0, 1), 0.5, {});
  EXPECT_NO_THROW(g.evaluate({0.0, 0.0, 0.0, 3.0}));
}

TEST(SpiralField, BranchCut) {
  const SpinorField f = plane_wave(Biquaternion::one(), Vec3::Zero(), 0.0, {}, 0.5);
  const SpacetimePoint below{0.0, -1.0, -1e-9, 0.0};
  const Biquaternion on_branch = f.evaluate_on_branch(below, std::numbers::pi);
  EXPECT_LT(max_abs_diff(on_branch, Biquaternion(std::exp(kI * 0.5 * (std::numbers::pi + 1e-9)), 0.0,
                                                 0.0, 0.0)),
            1e-12);
}

TEST(FiniteDifference, MatchesAnalytic) {
  const Constants k;
  const SpinorField f = dezael_field(CTSpinor{0.7, 0.3}.value(), CTSpinor{2.1, -0.4}.value(),
                                     Vec3(0.1, 0.2, 0.9), Vec3(0.1, 0.2, 0.9), 1.0, 1.5, 0.5, 0.5, k);
  const SpacetimePoint pt{0.2, 0.8, -0.5, 0.3};
  for (int mu = 0; mu < 4; ++mu) {
    EXPECT_LT(max_abs_diff(partial_fd(f, pt, mu, 1e-5), f.partial(pt, mu)), 1e-9) << mu;
    EXPECT_LT(max_abs_diff(partial_analytic(f, pt, mu), f.partial(pt, mu)), 1e-15) << mu;
  }
  EXPECT_THROW(partial_fd(f, pt, 1, 0.0), std::invalid_argument);
}

TEST(DezaelField, RequiresSharedMomentumAndSpin) {
  const Biquaternion a = Biquaternion::one();
  EXPECT_THROW(dezael_field(a, a, Vec3(0, 0, 1), Vec3(0, 0, 2), 1.0, 1.0, 0.5, 0.5, {}),
               std::invalid_argument);
  EXPECT_THROW(dezael_field(a, a, Vec3(0, 0, 1), Vec3(0, 0, 1), 1.0, 1.0, 0.5, 0.6, {}),
               std::invalid_argument);
}

TEST(DezaelField, IsSumOfTerms) {
  const Constants k;
  const Biquaternion a0 = CTSpinor{0.7, 0.3}.value(), a1 = CTSpinor{2.1, -0.4}.value();
  const Vec3 p(0.0, 0.0, 1.0);
  const SpinorField f = dezael_field(a0, a1, p, p, 1.0, 1.5, 0.5, 0.5, k);
  const SpacetimePoint pt{0.4, 0.3, 0.6, -0.2};
  const Biquaternion sum = plane_wave(a0, p, 1.0, k, 0.5).evaluate(pt) +
                           plane_wave(a1, p, 1.5, k, 0.5).evaluate(pt);
  EXPECT_LT(max_abs_diff(f.evaluate(pt), sum), 1e-15);
}

TEST(CTSpinor, Components) {
  const Biquaternion up = CTSpinor{0.0, 0.8}.value();
  EXPECT_LT(max_abs_diff(up, Biquaternion(std::exp(-0.4 * kI), 0.0, 0.0, 0.0)), 1e-15);
  const Biquaternion s = CTSpinor{1.3, -0.6}.value();
  EXPECT_NEAR(s.hermitian_norm2(), 1.0, 1e-15);
  EXPECT_EQ(s[2], Complex(0.0));
  EXPECT_EQ(s[3], Complex(0.0));
  EXPECT_LT(std::abs(s[1] - std::sin(0.65) * std::exp(-0.3 * kI)), 1e-15);
}
