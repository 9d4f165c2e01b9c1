#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Geometry>

#include "scalerel/error.hpp"
#include "scalerel/hyperhelix.hpp"

using namespace scalerel;

TEST(Generator, Families) {
  for (const GeneratorSpec& g :
       {helical_generator(), helical_generator(1.0, 0.3), koch_generator(), straight_generator(3),
        zigzag_generator()}) {
    EXPECT_NO_THROW(g.validate());
    Vec3 end = Vec3::Zero();
    for (const Vec3& s : g.segments) {
      EXPECT_NEAR(s.norm(), g.ratio(), 1e-14);
      end += s;
    }
    EXPECT_LT((end - Vec3(0, 0, 1)).norm(), 1e-14);
  }
  EXPECT_EQ(helical_generator().count(), 9u);
  EXPECT_NEAR(helical_generator().ratio(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(koch_generator().count(), 4u);
}

TEST(Generator, Invalid) {
  EXPECT_THROW(helical_generator(0.5), GeometryInvalid);
  EXPECT_THROW(helical_generator(9.0), GeometryInvalid);
  GeneratorSpec open{{Vec3(0, 0, 0.5), Vec3(0.5, 0, 0)}};
  EXPECT_THROW(open.validate(), GeometryInvalid);
  EXPECT_THROW(iterate(open, 2), GeometryInvalid);
  GeneratorSpec unequal{{Vec3(0, 0, 0.25), Vec3(0, 0, 0.75)}};
  EXPECT_THROW(unequal.validate(), GeometryInvalid);
}

TEST(Iterate, LengthAndVertexCount) {
  const GeneratorSpec g = helical_generator();
  const FractalCurve c0 = iterate(g, 0);
  ASSERT_EQ(c0.vertices.size(), 2u);
  EXPECT_DOUBLE_EQ(c0.length(), 1.0);
  for (int L = 1; L <= 4; ++L) {
    const FractalCurve c = iterate(g, L);
    EXPECT_EQ(c.vertices.size(), static_cast<std::size_t>(std::pow(9, L)) + 1);
    EXPECT_NEAR(c.length() / std::pow(3.0, L), 1.0, 1e-12);
    EXPECT_LT((c.vertices.front()).norm(), 1e-15);
    EXPECT_LT((c.vertices.back() - Vec3(0, 0, 1)).norm(), 1e-12);
  }
  EXPECT_EQ(iterate(g, 3).vertices.size(), 730u);
  const FractalCurve k = iterate(koch_generator(), 5);
  EXPECT_NEAR(k.length(), std::pow(4.0 / 3.0, 5), 1e-12);
}

TEST(Iterate, SelfSimilar) {
  // The first N^(L-1) segments of level L are the level L-1 curve scaled by r
  // and carried onto the first generator segment.
  const GeneratorSpec g = helical_generator();
  const FractalCurve a = iterate(g, 2), b = iterate(g, 3);
  const Vec3 head = b.vertices[81];
  EXPECT_NEAR((head - b.vertices[0]).norm(), g.ratio(), 1e-12);
  EXPECT_LT((head - a.vertices[9]).norm(), 1e-12);
}

TEST(Dimension, Similarity) {
  EXPECT_DOUBLE_EQ(similarity_dimension(helical_generator()), std::log(9.0) / std::log(3.0));
  EXPECT_NEAR(similarity_dimension(helical_generator()), 2.0, 1e-15);
  EXPECT_NEAR(similarity_dimension(koch_generator()), std::log(4.0) / std::log(3.0), 1e-15);
  EXPECT_NEAR(similarity_dimension(straight_generator(3)), 1.0, 1e-15);
}

TEST(Dimension, Measured) {
  EXPECT_NEAR(measured_dimension(iterate(helical_generator(), 5)), 2.0, 0.1);
  EXPECT_NEAR(measured_dimension(iterate(straight_generator(3), 5)), 1.0, 0.01);
  EXPECT_NEAR(measured_dimension(iterate(koch_generator(), 5)), 1.26, 0.05);
}

TEST(Dimension, ConvergesMonotonically) {
  const GeneratorSpec g = helical_generator(1.0);
  double prev = 1e9;
  for (int L = 3; L <= 6; ++L) {
    const double err = std::abs(measured_dimension(iterate(g, L)) - similarity_dimension(g));
    EXPECT_LT(err, prev) << L;
    prev = err;
  }
}

TEST(Dimension, InsufficientData) {
  EXPECT_THROW(measured_dimension(iterate(helical_generator(), 2)), InsufficientData);
  EXPECT_THROW(measured_dimension(iterate(straight_generator(3), 3)), InsufficientData);
}

TEST(Compass, StraightAndKoch) {
  const std::vector<Vec3> line{Vec3(0, 0, 0), Vec3(0, 0, 1)};
  EXPECT_NEAR(compass_length(line, 0.25), 1.0, 1e-12);
  const FractalCurve k = iterate(koch_generator(), 3);
  // Divider steps of r^j land on the level-j vertices.
  EXPECT_NEAR(compass_length(k.vertices, 1.0 / 3.0), 4.0 / 3.0, 1e-9);
  EXPECT_NEAR(compass_length(k.vertices, 1.0 / 9.0), 16.0 / 9.0, 1e-9);
}

TEST(Spin, StraightAndZigzagVanish) {
  EXPECT_NEAR(curve_spin(iterate(straight_generator(3), 3), 1.0, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(curve_spin(iterate(zigzag_generator(), 4), 1.0, 1.0), 0.0, 1e-10);
}

TEST(Spin, ConvergesBetweenLevels) {
  const GeneratorSpec g = helical_generator();
  const double s4 = curve_spin(iterate(g, 4), 1.0, 1.0);
  const double s5 = curve_spin(iterate(g, 5), 1.0, 1.0);
  EXPECT_GT(std::abs(s5), 0.0);
  EXPECT_LT(std::abs(s5 - s4) / std::abs(s5), 0.05);
}

TEST(Spin, RigidMotionInvariance) {
  const FractalCurve c = iterate(helical_generator(), 3);
  const double s = curve_spin(c, 1.3, 0.7, 0.9);
  FractalCurve about_axis = c, moved = c;
  const Eigen::AngleAxisd spin_z(0.8, Vec3::UnitZ());
  const Eigen::AngleAxisd tilt(1.1, Vec3(1, -2, 0.5).normalized());
  const Vec3 shift(3.0, -1.0, 2.5);
  for (auto& v : about_axis.vertices) v = spin_z * v;
  for (auto& v : moved.vertices) v = tilt * (2.0 * v) + shift;
  EXPECT_NEAR(curve_spin(about_axis, 1.3, 0.7, 0.9), s, 1e-12);
  // Scale changes only the span; sigma is defined on the rescaled curve.
  EXPECT_NEAR(curve_spin(moved, 1.3, 0.7, 0.9), s, 1e-12);
}

TEST(Spin, DegenerateSpan) {
  FractalCurve c;
  c.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 0)};
  EXPECT_THROW(curve_spin(c, 1.0, 1.0), GeometryInvalid);
}

TEST(Scaling, Factor) {
  EXPECT_DOUBLE_EQ(scaling_factor(3.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(scaling_factor(1.0, 1.3), 1.0);
  EXPECT_NEAR(scaling_factor(4.0, 1.5), 0.5, 1e-15);
  EXPECT_THROW(scaling_factor(0.0, 2.0), std::invalid_argument);
}

TEST(Scaling, RescaledSpin) {
  const GeneratorSpec g = helical_generator();
  const FractalCurve c = iterate(g, 4);
  const double s = curve_spin(c, 1.0, 1.0);
  for (double D : {2.0, 1.5}) {
    for (double q : {2.0, 3.0, 9.0}) {
      const double ratio = curve_spin(rescale_spiral(c, q, D), 1.0, 1.0) / s;
      EXPECT_NEAR(ratio / std::pow(q, D - 2.0), 1.0, 0.02) << D << " " << q;
    }
  }
}
