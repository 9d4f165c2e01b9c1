#pragma once

#include <vector>

#include "scalerel/quaternion.hpp"

namespace scalerel {

/// Generator in the normalised frame: segments chain from (0,0,0) to (0,0,1).
struct GeneratorSpec {
  std::vector<Vec3> segments;

  std::size_t count() const { return segments.size(); }
  /// Common segment length relative to the unit span.
  double ratio() const;
  /// Throws GeometryInvalid unless the segments chain to (0,0,1), share one
  /// length r and N r >= 1.
  void validate(double tol = 1e-12) const;
};

/// Nine segments of length 1/3 winding about the span axis: each rises 1/9
/// with transverse part sqrt(8)/9 at azimuth phase + 2 pi turns i / 9.
/// turns must be an integer that is not a multiple of 9, otherwise the
/// segments do not chain and GeometryInvalid is thrown. With turns = 2 every
/// generator point stays within one span of the start, so divider steps of
/// r^k land on the level-k vertices; turns = 1 bulges past that sphere.
GeneratorSpec helical_generator(double turns = 2.0, double phase = 0.0);

/// Four segments of length 1/3 in the x-z plane (Koch triangle bump).
GeneratorSpec koch_generator();

/// n collinear segments of length 1/n.
GeneratorSpec straight_generator(int n = 3);

/// Four equal segments alternating +-amplitude along x; planar, no winding.
GeneratorSpec zigzag_generator(double amplitude = 0.25);

struct FractalCurve {
  std::vector<Vec3> vertices;
  int level = 0;
  std::size_t n = 1;   // generator segment count
  double r = 1.0;      // generator length ratio

  double length() const;
};

/// Self-similar substitution: every segment is replaced by a copy of the
/// generator scaled to its length and carried by the segment's frame. The
/// child frame composes the parent frame with the minimal rotation taking z
/// to the generator segment. Level 0 is the straight unit span.
FractalCurve iterate(const GeneratorSpec& gen, int level);

/// log N / log(1/r), with 1/r snapped to an integer within rounding.
double similarity_dimension(const GeneratorSpec& gen);

/// Compass (divider) estimate: walk the curve with chord eps = r^k for
/// k = 1..level, fit log length against log(1/eps) and add one.
/// Throws InsufficientData below level 3 or with fewer than 100 segments.
double measured_dimension(const FractalCurve& curve);

/// Length of the polyline measured with a fixed chord eps (compass walk).
double compass_length(const std::vector<Vec3>& vertices, double eps);

/// Spin of the curve rescaled so the span is one de Broglie wavelength
/// lambda = 2 pi hbar/(m v) and traversed at uniform speed in T = lambda/v:
/// (1/T) * integral of m r^2 dphi/dt dt about the span axis.
/// Throws GeometryInvalid when the span is degenerate.
double curve_spin(const FractalCurve& curve, double m, double v, double hbar = 1.0);

/// q^(D_F - 2). Throws std::invalid_argument for q <= 0.
double scaling_factor(double q, double D_F);

/// Cylindrical rescaling about the span axis: r -> r/q and the unwrapped
/// azimuth phi -> q^D_F phi. Segments are first subdivided so that no
/// rescaled piece turns by more than max_dphi.
FractalCurve rescale_spiral(const FractalCurve& curve, double q, double D_F,
                            double max_dphi = 0.01);

}  // namespace scalerel
