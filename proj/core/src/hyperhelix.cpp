#include "scalerel/hyperhelix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

#include "scalerel/error.hpp"

namespace scalerel {

namespace {

using Mat3 = Eigen::Matrix3d;

struct Frame {
  Vec3 start;
  Mat3 rot;
  double scale;
};

// Orthonormal frame (u, w, axis) about the span of a curve.
struct AxisFrame {
  Vec3 origin;
  Vec3 u;
  Vec3 w;
  Vec3 axis;
  double span;
};

AxisFrame axis_frame(const std::vector<Vec3>& v, const char* op) {
  if (v.size() < 2) throw GeometryInvalid(std::string("hyperhelix/") + op, "curve has no span");
  const Vec3 d = v.back() - v.front();
  const double span = d.norm();
  if (!(span > 1e-12)) {
    throw GeometryInvalid(std::string("hyperhelix/") + op, "degenerate span axis");
  }
  AxisFrame f;
  f.origin = v.front();
  f.axis = d / span;
  const Vec3 seed = std::abs(f.axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  f.u = (seed - seed.dot(f.axis) * f.axis).normalized();
  f.w = f.axis.cross(f.u);
  f.span = span;
  return f;
}

}  // namespace

double GeneratorSpec::ratio() const {
  if (segments.empty()) throw GeometryInvalid("hyperhelix/iterate", "empty generator");
  return segments.front().norm();
}

void GeneratorSpec::validate(double tol) const {
  if (segments.empty()) throw GeometryInvalid("hyperhelix/iterate", "empty generator");
  Vec3 sum = Vec3::Zero();
  for (const auto& s : segments) sum += s;
  if ((sum - Vec3::UnitZ()).norm() > tol) {
    throw GeometryInvalid("hyperhelix/iterate", "generator does not chain start to end");
  }
  const double r = ratio();
  for (const auto& s : segments) {
    if (std::abs(s.norm() - r) > tol) {
      throw GeometryInvalid("hyperhelix/iterate", "generator segments differ in length");
    }
  }
  if (static_cast<double>(segments.size()) * r < 1.0 - tol) {
    throw GeometryInvalid("hyperhelix/iterate", "generator shortens the curve (N r < 1)");
  }
}

GeneratorSpec helical_generator(double turns, double phase) {
  GeneratorSpec g;
  const double rise = 1.0 / 9.0;
  const double radial = std::sqrt(8.0) / 9.0;
  for (int i = 0; i < 9; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * turns * i / 9.0;
    g.segments.emplace_back(radial * std::cos(a), radial * std::sin(a), rise);
  }
  g.validate(1e-12);
  return g;
}

GeneratorSpec koch_generator() {
  const double third = 1.0 / 3.0;
  const double s = std::sqrt(3.0) / 6.0;
  return {{Vec3(0, 0, third), Vec3(s, 0, 1.0 / 6.0), Vec3(-s, 0, 1.0 / 6.0), Vec3(0, 0, third)}};
}

GeneratorSpec straight_generator(int n) {
  if (n < 1) throw std::invalid_argument("straight_generator: n must be >= 1");
  return {std::vector<Vec3>(static_cast<std::size_t>(n), Vec3(0, 0, 1.0 / n))};
}

GeneratorSpec zigzag_generator(double amplitude) {
  return {{Vec3(amplitude, 0, 0.25), Vec3(-amplitude, 0, 0.25), Vec3(amplitude, 0, 0.25),
           Vec3(-amplitude, 0, 0.25)}};
}

double FractalCurve::length() const {
  double L = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) L += (vertices[i + 1] - vertices[i]).norm();
  return L;
}

FractalCurve iterate(const GeneratorSpec& gen, int level) {
  if (level < 0) throw std::invalid_argument("iterate: level must be >= 0");
  gen.validate();
  const double r = gen.ratio();

  // Per generator segment: offset of its start and minimal rotation z -> dir.
  std::vector<Vec3> offsets;
  std::vector<Mat3> turns;
  Vec3 acc = Vec3::Zero();
  for (const auto& s : gen.segments) {
    offsets.push_back(acc);
    acc += s;
    turns.push_back(Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), s).toRotationMatrix());
  }

  std::vector<Frame> frames{{Vec3::Zero(), Mat3::Identity(), 1.0}};
  for (int l = 0; l < level; ++l) {
    std::vector<Frame> next;
    next.reserve(frames.size() * gen.count());
    for (const auto& f : frames) {
      for (std::size_t i = 0; i < gen.count(); ++i) {
        next.push_back({f.start + f.scale * (f.rot * offsets[i]), f.rot * turns[i], f.scale * r});
      }
    }
    frames = std::move(next);
  }

  FractalCurve c;
  c.level = level;
  c.n = gen.count();
  c.r = r;
  c.vertices.reserve(frames.size() + 1);
  for (const auto& f : frames) c.vertices.push_back(f.start);
  const Frame& last = frames.back();
  c.vertices.push_back(last.start + last.scale * last.rot.col(2));
  return c;
}

double similarity_dimension(const GeneratorSpec& gen) {
  gen.validate();
  double inv = 1.0 / gen.ratio();
  // Segment lengths come from norms; snap 1/r = 3 (say) back to the integer.
  if (const double k = std::round(inv); std::abs(inv - k) <= 1e-12 * k) inv = k;
  return std::log(static_cast<double>(gen.count())) / std::log(inv);
}

double compass_length(const std::vector<Vec3>& v, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("compass_length: eps must be positive");
  if (v.size() < 2) return 0.0;
  Vec3 centre = v.front();
  std::size_t seg = 0;  // current segment [v[seg], v[seg+1]]
  double t0 = 0.0;      // position along it
  double steps = 0.0;
  for (;;) {
    bool found = false;
    for (; seg + 1 < v.size(); ++seg, t0 = 0.0) {
      // First t >= t0 with |a + t d - centre| = eps.
      const Vec3 a = v[seg];
      const Vec3 d = v[seg + 1] - a;
      const double dd = d.squaredNorm();
      if (dd == 0.0) continue;
      const Vec3 ac = a - centre;
      const double b = ac.dot(d);
      const double cc = ac.squaredNorm() - eps * eps;
      const double disc = b * b - dd * cc;
      if (disc < 0.0) continue;
      const double sq = std::sqrt(disc);
      const double roots[2] = {(-b - sq) / dd, (-b + sq) / dd};
      // Exact-chord vertices land on t = 1 or t = 0 up to rounding.
      const double lo = t0 > 0.0 || steps == 0.0 ? t0 + 1e-12 : -1e-12;
      for (double t : roots) {
        if (t > lo && t <= 1.0 + 1e-12) {
          t = std::clamp(t, 0.0, 1.0);
          centre = a + t * d;
          t0 = t;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
    steps += 1.0;
  }
  return steps * eps + (v.back() - centre).norm();
}

double measured_dimension(const FractalCurve& curve) {
  const double segments = std::pow(static_cast<double>(curve.n), curve.level);
  if (curve.level < 3 || segments < 100.0) {
    throw InsufficientData("hyperhelix/measured_dimension",
                           "need level >= 3 and at least 100 segments");
  }
  const double span = (curve.vertices.back() - curve.vertices.front()).norm();
  std::vector<double> lx;
  std::vector<double> ly;
  for (int k = 1; k <= curve.level; ++k) {
    const double eps = std::pow(curve.r, k) * span;
    lx.push_back(std::log(1.0 / eps));
    ly.push_back(std::log(compass_length(curve.vertices, eps)));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx) + 1.0;
}

double curve_spin(const FractalCurve& curve, double m, double v, double hbar) {
  if (!(v > 0.0) || !(m > 0.0)) throw std::invalid_argument("curve_spin: m and v must be positive");
  const AxisFrame f = axis_frame(curve.vertices, "curve_spin");
  // Sum of projected cross products = integral of r^2 dphi on the unit-span curve.
  double area2 = 0.0;
  double pu = 0.0, pw = 0.0;
  for (std::size_t i = 0; i < curve.vertices.size(); ++i) {
    const Vec3 d = (curve.vertices[i] - f.origin) / f.span;
    const double u = d.dot(f.u);
    const double w = d.dot(f.w);
    if (i > 0) area2 += pu * w - pw * u;
    pu = u;
    pw = w;
  }
  // Span rescaled to lambda, period T = lambda / v: sigma = m lambda^2 K / T.
  const double lambda = 2.0 * std::numbers::pi * hbar / (m * v);
  const double T = lambda / v;
  return m * lambda * lambda * area2 / T;
}

double scaling_factor(double q, double D_F) {
  if (!(q > 0.0)) throw std::invalid_argument("scaling_factor: q must be positive");
  return std::pow(q, D_F - 2.0);
}

FractalCurve rescale_spiral(const FractalCurve& curve, double q, double D_F, double max_dphi) {
  if (!(q > 0.0)) throw std::invalid_argument("rescale_spiral: q must be positive");
  if (!(max_dphi > 0.0)) throw std::invalid_argument("rescale_spiral: max_dphi must be positive");
  const AxisFrame f = axis_frame(curve.vertices, "rescale_spiral");
  const double p = std::pow(q, D_F);

  auto cyl = [&](const Vec3& x) {
    const Vec3 d = x - f.origin;
    return Vec3(d.dot(f.u), d.dot(f.w), d.dot(f.axis));
  };
  auto emit = [&](double rho, double phi, double z) {
    const double R = rho / q;
    const double a = p * phi;
    return Vec3(f.origin + R * std::cos(a) * f.u + R * std::sin(a) * f.w + z * f.axis);
  };

  FractalCurve out;
  out.level = curve.level;
  out.n = curve.n;
  out.r = curve.r;
  Vec3 a = cyl(curve.vertices.front());
  double phi_prev = std::atan2(a.y(), a.x());
  out.vertices.push_back(emit(std::hypot(a.x(), a.y()), phi_prev, a.z()));
  for (std::size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
    const Vec3 b = cyl(curve.vertices[i + 1]);
    double dphi = std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x());
    while (dphi > std::numbers::pi) dphi -= 2.0 * std::numbers::pi;
    while (dphi <= -std::numbers::pi) dphi += 2.0 * std::numbers::pi;
    const int n_sub = static_cast<int>(std::ceil(p * std::abs(dphi) / max_dphi)) + 1;
    // Walk the original straight segment, tracking the unwrapped azimuth.
    double phi_run = phi_prev;
    double prev_local = std::atan2(a.y(), a.x());
    for (int s = 1; s <= n_sub; ++s) {
      const Vec3 x = a + (b - a) * (static_cast<double>(s) / n_sub);
      const double local = std::atan2(x.y(), x.x());
      double step = local - prev_local;
      while (step > std::numbers::pi) step -= 2.0 * std::numbers::pi;
      while (step <= -std::numbers::pi) step += 2.0 * std::numbers::pi;
      phi_run += step;
      prev_local = local;
      out.vertices.push_back(emit(std::hypot(x.x(), x.y()), phi_run, x.z()));
    }
    phi_prev = phi_run;
    a = b;
  }
  return out;
}

}  // namespace scalerel
