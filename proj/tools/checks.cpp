#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "scalerel/dynamics.hpp"
#include "scalerel/geodesic_sim.hpp"
#include "scalerel/hyperhelix.hpp"
#include "scalerel/quaternion.hpp"
#include "scalerel/spinor_field.hpp"
#include "scalerel/velocity.hpp"

namespace scalerel::cli {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  Vec3 vec(double a = 1.0) { return {uniform(-a, a), uniform(-a, a), uniform(-a, a)}; }
  Biquaternion biq() {
    return {Complex(uniform(), uniform()), Complex(uniform(), uniform()),
            Complex(uniform(), uniform()), Complex(uniform(), uniform())};
  }
  // Off-axis point with |rho| in [0.3, 1.5].
  SpacetimePoint off_axis() {
    const double rho = uniform(0.3, 1.5);
    const double a = uniform(-3.0, 3.0);
    return {uniform(), rho * std::cos(a), rho * std::sin(a), uniform()};
  }

 private:
  std::mt19937_64 rng_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CheckResult algebra(Sampler& s) {
  const auto t0 = std::chrono::steady_clock::now();
  double assoc = 0.0, norm = 0.0, inverse = 0.0, split = 0.0, homo = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Biquaternion a = s.biq(), b = s.biq(), c = s.biq();
    assoc = std::max(assoc, max_abs_diff((a * b) * c, a * (b * c)));
    norm = std::max(norm, std::abs((a * b).complex_norm() - a.complex_norm() * b.complex_norm()));
    if (std::abs(a.complex_norm()) > 1e-2) {
      inverse = std::max(inverse, max_abs_diff(a * a.inverse(), Biquaternion::one()));
    }
    split = std::max(split, max_abs_diff(symplectic_join(symplectic_split(a)), a));
    homo = std::max(homo, (to_matrix(a * b) - to_matrix(a) * to_matrix(b)).cwiseAbs().maxCoeff());
    homo = std::max(homo, max_abs_diff(from_matrix(to_matrix(a)), a));
  }
  const double t = seconds_since(t0);
  const double worst = std::max({assoc, norm, inverse, split, homo});
  return {"algebra", worst < 1e-12 && t < 5.0,
          Json{{"associativity", assoc}, {"norm", norm}, {"inverse", inverse},
               {"symplectic", split}, {"matrix", homo}}};
}

CheckResult pauli_identity(Sampler& s) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) worst = std::max(worst, pauli_identity_residual(s.vec(), s.vec()));
  return {"pauli_identity", worst < 1e-12, Json{{"residual", worst}}};
}

CheckResult plane_wave_velocity(Sampler& s) {
  Constants k{1.0, 1.3, 1.0, 1.0};
  double analytic = 0.0, fd = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 p = s.vec(2.0);
    const SpinorField f = plane_wave(Biquaternion::one(), p, 0.5 * p.squaredNorm() / k.m, k);
    const SpacetimePoint pt{s.uniform(), s.uniform(), s.uniform(), s.uniform()};
    const BqVelocity v = bq_velocity(f, pt);
    const BqVelocity w = bq_velocity_fd(f, pt, 1e-5);
    for (int j = 1; j <= 3; ++j) {
      const Biquaternion expect(p[j - 1] / k.m, 0.0, 0.0, 0.0);
      analytic = std::max(analytic, max_abs_diff(v[j], expect));
      fd = std::max(fd, max_abs_diff(w[j], expect));
    }
  }
  return {"plane_wave_velocity", analytic < 1e-10 && fd < 1e-6,
          Json{{"analytic", analytic}, {"finite_difference", fd}}};
}

CheckResult rest_frame_v0(Sampler& s) {
  Constants k{0.7, 1.1, 2.5, 0.7};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = s.uniform(0.0, 6.283185307179586);
    const SpinorField f = plane_wave(Biquaternion(std::cos(a), std::sin(a), 0.0, 0.0), Vec3::Zero(),
                                     k.m * k.c * k.c, k);
    const PauliVelocity v = nonrel_reduce(f, {s.uniform(), s.uniform(), s.uniform(), s.uniform()});
    worst = std::max(worst, std::abs(v.V0 - Complex(k.c)));
  }
  return {"rest_frame_v0", worst < 1e-10, Json{{"max_deviation", worst}}};
}

SpinorField large_only_dezael(Sampler& s, const Constants& k) {
  const Vec3 p = s.vec();
  const double sigma = s.uniform(0.2, 1.0);
  const Biquaternion a0 = CTSpinor{s.uniform(0.0, 3.0), s.uniform(-3.0, 3.0)}.value();
  const Biquaternion a1 = CTSpinor{s.uniform(0.0, 3.0), s.uniform(-3.0, 3.0)}.value() * 0.5;
  return dezael_field(a0, a1, p, p, s.uniform(0.5, 1.5), s.uniform(0.5, 1.5), sigma, sigma, k);
}

CheckResult decompose_recompose(Sampler& s) {
  Constants k{1.0, 1.0, 1.0, 1.0};
  double closure = 0.0, tilde = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpinorField f = large_only_dezael(s, k);
    const SpacetimePoint pt = s.off_axis();
    const VelocityComponents c = component_velocities(f, pt);
    closure = std::max(closure, max_abs_diff(recompose(c), bq_velocity(f, pt)));
    tilde = std::max(tilde, c.max_tilde());
  }
  return {"decompose_recompose", closure < 1e-10 && tilde < 1e-10,
          Json{{"closure", closure}, {"max_tilde", tilde}}};
}

CheckResult rejected_assignment(Sampler& s) {
  Constants k{1.0, 1.0, 1.0, 1.0};
  const SpinorField f = large_only_dezael(s, k);
  const double v = rejected_assignment_vt_mm(f, s.off_axis()).cwiseAbs().maxCoeff();
  return {"rejected_assignment", v > 1e-3, Json{{"vt_mm", v}}};
}

CheckResult gradient_witness_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleBox box{{0.0, -0.5, -0.5, -0.5}, {1.0, 0.5, 0.5, 0.5}, 3, 2};
  const double D = 0.5;
  const double floor = witness_noise_floor(D, box);
  const double zero = kWitnessZeroFactor * floor;
  const QuaternionField complex_field = [](const SpacetimePoint& p) {
    return Biquaternion(std::exp(kI * (p.x + 0.5 * p.y - 0.3 * p.z - 0.7 * p.t)) +
                            0.35 * std::exp(kI * (-0.4 * p.x + 0.9 * p.y + 0.2 * p.z - 0.5 * p.t)),
                        0.0, 0.0, 0.0);
  };
  const QuaternionField quaternion_field = [](const SpacetimePoint& p) {
    const Quaternion a{std::cos(p.x), std::sin(p.x), 0.0, 0.0};
    const Quaternion b{std::cos(p.y + p.t), 0.0, std::sin(p.y + p.t), 0.0};
    return Biquaternion(a * b);
  };
  const double wc = gradient_witness(complex_field, D, box);
  const double wq = gradient_witness(quaternion_field, D, box);
  const double t = seconds_since(t0);
  return {"gradient_witness", wc < zero && wq > 10.0 * zero && t < 30.0,
          Json{{"noise_floor", floor}, {"zero_tolerance", zero}, {"complex", wc},
               {"quaternionic", wq}}};
}

CheckResult dirac_pauli_limit() {
  const Constants k;
  const ChargedConstants kc;
  const Vec3 dir = Vec3(0.3, -0.5, 0.8).normalized();
  const SpacetimePoint pt{0.3, 0.2, -0.1, 0.4};
  std::vector<double> rel;
  double dirac = 0.0;
  for (double v : {0.1, 0.05, 0.025}) {
    const Vec3 p = v * dir;
    const SpinorField f =
        plane_wave(dirac_spinor(p, Spinor2(1.0, 0.0), k), p, on_shell_energy(p, k), k);
    dirac = std::max(dirac, dirac_residual(f, EMField::none(), pt).magnitude());
    const PauliField phi = pauli_limit(f, k);
    const double h = 1e-3 * 2.0 * 3.141592653589793 / p.norm();
    const Spinor2 r = pauli_residual(phi, EMField::none(), pt, kc, {h, h});
    rel.push_back(r.norm() / (0.5 * p.squaredNorm() * phi(pt).norm()));
  }
  const double r1 = rel[0] / rel[1], r2 = rel[1] / rel[2];
  return {"dirac_pauli_limit",
          std::abs(r1 - 4.0) <= 0.5 && std::abs(r2 - 4.0) <= 0.5 && dirac < 1e-10,
          Json{{"relative_residual", rel}, {"ratios", {r1, r2}}, {"dirac_residual", dirac}}};
}

CheckResult magnetic_moment() {
  const double B0 = 0.7;
  const EMField em = EMField::uniform_magnetic(Vec3(0.0, 0.0, B0));
  ChargedConstants kc;
  const double E = -kc.e * kc.hbar * B0 / (2.0 * kc.m * kc.c);
  const PauliField up = [E](const SpacetimePoint& p) {
    return Spinor2(std::exp(-kI * E * p.t), 0.0);
  };
  const double tol = 1e-8;
  const double r2 = pauli_residual(up, em, {0.2, 0.0, 0.0, 0.0}, kc).norm();
  kc.g = 1.0;
  const double r1 = pauli_residual(up, em, {0.2, 0.0, 0.0, 0.0}, kc).norm();
  return {"magnetic_moment", r2 < tol && r1 > 1e3 * tol,
          Json{{"residual_g2", r2}, {"residual_g1", r1}, {"tolerance", tol}}};
}

CheckResult geodesic_residual_suite() {
  const Vec3 p1(1.0, 0.2, 0.0), p2(-0.3, 0.5, 0.4);
  auto field = [&](double detune) -> QuaternionField {
    const double E1 = 0.5 * p1.squaredNorm(), E2 = 0.5 * p2.squaredNorm() + detune;
    return [=](const SpacetimePoint& p) {
      const Vec3 r = p.position();
      return Biquaternion(std::exp(kI * (p1.dot(r) - E1 * p.t)) +
                              0.5 * std::exp(kI * (p2.dot(r) - E2 * p.t)),
                          0.0, 0.0, 0.0);
    };
  };
  auto worst = [](const std::array<Biquaternion, 3>& r) {
    return std::max({r[0].magnitude(), r[1].magnitude(), r[2].magnitude()});
  };
  const SpacetimePoint pt{0.3, 0.1, 0.2, 0.3};
  const double on = worst(geodesic_residual(field(0.0), 0.5, pt));
  const double off = worst(geodesic_residual(field(0.1), 0.5, pt));
  return {"geodesic_residual", on < 1e-4 && off > 1e-2,
          Json{{"on_shell", on}, {"detuned_0.1", off}}};
}

CheckResult spiral_conservation() {
  SimConfig cfg;
  cfg.D = 0.0;
  cfg.dt = 1e-3;
  cfg.n_steps = 10000;
  cfg.m = 1.0;
  cfg.p0 = 1.0;
  cfg.sigma0 = 1.0;
  const Trajectory tr = integrate_deterministic(cfg);
  double lz = 0.0, r = 0.0;
  for (double v : lz_series(tr, cfg.m)) lz = std::max(lz, std::abs(v - cfg.sigma0));
  for (double v : radius_series(tr)) r = std::max(r, std::abs(v - 1.0));
  return {"spiral_conservation", lz < 1e-8 && r < 1e-8, Json{{"Lz_error", lz}, {"r_error", r}}};
}

CheckResult stochastic_scaling(std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_steps = 1'000'000;
  const Trajectory tr = integrate_stochastic(cfg);
  const Vec3 var = increment_variance(fractal_increments(tr, cfg), cfg.dt);
  const double var_err = (var / (2.0 * cfg.D) - Vec3::Ones()).cwiseAbs().maxCoeff();
  const ScalingFit fit = increment_scaling(tr, {1, 2, 3});

  SimConfig small = cfg;
  small.n_steps = 200;
  const bool reproducible = integrate_stochastic(small).positions == integrate_stochastic(small).positions;

  const auto t0 = std::chrono::steady_clock::now();
  SimConfig ens = cfg;
  ens.n_steps = 100;
  ens.n_traj = 10000;
  const EnsembleStats st = ensemble_run(ens);
  const double t = seconds_since(t0);

  const bool pass = var_err < 0.02 && std::abs(fit.H - 0.5) <= 0.05 &&
                    std::abs(fit.D_F - 2.0) <= 0.2 && reproducible && t < 60.0;
  return {"stochastic_scaling", pass,
          Json{{"increment_var", to_json(var)}, {"var_rel_error", var_err}, {"H", fit.H},
               {"D_F", fit.D_F}, {"reproducible", reproducible},
               {"ensemble_Lz_mean", st.Lz_mean}}};
}

CheckResult hyperhelix_suite() {
  const GeneratorSpec gen = helical_generator();
  const double sim = similarity_dimension(gen);
  const FractalCurve l4 = iterate(gen, 4);
  const FractalCurve l5 = iterate(gen, 5);
  const double measured = measured_dimension(l5);
  const double s4 = curve_spin(l4, 1.0, 1.0), s5 = curve_spin(l5, 1.0, 1.0);
  const double convergence = std::abs(s5 - s4) / std::abs(s5);
  Json table = Json::array();
  bool scaling_ok = true;
  for (double q : {2.0, 3.0, 9.0}) {
    const double ratio = curve_spin(rescale_spiral(l4, q, sim), 1.0, 1.0) / s4;
    const double expect = scaling_factor(q, sim);
    scaling_ok = scaling_ok && std::abs(ratio / expect - 1.0) <= 0.02;
    table.push_back(Json{{"q", q}, {"measured", ratio}, {"predicted", expect}});
  }
  return {"hyperhelix", std::abs(sim - 2.0) < 1e-12 && std::abs(measured - 2.0) <= 0.1 && scaling_ok &&
                            convergence <= 0.05,
          Json{{"similarity_dimension", sim}, {"measured_dimension_level5", measured},
               {"sigma_level4", s4}, {"sigma_level5", s5}, {"sigma_convergence", convergence},
               {"scaling", table}}};
}

}  // namespace

std::vector<CheckResult> run_checks(std::uint64_t seed) {
  Sampler s(seed);
  std::vector<CheckResult> out;
  out.push_back(algebra(s));
  out.push_back(pauli_identity(s));
  out.push_back(plane_wave_velocity(s));
  out.push_back(rest_frame_v0(s));
  out.push_back(decompose_recompose(s));
  out.push_back(rejected_assignment(s));
  out.push_back(gradient_witness_suite());
  out.push_back(geodesic_residual_suite());
  out.push_back(dirac_pauli_limit());
  out.push_back(magnetic_moment());
  out.push_back(spiral_conservation());
  out.push_back(stochastic_scaling(seed));
  out.push_back(hyperhelix_suite());
  return out;
}

}  // namespace scalerel::cli
