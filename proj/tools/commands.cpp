#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "checks.hpp"
#include "format.hpp"
#include "scalerel/error.hpp"
#include "scalerel/geodesic_sim.hpp"
#include "scalerel/hyperhelix.hpp"
#include "scalerel/velocity.hpp"

namespace scalerel::cli {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_trajectory_csv(std::ostream& out, const std::vector<double>& t,
                          const std::vector<Vec3>& x) {
  out << "t,x,y,z\n";
  for (std::size_t i = 0; i < x.size(); ++i) write_csv_row(out, {t[i], x[i].x(), x[i].y(), x[i].z()});
}

SimConfig sim_config(const RunConfig& cfg) {
  SimConfig s;
  s.D = cfg.real("D");
  s.dt = cfg.real("dt");
  s.n_steps = static_cast<int>(cfg.integer("n_steps"));
  s.seed = cfg.seed("seed");
  s.m = cfg.real("m");
  s.p0 = cfg.real("p0");
  s.sigma0 = cfg.real("sigma0");
  s.x0 = cfg.vec3("x0");
  s.n_traj = static_cast<int>(cfg.integer("n_traj"));
  s.drift = cfg.choice("drift") == "uniform" ? DriftModel::uniform : DriftModel::dezael;
  s.velocity = cfg.vec3("velocity");
  s.noise = cfg.choice("noise") == "rademacher" ? NoiseKind::rademacher : NoiseKind::normal;
  return s;
}

int simulate(const RunConfig& cfg, std::ostream& out) {
  const SimConfig s = sim_config(cfg);
  EnsembleOptions opts;
  opts.lags = cfg.int_list("lags");
  opts.threads = static_cast<unsigned>(cfg.integer("threads"));

  if (cfg.format == Format::csv) {
    if (s.n_traj == 1) {
      SimConfig one = s;
      one.seed = trajectory_seed(s.seed, 0);
      const Trajectory tr = integrate_stochastic(one);
      write_trajectory_csv(out, tr.times, tr.positions);
    } else {
      const EnsembleStats st = ensemble_run(s, opts);
      std::vector<double> t(st.mean_path.size());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * s.dt;
      write_trajectory_csv(out, t, st.mean_path);
    }
    return kExitOk;
  }

  opts.keep_mean_path = false;
  const EnsembleStats st = ensemble_run(s, opts);
  Json j;
  j["config"] = config_json(cfg);
  j["n_traj"] = st.n_traj;
  j["seed"] = st.seed;
  j["H"] = st.scaling_available ? number_or_null(st.scaling.H) : Json(nullptr);
  j["D_F"] = st.scaling_available ? number_or_null(st.scaling.D_F) : Json(nullptr);
  j["Lz_mean"] = number_or_null(st.Lz_mean);
  j["Lz_std"] = number_or_null(st.Lz_std);
  j["increment_var"] = to_json(st.increment_var);
  j["mean_final_displacement"] = to_json(st.mean_final_displacement);
  j["final_displacement_std"] = to_json(st.final_displacement_std);
  j["lags"] = opts.lags;
  j["increment_rms"] = st.scaling_available ? Json(st.scaling.rms) : Json(nullptr);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int spiral(const RunConfig& cfg, std::ostream& out) {
  SimConfig s;
  s.D = 0.0;
  s.dt = cfg.real("dt");
  s.n_steps = static_cast<int>(cfg.integer("n_steps"));
  s.m = cfg.real("m");
  s.p0 = cfg.real("p0");
  s.sigma0 = cfg.real("sigma0");
  s.x0 = cfg.vec3("x0");
  s.core_radius = cfg.real("core_radius");
  const Trajectory tr = integrate_deterministic(s);
  if (cfg.format == Format::csv) {
    write_trajectory_csv(out, tr.times, tr.positions);
    return kExitOk;
  }
  const double r0 = std::hypot(s.x0.x(), s.x0.y());
  double lz = 0.0, r = 0.0;
  for (double v : lz_series(tr, s.m)) lz = std::max(lz, std::abs(v - s.sigma0));
  for (double v : radius_series(tr)) r = std::max(r, std::abs(v - r0));
  Json j;
  j["config"] = config_json(cfg);
  j["n_points"] = tr.size();
  j["Lz_max_error"] = lz;
  j["r_max_error"] = r;
  j["winding_number"] = winding_number(tr);
  j["final_position"] = to_json(tr.positions.back());
  out << j.dump(2) << '\n';
  return kExitOk;
}

int extract(const RunConfig& cfg, std::ostream& out) {
  const Constants k{cfg.real("hbar"), cfg.real("m"), cfg.real("c"), cfg.real("S0")};
  const Vec3 p = cfg.vec3("p");
  const double sigma = cfg.real("sigma");
  const SpinorField field = dezael_field(CTSpinor{cfg.real("theta0"), cfg.real("phi0")}.value(),
                                         CTSpinor{cfg.real("theta1"), cfg.real("phi1")}.value(),
                                         p, p, cfg.real("E0"), cfg.real("E1"), sigma, sigma, k);
  const auto& n = cfg.int_list("grid_n");
  if (n.size() != 3) throw ConfigError("grid_n", "expected three counts");
  const Vec3 lo = cfg.vec3("grid_min"), hi = cfg.vec3("grid_max");
  auto coord = [&](int axis, int i) {
    if (n[axis] == 1) return 0.5 * (lo[axis] + hi[axis]);
    return lo[axis] + (hi[axis] - lo[axis]) * i / (n[axis] - 1);
  };
  const double t = cfg.real("t");

  Json points = Json::array();
  if (cfg.format == Format::csv) {
    out << "t,x,y,z,mu,v_pp,v_pm,v_mp,v_mm,vt_pp,vt_pm,vt_mp,vt_mm\n";
  }
  for (int ix = 0; ix < n[0]; ++ix) {
    for (int iy = 0; iy < n[1]; ++iy) {
      for (int iz = 0; iz < n[2]; ++iz) {
        const SpacetimePoint pt{t, coord(0, ix), coord(1, iy), coord(2, iz)};
        const VelocityComponents c = component_velocities(field, pt);
        if (cfg.format == Format::csv) {
          for (int mu = 0; mu < 4; ++mu) {
            write_csv_row(out, {t, pt.x, pt.y, pt.z, static_cast<double>(mu), c.v_pp[mu],
                                c.v_pm[mu], c.v_mp[mu], c.v_mm[mu], c.vt_pp[mu], c.vt_pm[mu],
                                c.vt_mp[mu], c.vt_mm[mu]});
          }
        } else {
          auto v4 = [](const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); };
          points.push_back(Json{{"t", t}, {"x", pt.x}, {"y", pt.y}, {"z", pt.z},
                                {"v_pp", v4(c.v_pp)}, {"v_pm", v4(c.v_pm)}, {"v_mp", v4(c.v_mp)},
                                {"v_mm", v4(c.v_mm)}, {"vt_pp", v4(c.vt_pp)},
                                {"vt_pm", v4(c.vt_pm)}, {"vt_mp", v4(c.vt_mp)},
                                {"vt_mm", v4(c.vt_mm)}});
        }
      }
    }
  }
  if (cfg.format == Format::json) {
    Json j;
    j["config"] = config_json(cfg);
    j["points"] = std::move(points);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

GeneratorSpec generator(const RunConfig& cfg) {
  const std::string& g = cfg.choice("generator");
  if (g == "koch") return koch_generator();
  if (g == "straight") return straight_generator();
  if (g == "zigzag") return zigzag_generator();
  return helical_generator(cfg.real("turns"), cfg.real("phase"));
}

int hyperhelix(const RunConfig& cfg, std::ostream& out) {
  GeneratorSpec gen = generator(cfg);
  try {
    gen.validate();
  } catch (const GeometryInvalid& e) {
    throw ConfigError(cfg.choice("generator") == "helical" ? "turns" : "generator", e.what());
  }
  const int level = static_cast<int>(cfg.integer("level"));
  if (std::pow(static_cast<double>(gen.count()), level) > 2e7) {
    throw ConfigError("level", "curve would exceed 2e7 segments");
  }
  const FractalCurve curve = iterate(gen, level);
  if (cfg.format == Format::csv) {
    out << "x,y,z\n";
    for (const auto& v : curve.vertices) write_csv_row(out, {v.x(), v.y(), v.z()});
    return kExitOk;
  }

  const double m = cfg.real("m"), v = cfg.real("v"), hbar = cfg.real("hbar");
  const double dim = similarity_dimension(gen);
  Json j;
  j["config"] = config_json(cfg);
  j["similarity_dimension"] = dim;
  j["segments"] = gen.count();
  j["ratio"] = gen.ratio();
  j["vertex_count"] = curve.vertices.size();
  j["length"] = curve.length();

  Json measured = Json::array();
  Json sigma = Json::array();
  for (int l = 0; l <= level; ++l) {
    const FractalCurve c = l == level ? curve : iterate(gen, l);
    sigma.push_back(Json{{"level", l}, {"sigma", curve_spin(c, m, v, hbar)}});
    if (l >= 3) {
      Json md = nullptr;
      try {
        md = measured_dimension(c);
      } catch (const InsufficientData&) {
      }
      measured.push_back(Json{{"level", l}, {"measured_dimension", md}});
    }
  }
  j["measured_dimension"] = std::move(measured);
  j["sigma"] = std::move(sigma);

  const double base = curve_spin(curve, m, v, hbar);
  Json table = Json::array();
  for (double q : cfg.real_list("q")) {
    const double ratio = curve_spin(rescale_spiral(curve, q, dim), m, v, hbar) / base;
    table.push_back(Json{{"q", q}, {"measured", number_or_null(ratio)},
                         {"predicted", scaling_factor(q, dim)}});
  }
  j["scaling"] = std::move(table);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int check(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_checks(cfg.seed("seed"));
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (cfg.format == Format::csv) {
    out << "suite,pass\n";
    for (const auto& r : results) out << r.name << ',' << (r.pass ? "true" : "false") << '\n';
  } else {
    Json suites = Json::array();
    for (const auto& r : results) {
      suites.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"metrics", r.metrics}});
    }
    Json j;
    j["config"] = config_json(cfg);
    j["pass"] = all;
    j["suites"] = std::move(suites);
    out << j.dump(2) << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "simulate") return simulate(cfg, out);
  if (cfg.command == "spiral") return spiral(cfg, out);
  if (cfg.command == "extract") return extract(cfg, out);
  if (cfg.command == "hyperhelix") return hyperhelix(cfg, out);
  if (cfg.command == "check") return check(cfg, out);
  throw ConfigError("command", "unknown subcommand '" + cfg.command + "'");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quaternionic velocity fields, fractal geodesics and hyperhelices", "scalerel"};
  app.require_subcommand(1);

  struct Bound {
    std::string config;
    std::map<std::string, std::string> values;
    CLI::App* sub = nullptr;
  };
  std::map<std::string, Bound> bound;
  for (const auto& schema : schemas()) {
    Bound& b = bound[schema.command];
    b.sub = app.add_subcommand(schema.command, schema.description);
    b.sub->add_option("--config", b.config, "flat 'key = value' file; flags override it");
    b.sub->add_option("--out", b.values["out"], "output file (default: stdout, '-' forces stdout)");
    b.sub->add_option("--format", b.values["format"], "csv or json");
    for (const auto& k : schema.keys) {
      b.sub->add_option("--" + k.key, b.values[k.key], k.help)->default_str(k.default_value);
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cli/parse_config: " << e.what() << '\n';
    return kExitConfigError;
  }

  for (auto& [name, b] : bound) {
    if (!b.sub->parsed()) continue;
    try {
      const Schema& schema = schema_for(name);
      std::map<std::string, std::string> file;
      if (!b.config.empty()) file = read_config_file(b.config, schema);
      std::map<std::string, std::string> flags;
      for (const auto& [key, value] : b.values) {
        if (b.sub->count("--" + key) > 0) flags[key] = value;
      }
      const RunConfig cfg = resolve_config(schema, file, flags);
      const std::string path = output_path(cfg);

      std::ostringstream buffer;
      const int code = run_command(cfg, buffer);
      if (path.empty()) {
        out << buffer.str();
      } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("out", "cannot write '" + path + "'");
        f << buffer.str();
      }
      return code;
    } catch (const ConfigError& e) {
      err << e.what() << '\n';
      return kExitConfigError;
    } catch (const NumericalError& e) {
      err << e.what() << '\n';
      return kExitNumericalError;
    } catch (const std::invalid_argument& e) {
      err << name << ": " << e.what() << '\n';
      return kExitConfigError;
    }
  }
  err << "cli/parse_config: no subcommand\n";
  return kExitConfigError;
}

}  // namespace scalerel::cli
