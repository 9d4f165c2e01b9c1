#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scalerel/error.hpp"

namespace scalerel::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + s + "'");
  }
  return v;
}

long long parse_integer(const std::string& key, const std::string& s) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an integer, got '" + s + "'");
  return v;
}

void check_constraint(const KeySpec& spec, double v) {
  switch (spec.constraint) {
    case Constraint::positive:
      if (!(v > 0.0)) throw ConfigError(spec.key, "expected a positive value");
      break;
    case Constraint::non_negative:
      if (!(v >= 0.0)) throw ConfigError(spec.key, "expected a non-negative value");
      break;
    case Constraint::at_least_one:
      if (!(v >= 1.0)) throw ConfigError(spec.key, "expected a value >= 1");
      break;
    case Constraint::none:
      break;
  }
}

KeySpec real(std::string key, std::string def, std::string help, Constraint c = Constraint::none) {
  return {std::move(key), ValueType::real, std::move(def), std::move(help), c, {}};
}

KeySpec integer(std::string key, std::string def, std::string help, Constraint c = Constraint::none) {
  return {std::move(key), ValueType::integer, std::move(def), std::move(help), c, {}};
}

KeySpec vec3(std::string key, std::string def, std::string help) {
  return {std::move(key), ValueType::vec3, std::move(def), std::move(help), Constraint::none, {}};
}

KeySpec choice(std::string key, std::vector<std::string> options, std::string help) {
  std::string def = options.front();
  return {std::move(key), ValueType::choice, std::move(def), std::move(help), Constraint::none,
          std::move(options)};
}

KeySpec seed() { return {"seed", ValueType::seed, "1", "64-bit master seed", Constraint::none, {}}; }

std::vector<Schema> build_schemas() {
  using C = Constraint;
  std::vector<Schema> s;
  s.push_back({"simulate",
               "stochastic spiral paths (Euler-Maruyama); csv: one path or the ensemble mean "
               "path, json: ensemble summary",
               {real("D", "0.05", "diffusion parameter", C::non_negative),
                real("dt", "0.01", "time step", C::positive),
                integer("n_steps", "1000", "number of steps", C::at_least_one), seed(),
                real("m", "1", "mass", C::positive), real("p0", "1", "axial momentum"),
                real("sigma0", "0.5", "spin parameter (action units)"),
                vec3("x0", "1,0,0", "initial position"),
                integer("n_traj", "1", "ensemble size", C::at_least_one),
                choice("drift", {"dezael", "uniform"}, "drift field"),
                vec3("velocity", "0,0,0", "uniform drift velocity"),
                choice("noise", {"normal", "rademacher"}, "noise distribution"),
                {"lags", ValueType::int_list, "1,2,3", "lags (steps) for the Hurst fit", C::none, {}},
                integer("threads", "0", "worker threads (0: all cores)", C::non_negative)}});
  s.push_back({"spiral",
               "deterministic RK4 spiral",
               {real("dt", "0.001", "time step", C::positive),
                integer("n_steps", "10000", "number of steps", C::at_least_one),
                real("m", "1", "mass", C::positive), real("p0", "1", "axial momentum"),
                real("sigma0", "1", "spin parameter (action units)"),
                vec3("x0", "1,0,0", "initial position"),
                real("core_radius", "0", "axis core radius", C::non_negative)}});
  s.push_back({"extract",
               "component velocities of a two-term spiral field on a grid",
               {real("hbar", "1", "reduced Planck constant", C::positive),
                real("m", "1", "mass", C::positive), real("c", "1", "speed of light", C::positive),
                real("S0", "1", "action scale", C::positive), vec3("p", "0,0,1", "momentum"),
                real("E0", "1", "energy of the first term"),
                real("E1", "1.5", "energy of the second term"),
                real("sigma", "0.5", "spin parameter"),
                real("theta0", "0.7", "first amplitude polar angle"),
                real("phi0", "0.3", "first amplitude azimuth"),
                real("theta1", "2.1", "second amplitude polar angle"),
                real("phi1", "-0.4", "second amplitude azimuth"), real("t", "0", "time"),
                vec3("grid_min", "-1,-1,0", "grid lower corner"),
                vec3("grid_max", "1,1,0", "grid upper corner"),
                {"grid_n", ValueType::int_list, "4,4,1", "points per axis", C::none, {}}}});
  s.push_back({"hyperhelix",
               "iterated spiral curve: csv vertices or json report",
               {choice("generator", {"helical", "koch", "straight", "zigzag"}, "generator family"),
                real("turns", "2", "helical windings per period"),
                real("phase", "0", "helical start azimuth"),
                integer("level", "4", "iteration level", C::non_negative),
                real("m", "1", "mass", C::positive), real("v", "1", "speed", C::positive),
                real("hbar", "1", "reduced Planck constant", C::positive),
                {"q", ValueType::real_list, "2,3,9", "scale ratios for the scaling check",
                 C::positive, {}}}});
  s.push_back({"check", "invariant and residual suites; json report", {seed()}});
  return s;
}

}  // namespace

const KeySpec* Schema::find(const std::string& key) const {
  for (const auto& k : keys) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> all = build_schemas();
  return all;
}

const Schema& schema_for(const std::string& command) {
  for (const auto& s : schemas()) {
    if (s.command == command) return s;
  }
  throw ConfigError("command", "unknown subcommand '" + command + "'");
}

Value parse_value(const KeySpec& spec, const std::string& raw) {
  const std::string text = trim(raw);
  switch (spec.type) {
    case ValueType::real: {
      const double v = parse_real(spec.key, text);
      check_constraint(spec, v);
      return v;
    }
    case ValueType::integer: {
      const long long v = parse_integer(spec.key, text);
      check_constraint(spec, static_cast<double>(v));
      return v;
    }
    case ValueType::seed: {
      std::uint64_t v = 0;
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(text.data(), end, v);
      if (ec != std::errc() || ptr != end) {
        throw ConfigError(spec.key, "expected an unsigned 64-bit integer, got '" + text + "'");
      }
      return v;
    }
    case ValueType::vec3: {
      const auto parts = split_list(text);
      if (parts.size() != 3) throw ConfigError(spec.key, "expected three comma-separated numbers");
      return Vec3(parse_real(spec.key, parts[0]), parse_real(spec.key, parts[1]),
                  parse_real(spec.key, parts[2]));
    }
    case ValueType::int_list: {
      std::vector<int> out;
      for (const auto& p : split_list(text)) {
        const long long v = parse_integer(spec.key, p);
        if (v < 1 || v > 1'000'000'000) throw ConfigError(spec.key, "entries must be >= 1");
        out.push_back(static_cast<int>(v));
      }
      if (out.empty()) throw ConfigError(spec.key, "expected a comma-separated list");
      return out;
    }
    case ValueType::real_list: {
      std::vector<double> out;
      for (const auto& p : split_list(text)) {
        const double v = parse_real(spec.key, p);
        check_constraint(spec, v);
        out.push_back(v);
      }
      if (out.empty()) throw ConfigError(spec.key, "expected a comma-separated list");
      return out;
    }
    case ValueType::choice:
      for (const auto& c : spec.choices) {
        if (c == text) return text;
      }
      throw ConfigError(spec.key, "unknown value '" + text + "'");
  }
  throw ConfigError(spec.key, "unsupported type");
}

std::map<std::string, std::string> read_config_file(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key != "out" && key != "format" && schema.find(key) == nullptr) {
      throw ConfigError(key, "unknown key for '" + schema.command + "'");
    }
    out[key] = value;
  }
  return out;
}

RunConfig resolve_config(const Schema& schema, const std::map<std::string, std::string>& file,
                         const std::map<std::string, std::string>& flags) {
  RunConfig cfg;
  cfg.command = schema.command;
  std::map<std::string, std::string> merged;
  for (const auto& k : schema.keys) merged[k.key] = k.default_value;
  merged["format"] = schema.command == "check" ? "json" : "csv";
  merged["out"] = "";
  for (const auto& [k, v] : file) merged[k] = v;
  for (const auto& [k, v] : flags) {
    if (k != "out" && k != "format" && schema.find(k) == nullptr) {
      throw ConfigError(k, "unknown key for '" + schema.command + "'");
    }
    merged[k] = v;
  }

  for (const auto& k : schema.keys) {
    cfg.values[k.key] = parse_value(k, merged[k.key]);
    cfg.text[k.key] = trim(merged[k.key]);
  }
  const std::string fmt = trim(merged["format"]);
  if (fmt == "csv") {
    cfg.format = Format::csv;
  } else if (fmt == "json") {
    cfg.format = Format::json;
  } else {
    throw ConfigError("format", "expected csv or json, got '" + fmt + "'");
  }
  cfg.out = trim(merged["out"]);
  return cfg;
}

std::string output_path(const RunConfig& cfg) {
  const char* dir = std::getenv("SCALEREL_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return cfg.out;
  if (cfg.out == "-") return {};
  namespace fs = std::filesystem;
  if (cfg.out.empty()) {
    return (fs::path(dir) / (cfg.command + (cfg.format == Format::csv ? ".csv" : ".json"))).string();
  }
  const fs::path p(cfg.out);
  return p.is_absolute() ? p.string() : (fs::path(dir) / p).string();
}

double RunConfig::real(const std::string& key) const { return std::get<double>(values.at(key)); }

long long RunConfig::integer(const std::string& key) const {
  return std::get<long long>(values.at(key));
}

std::uint64_t RunConfig::seed(const std::string& key) const {
  return std::get<std::uint64_t>(values.at(key));
}

Vec3 RunConfig::vec3(const std::string& key) const { return std::get<Vec3>(values.at(key)); }

const std::vector<int>& RunConfig::int_list(const std::string& key) const {
  return std::get<std::vector<int>>(values.at(key));
}

const std::vector<double>& RunConfig::real_list(const std::string& key) const {
  return std::get<std::vector<double>>(values.at(key));
}

const std::string& RunConfig::choice(const std::string& key) const {
  return std::get<std::string>(values.at(key));
}

}  // namespace scalerel::cli
