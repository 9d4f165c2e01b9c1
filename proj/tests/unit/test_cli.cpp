#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

#include "commands.hpp"
#include "config.hpp"
#include "format.hpp"
#include "scalerel/error.hpp"

using namespace scalerel;
using namespace scalerel::cli;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / ("scalerel_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = temp_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::string preset_conf = std::string(SCALEREL_CONFIG_DIR) + "/stochastic_spiral.conf";

}  // namespace

TEST(ParseConfig, FlagOverridesFile) {
  const fs::path f = write_file("dt.conf", "# comment\ndt = 0.01\nn_steps=5  # trailing\n");
  const Schema& s = schema_for("simulate");
  const RunConfig cfg = resolve_config(s, read_config_file(f.string(), s), {{"dt", "0.005"}});
  EXPECT_EQ(cfg.real("dt"), 0.005);
  EXPECT_EQ(cfg.integer("n_steps"), 5);
  EXPECT_EQ(cfg.real("D"), 0.05);
  EXPECT_EQ(cfg.format, Format::csv);
}

TEST(ParseConfig, ErrorsNameTheKey) {
  const Schema& s = schema_for("simulate");
  auto key_of = [&](std::map<std::string, std::string> flags) {
    try {
      resolve_config(s, {}, flags);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of({{"dt", "-1"}}), "dt");
  EXPECT_EQ(key_of({{"n_steps", "1.5"}}), "n_steps");
  EXPECT_EQ(key_of({{"x0", "1,2"}}), "x0");
  EXPECT_EQ(key_of({{"noise", "cauchy"}}), "noise");
  EXPECT_EQ(key_of({{"bogus", "1"}}), "bogus");
  EXPECT_EQ(key_of({{"format", "xml"}}), "format");
  EXPECT_EQ(key_of({{"seed", "-3"}}), "seed");
  const fs::path f = write_file("bad.conf", "D = 0.1\nwhat\n");
  EXPECT_THROW(read_config_file(f.string(), s), ConfigError);
  const fs::path g = write_file("unknown.conf", "sigma = 1\n");
  EXPECT_THROW(read_config_file(g.string(), s), ConfigError);
}

TEST(ParseConfig, SpiralPresetLoads) {
  const Schema& s = schema_for("simulate");
  const RunConfig cfg = resolve_config(s, read_config_file(preset_conf, s), {});
  EXPECT_EQ(cfg.real("D"), 0.05);
  EXPECT_EQ(cfg.real("dt"), 0.01);
  EXPECT_EQ(cfg.vec3("x0"), Vec3(1, 0, 0));
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Cli, SimulateCsv) {
  const CliResult r = run({"simulate", "--config", preset_conf});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2002u);  // header + n_steps + 1
  EXPECT_EQ(l[0], "t,x,y,z");
  EXPECT_EQ(l[1], "0,1,0,0");
  EXPECT_EQ(run({"simulate", "--config", preset_conf}).out, r.out);
  EXPECT_NE(run({"simulate", "--config", preset_conf, "--seed", "5"}).out, r.out);
}

TEST(Cli, SimulateJsonCarriesConfig) {
  const CliResult r = run({"simulate", "--n_steps", "100", "--n_traj", "50", "--format", "json",
                     "--dt", "0.02"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["dt"], 0.02);
  EXPECT_EQ(j["config"]["n_traj"], 50);
  EXPECT_EQ(j["config"]["noise"], "normal");
  EXPECT_TRUE(j.contains("H"));
  EXPECT_EQ(j["n_traj"], 50);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"simulate", "--dt", "-1"}).code, kExitConfigError);
  EXPECT_NE(run({"simulate", "--dt", "-1"}).err.find("'dt'"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--bogus", "1"}).code, kExitConfigError);
  EXPECT_EQ(run({"nothing"}).code, kExitConfigError);
  EXPECT_EQ(run({}).code, kExitConfigError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"simulate", "--config", "/nonexistent/file.conf"}).code, kExitConfigError);
  // Starting inside the core radius is a numerical error.
  const CliResult axis = run({"spiral", "--x0", "0.01,0,0", "--core_radius", "0.1"});
  EXPECT_EQ(axis.code, kExitNumericalError);
  EXPECT_NE(axis.err.find("geodesic-sim"), std::string::npos);
  EXPECT_EQ(run({"hyperhelix", "--level", "2", "--format", "json", "--generator", "straight"}).code,
            kExitOk);
}

TEST(Cli, SpiralJson) {
  const CliResult r = run({"spiral", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["Lz_max_error"].get<double>(), 1e-8);
  EXPECT_LT(j["r_max_error"].get<double>(), 1e-8);
  EXPECT_EQ(j["config"]["sigma0"], 1.0);
}

TEST(Cli, ExtractCsv) {
  const CliResult r = run({"extract", "--grid_n", "2,3,1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines(r.out);
  EXPECT_EQ(l[0], "t,x,y,z,mu,v_pp,v_pm,v_mp,v_mm,vt_pp,vt_pm,vt_mp,vt_mm");
  EXPECT_EQ(l.size(), 1u + 2 * 3 * 1 * 4);
}

TEST(Cli, HyperhelixReport) {
  const CliResult r = run({"hyperhelix", "--level", "4", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["similarity_dimension"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(j["vertex_count"], 6562);
  EXPECT_EQ(run({"hyperhelix", "--level", "20"}).code, kExitConfigError);
  const CliResult csv = run({"hyperhelix", "--level", "2"});
  EXPECT_EQ(lines(csv.out).size(), 1u + 82u);
}

TEST(Cli, CheckPasses) {
  const CliResult r = run({"check"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["suites"].size(), 13u);
  for (const auto& s : j["suites"]) EXPECT_TRUE(s["pass"].get<bool>()) << s["name"];
  EXPECT_EQ(run({"check"}).out, r.out);
}

TEST(Cli, OutputDirectory) {
  const fs::path dir = temp_dir() / "outdir";
  fs::create_directories(dir);
  ::setenv("SCALEREL_OUTPUT_DIR", dir.c_str(), 1);
  const CliResult a = run({"spiral", "--n_steps", "10"});
  const CliResult b = run({"spiral", "--n_steps", "10", "--out", "named.csv"});
  const CliResult c = run({"spiral", "--n_steps", "10", "--out", "-"});
  ::unsetenv("SCALEREL_OUTPUT_DIR");
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_TRUE(a.out.empty());
  EXPECT_TRUE(fs::exists(dir / "spiral.csv"));
  EXPECT_TRUE(fs::exists(dir / "named.csv"));
  EXPECT_EQ(lines(c.out).size(), 12u);
  std::ifstream in(dir / "spiral.csv");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), c.out);
  fs::remove_all(temp_dir());
}
