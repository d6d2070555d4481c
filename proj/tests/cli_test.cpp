#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace nlvar::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation invoke(const std::string& args) {
  const std::string cmd = std::string(NLVAR_BINARY) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nlvar_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string strip_wall_clock(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_clock\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

TEST(Report, EmptyReportIsValidJson) {
  Report r;
  const json j = json::parse(to_json(r));
  EXPECT_TRUE(j["assertions"].is_array() && j["assertions"].empty());
  EXPECT_TRUE(j["tables"].is_array() && j["tables"].empty());
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Report, RealsUseSeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(2.0), "2");
  Report r;
  r.summary["x"] = 0.1;
  EXPECT_NE(to_json(r).find("0.10000000000000001"), std::string::npos);
}

TEST(Report, ExitCodes) {
  Report r;
  r.assert_that("fine", 1.0);
  EXPECT_EQ(r.exit_code(), 0);
  r.assert_that("bad", -1.0);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(r.first_failure()->name, "bad");
  r.assert_that("solver", false, -1.0, true);
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Report, CsvHasHeaderRow) {
  Table t{"t", {"a", "b"}, {{1.5, std::string("x,y")}}};
  EXPECT_EQ(to_csv(t), "a,b\n1.5,\"x,y\"\n");
}

TEST(Config, ErrorsNameTheField) {
  try {
    nlvar::cli::run(parse_config("gamma-sweep", R"({"domain": {"n": "many"}})", {}, {}));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("domain.n", 0), 0u) << e.what();
  }
  try {
    nlvar::cli::run(parse_config("capacity", R"({"tolerances": {"relativ": 0.1}})", {}, {}));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), "tolerances.relativ: unknown field");
  }
  EXPECT_THROW(parse_config("phi-defect", "[1, 2]", {}, {}), ConfigError);
  EXPECT_THROW(parse_config("phi-defect", "{", {}, {}), ConfigError);
}

TEST(Config, FlagsOverrideTheFile) {
  const auto c = parse_config("phi-defect", R"({"p": 3, "seed": 5})", 2.0, 9);
  EXPECT_EQ(c.raw["p"], 2.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(parse_config("phi-defect", "", {}, {}).raw["seed"], 1);
}

TEST(Cli, QuadraticCaseIsConsistent) {
  const Invocation r = invoke("phi-defect --p 2");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["summary"]["verdict"], "REPRESENTABLE-CONSISTENT");
  EXPECT_EQ(j["config"]["p"], 2.0);
  for (const auto& a : j["assertions"]) EXPECT_TRUE(a.contains("slack"));
}

TEST(Cli, CubicCaseIsRefutedWithAWitness) {
  const Invocation r = invoke("phi-defect --p 3");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["summary"]["verdict"], "NOT-REPRESENTABLE");
  EXPECT_GE(std::abs(j["summary"]["witness"]["residual"].get<double>()), 1e-4);
}

TEST(Cli, IdentityCheckPassesByDefault) {
  const Invocation r = invoke("identity-check --seed 3");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, SameSeedSameBytes) {
  const fs::path dir = scratch("determinism");
  const auto cfg = write(dir, "c.json", R"({"functions": 30, "max_nodes": 500, "pairs": 60})");
  const Invocation a = invoke("identity-check --seed 7 --config " + cfg.string());
  const Invocation b = invoke("identity-check --seed 7 --config " + cfg.string());
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip_wall_clock(a.out), strip_wall_clock(b.out));
  EXPECT_NE(a.out.find("\"wall_clock\""), std::string::npos);
  const Invocation c = invoke("identity-check --seed 8 --config " + cfg.string());
  EXPECT_NE(strip_wall_clock(a.out), strip_wall_clock(c.out));
}

TEST(Cli, ConfigErrorExitCode) {
  const fs::path dir = scratch("config");
  const auto cfg = write(dir, "c.json", R"({"kernel": {"type": "triangle"}})");
  EXPECT_EQ(invoke("gamma-sweep --config " + cfg.string()).code, 4);
  EXPECT_EQ(invoke("no-such-command").code, 4);
  EXPECT_EQ(invoke("phi-defect --format xml").code, 4);
}

TEST(Cli, NonConvergenceExitCode) {
  const fs::path dir = scratch("nonconv");
  const auto cfg = write(dir, "c.json",
                         R"({"domain": {"n": 31}, "schedule": {"values": [0.3, 0.2]}, "solver": {"max_iterations": 2}})");
  EXPECT_EQ(invoke("gamma-sweep --p 1.5 --config " + cfg.string()).code, 3);
}

TEST(Cli, GammaSweepCsvAndCurves) {
  const fs::path dir = scratch("sweep");
  const auto cfg = write(dir, "c.json", R"({"domain": {"n": 31}, "schedule": {"values": [0.4, 0.3, 0.2]}})");
  const Invocation r = invoke("gamma-sweep --format csv --out " + (dir / "out").string() + " --config " + cfg.string());
  EXPECT_TRUE(r.code == 0 || r.code == 2);
  std::ifstream in(dir / "out" / "gamma_sweep.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("eps,load_id,load,min_k,limit_min,gap", 0), 0u) << header;
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 15);
  EXPECT_TRUE(fs::exists(dir / "out" / "curve_gap_constant.csv"));
}

TEST(Cli, CoveringCurves) {
  const fs::path dir = scratch("covering");
  const Invocation r = invoke("covering-check --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  std::ifstream in(dir / "curve_gamma_z0.3.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "beta,gamma_z");
  EXPECT_TRUE(fs::exists(dir / "report.json"));
}

TEST(Cli, MassBoundFromCsvAndRefusal) {
  const fs::path dir = scratch("mass");
  const auto good = write(dir, "good.csv", "i,j,w\n0,150,1.0\n150,0,1.0\n3,4,2.0\n4,3,2.0\n");
  const auto cfg = write(dir, "c.json", R"({"measure": {"path": ")" + good.string() + R"("}})");
  EXPECT_EQ(invoke("mass-bound --config " + cfg.string()).code, 0);
  const auto bad = write(dir, "bad.csv", "0,150,1.0\n");
  const auto cfg2 = write(dir, "d.json", R"({"measure": {"path": ")" + bad.string() + R"("}})");
  EXPECT_EQ(invoke("mass-bound --config " + cfg2.string()).code, 4);
}

}  // namespace
}  // namespace nlvar::cli
