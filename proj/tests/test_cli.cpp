#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qspectral/cli.hpp"
#include "qspectral/spec_io.hpp"

using namespace qspectral;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qspectral_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
  return std::string(QSPECTRAL_SAMPLES_DIR) + "/" + name;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qspectral_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, IdentityEigensphere) {
  const auto r = run({"spectrum", sample("identity3.json"), "--set", "sigma_s"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# sigma_s\nu,s,multiplicity\n1,0,3\n");
}

TEST(Cli, ShiftEssentialSpectrum) {
  const auto r = run({"spectrum", sample("shift.json"), "--set", "sigma_e"});
  EXPECT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "# sigma_e");
  EXPECT_EQ(l[2].rfind("CIRCLE,", 0), 0u);
}

TEST(Cli, ClassifyExamples) {
  const auto inside = run({"classify", sample("shift.json"), "--point", "0.5,0"});
  EXPECT_EQ(inside.code, 0);
  EXPECT_NE(inside.out.find("sigma_rS; Fredholm index -2; in ws, Bs; asc(R_q)=0 dsc(R_q)=inf"),
            std::string::npos);
  const auto id = run({"classify", sample("identity3.json"), "--point", "0,1"});
  EXPECT_EQ(id.code, 0);
  EXPECT_EQ(lines(id.out).front(), "resolvent");
  const auto two = run({"classify", sample("zero_plus_two.json"), "--point", "2,0"});
  EXPECT_EQ(two.code, 0);
  EXPECT_NE(two.out.find("sigma_pS dim 1; Fredholm index 0; sigma_0; pi_0; not Bs; asc(R_q)=1 "
                         "dsc(R_q)=1"),
            std::string::npos);
}

TEST(Cli, ClassifyWithOracle) {
  const auto r = run({"classify", sample("shift.json"), "--point", "2,0", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle:"), std::string::npos);
  EXPECT_NE(r.out.find("BOUNDED-AWAY"), std::string::npos);
  EXPECT_NE(r.out.find("near_boundary: no"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto bad_json = temp_path("bad.json");
  std::ofstream(bad_json) << "{ not json";
  EXPECT_EQ(run({"spectrum", bad_json.string()}).code, 2);
  EXPECT_EQ(run({"classify", sample("shift.json"), "--point", "1"}).code, 2);
  EXPECT_EQ(run({"classify", sample("shift.json"), "--point", "1,-1"}).code, 2);
  EXPECT_EQ(run({"classify", sample("shift.json"), "--point", "1,2x"}).code, 2);
  EXPECT_EQ(run({"spectrum", sample("shift.json"), "--set", "sigma_q"}).code, 2);
  EXPECT_EQ(run({"spectrum", sample("missing.json")}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto delegated = run({"spectrum", sample("identity_minus_projector.json"), "--set", "sigma_0"});
  EXPECT_EQ(delegated.code, 3);
  EXPECT_NE(delegated.err.find("--oracle"), std::string::npos);
  std::filesystem::remove(bad_json);
}

TEST(Cli, PerturbationInvariantSetsNeedNoOracle) {
  const auto r = run({"spectrum", sample("identity_minus_projector.json"), "--set", "ws"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("POINT,1,0"), std::string::npos);
}

TEST(Cli, DelegatedSetWithOracle) {
  const auto r = run({"spectrum", sample("identity_minus_projector.json"), "--set", "sigma_0",
                      "--oracle", "--grid", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u + 7u * 4u + 2u + 7u * 4u);
  EXPECT_EQ(l[1], "u,s,verdict,estimate,near_boundary");
  // Raster points are (-3 + k, s); the origin is in sigma_0 of I - P.
  const auto grid = std::find(l.begin(), l.end(), "# grid");
  ASSERT_NE(grid, l.end());
  EXPECT_NE(std::find(l.begin(), grid, "0,0,VANISHING,1,0"), grid);
  const bool origin = std::find(grid, l.end(), "0,0,1,0") != l.end();
  EXPECT_TRUE(origin);
}

TEST(Cli, OutFileAndDirectory) {
  const auto file = temp_path("one.csv");
  ASSERT_EQ(run({"spectrum", sample("shift.json"), "--set", "sigma_e", "--out", file.string()}).code, 0);
  EXPECT_EQ(lines(slurp(file)).front().rfind("kind,u,s,", 0), 0u);
  const auto dir = temp_path("dir");
  std::filesystem::remove_all(dir);
  ASSERT_EQ(run({"spectrum", sample("shift.json"), "--set", "sigma_e", "--set", "sigma_k:-2", "--out",
                 dir.string()})
                .code,
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "sigma_e.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "sigma_k_-2.csv"));
  std::filesystem::remove(file);
  std::filesystem::remove_all(dir);
}

TEST(Cli, GridRaster) {
  const auto r = run({"spectrum", sample("shift.json"), "--set", "sigma_s", "--set", "sigma_e", "--grid",
                      "5"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  auto it = std::find(l.begin(), l.end(), "# grid");
  ASSERT_NE(it, l.end());
  ++it;
  EXPECT_EQ(*it, "u,s,sigma_s,sigma_e,near_boundary");
  std::vector<std::string> rows(it + 1, l.end());
  ASSERT_EQ(rows.size(), 15u);
  EXPECT_EQ(rows[0], "-3,0,0,0,0");
  EXPECT_EQ(rows[1], "-3,1.5,0,0,0");
  EXPECT_EQ(rows[6], "0,0,1,0,0");
  EXPECT_EQ(rows[14], "3,3,0,0,0");
}

TEST(Cli, MatrixGrid) {
  const auto r = run({"spectrum", sample("identity3.json"), "--set", "sigma_s", "--grid", "7"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n1,0,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n0,0,0\n"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"spectrum", sample("shift.json"), "--grid", "9"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, CheckFile) {
  const auto r = run({"check", sample("shift.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("violations"), std::string::npos);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", sample("shift.json"), "--corpus", "1,1"}).code, 2);
  EXPECT_EQ(run({"check", "--corpus", "x"}).code, 2);
}

TEST(Cli, InjectedFaultIsReportedAndDumped) {
  const auto dump = temp_path("dump.json");
  std::filesystem::remove(dump);
  const auto r = run({"check", sample("shift.json"), "--inject-fault", "--dump", dump.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("violations: "), std::string::npos);
  const auto spec = load_operator_spec(dump.string());
  ASSERT_TRUE(spec.structured.has_value());
  EXPECT_EQ(parse_operator_spec(serialize(*spec.structured)).structured, spec.structured);
  // The fault does not outlive the command.
  EXPECT_EQ(run({"check", sample("shift.json")}).code, 0);
  std::filesystem::remove(dump);
}

TEST(Cli, SeedOverride) {
  setenv("QSPECTRAL_SEED", "7", 1);
  const auto a = run({"check", "--corpus", "1,1"});
  const auto b = run({"check", "--corpus", "2,1"});
  unsetenv("QSPECTRAL_SEED");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}
