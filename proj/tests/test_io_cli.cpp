#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "cnoidal/io.hpp"
#include "cnoidal/serialization.hpp"
#include "figures.hpp"

using namespace cnoidal;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(CNOIDAL_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("cnoidal_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

json load(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

}  // namespace

TEST(Csv, HeaderAndRows) {
  const auto prof = sample_profile(build_family(figures::fig2a()), 2, 11);
  std::ostringstream os;
  write_csv(os, prof);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, 9), "xi,eta,w\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 12);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream rows(text);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  double xi, eta, w;
  ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &xi, &eta, &w), 3);
  EXPECT_EQ(eta, prof.front().eta);
  EXPECT_EQ(w, prof.front().w);
}

TEST(Csv, SolitaryWindowIsFinite) {
  const auto prof = sample_profile(m1_limit(figures::fig2a()), 2, 101);
  EXPECT_NEAR(prof.front().xi, -16.0, 1e-12);
  EXPECT_NEAR(prof.back().xi, 16.0, 1e-12);
}

TEST(Svg, TwoCurves) {
  std::ostringstream os;
  write_svg(os, sample_profile(build_family(figures::fig3a())), "4.2.1");
  const std::string svg = os.str();
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 2u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
}

TEST(Json, SolutionRoundTrip) {
  for (const auto& fig : figures::cnoidal_panels()) {
    const SolutionParams s = build_family(fig.request);
    const SolutionParams back = solution_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(back.j, s.j) << fig.name;
    EXPECT_EQ(back.k, s.k) << fig.name;
    EXPECT_EQ(back.lambda, s.lambda);
    EXPECT_EQ(back.m, s.m);
    EXPECT_EQ(back.sigma, s.sigma);
    EXPECT_EQ(back.family, s.family);
  }
}

TEST(Json, ParametersKeepExactRationals) {
  const ParameterSet p = figures::params(Rational(-8, 3), Rational(1, 7), 0, Rational(22, 7));
  const json j = to_json(p);
  EXPECT_EQ(j.at("a"), "-8/3");
  const ParameterSet back = parameters_from_json(j);
  EXPECT_EQ(back.a, p.a);
  EXPECT_EQ(back.d, p.d);
}

TEST(Cli, ZeroModulusRejected) {
  const CliRun r = cli("family --set 4.1.1 --a -5/6 --b 1 --c -5/6 --d 1 --m 0");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("m=0 excluded"), std::string::npos) << r.out;
}

TEST(Cli, UnknownSubcommandOptionIsUsageError) {
  EXPECT_EQ(cli("family --set 4.1.2 --bogus 1").status, 2);
}

TEST(Cli, FamilyVerifySolveRoundTrip) {
  const auto dir = scratch_dir();
  const std::string prefix = (dir / "fig2a").string();
  const CliRun fam = cli("family --set 4.1.2 --a 1 --b -8/3 --c 1 --d 1 --lambda 1 --sigma 1 --m 0.70710678118654752 "
                      "--sign top --prefix " + prefix + " -o " + (dir / "stdout.json").string());
  ASSERT_EQ(fam.status, 0) << fam.out;
  for (const char* ext : {".json", ".csv", ".svg"}) EXPECT_TRUE(std::filesystem::exists(prefix + ext)) << ext;
  EXPECT_LE(load(prefix + ".json").at("residual").at("relative").get<double>(), 1e-9);

  const CliRun ver = cli("verify --input " + prefix + ".json -o " + (dir / "verify.json").string());
  ASSERT_EQ(ver.status, 0) << ver.out;
  const json v = load(dir / "verify.json");
  EXPECT_LE(v.at("residual").at("relative").get<double>(), 1e-9);
  EXPECT_EQ(v.at("config").at("command"), "verify");

  const CliRun sol = cli("solve --system coeffs1 --input " + prefix + ".json -o " + (dir / "solve.json").string());
  ASSERT_EQ(sol.status, 0) << sol.out;
  const json s = load(dir / "solve.json");
  EXPECT_LE(s.at("iterations").get<int>(), 2);
  EXPECT_LE(s.at("residual_inf").get<double>(), 1e-12);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ClassifySemiTrivial) {
  const CliRun r = cli("classify --a 0 --b 0 --c 1/2 --d -1/6");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("SemiTrivialEtaConstant"), std::string::npos) << r.out;
}

TEST(Cli, MultistartFindsBothBranches) {
  const auto dir = scratch_dir();
  const CliRun r = cli("solve --system coeffs1 --a 1 --b -8/3 --c 1 --d 1 --pin m=0.70710678118654752,lambda=1,sigma=1 "
                    "--starts 2000 --seed 42 -o " + (dir / "ms.json").string());
  ASSERT_EQ(r.status, 0) << r.out;
  const json set = load(dir / "ms.json").at("branch_set");
  EXPECT_EQ(set.at("counts").at("non-trivial").get<int>(), 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReduceSymbolic) {
  const CliRun r = cli("reduce --pattern c_zero --n-max 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("passed"), std::string::npos);
}
