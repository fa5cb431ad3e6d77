#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" HECKE_FORGE_CLI "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / ("hecke_forge_cli_" + name); }

}  // namespace

TEST(Cli, EpsilonOfEmptyType) {
  const auto r = cli("weyl epsilon --e 4 --T \"\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-1\n");
  EXPECT_EQ(cli("weyl epsilon --e 3 --T \"\"").out, "1\n");
}

TEST(Cli, Orbits) {
  const auto r = cli("weyl orbits --e 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("∅"), std::string::npos);
  EXPECT_NE(r.out.find("{1,3}"), std::string::npos);
}

TEST(Cli, Length) {
  const auto r = cli("weyl length --e 2 --x s0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("length 1"), std::string::npos);
  EXPECT_EQ(cli("weyl length --e 2 --x bogus").code, 1);
}

TEST(Cli, HeckeMul) {
  const auto r = cli("hecke mul --e 2 --lhs s1 --rhs s1 --q 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(2)*T["), std::string::npos);
  EXPECT_NE(r.out.find("(3)*T["), std::string::npos);
}

TEST(Cli, HeckeOracle) {
  const auto r = cli("hecke oracle --e 2 --q 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
  EXPECT_EQ(cli("hecke oracle --e 2 --q 6").code, 1);
}

TEST(Cli, RepCommands) {
  const auto et = cli("rep etau --e 2 --q 3 --chi 1 --csv");
  EXPECT_EQ(et.code, 0);
  EXPECT_NE(et.out.find("class_representative"), std::string::npos);
  EXPECT_EQ(cli("rep alvis-curtis --e 2 --q 3").code, 0);
}

TEST(Cli, PseudocoefAssemble) {
  const auto r = cli("pseudocoef assemble --e 2 --eprime 1 --q 2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.is_object());
  EXPECT_NE(r.out.find("1/6"), std::string::npos);
}

TEST(Cli, SupportFilter) {
  const auto r = cli("pseudocoef filter --N 4 --nu 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(∅,1,0)\n");
  const auto r2 = cli("pseudocoef filter --N 6 --eprime 2 --nu 5");
  EXPECT_EQ(r2.out, "(∅,5,0)\n");
  EXPECT_EQ(cli("pseudocoef filter --N 6 --eprime 4 --nu 1").code, 1);
}

TEST(Cli, CharVerify) {
  const auto r = cli("char verify --e 2 --q 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pass"), std::string::npos);
  EXPECT_EQ(r.out.find("fail"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("weyl orbits --e 3 --bogus").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("nosuch").code, 2);
  EXPECT_EQ(cli("weyl orbits").code, 2);
  EXPECT_EQ(cli("verify all --format xml").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, VerifySmallSuite) {
  const auto r = cli("verify all --max-e 2 --max-q 3");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema"], "hecke-forge/1");
  std::size_t pass = 0;
  for (const auto& rep : doc["reports"]) pass += rep["status"] == "pass";
  EXPECT_GE(pass, 20u);
}

TEST(Cli, DeterministicWithoutTimestamps) {
  const auto a = temp_path("a.json"), b = temp_path("b.json");
  ASSERT_EQ(cli("verify all --max-e 2 --max-q 3 --no-timestamps --jobs 1 --out " + a.string()).code, 0);
  ASSERT_EQ(cli("verify all --max-e 2 --max-q 3 --no-timestamps --jobs 3 --out " + b.string()).code, 0);
  const auto ta = slurp(a), tb = slurp(b);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
  EXPECT_EQ(ta.find("elapsed_ms"), std::string::npos);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, CsvFormat) {
  const auto r = cli("verify all --max-e 2 --max-q 2 --format csv --no-timestamps");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("name,params,lhs,rhs,abs_error,tolerance,status\n", 0), 0u);
}

TEST(Cli, SizeCapMarksChecksSkipped) {
  const auto r = cli("verify all --max-e 2 --max-q 3 --no-timestamps", "HECKE_FORGE_MAX_GROUP_ORDER=10");
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  std::size_t skipped = 0, fail = 0;
  for (const auto& rep : doc["reports"]) {
    skipped += rep["status"] == "skipped";
    fail += rep["status"] == "fail";
  }
  EXPECT_GT(skipped, 0u);
  EXPECT_EQ(fail, 0u);
}
