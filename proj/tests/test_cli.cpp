#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

const std::string kCli = SOFTARM_CLI_PATH;
const std::string kConfigs = SOFTARM_CONFIG_DIR;
const std::string kData = SOFTARM_TEST_DATA;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  CliRun r;
  const std::string cmd = "\"" + kCli + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) { return "--config " + kConfigs + "/" + name; }

TEST(Cli, HelpSucceeds) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, InverseThenForward) {
  const CliRun inv = run("solve-inverse " + config("circle_one_section.json") +
                      " --phi-deg 90 --gamma-deg 30");
  ASSERT_EQ(inv.code, 0);
  std::istringstream is(inv.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "section,i,l,T,theta0,kappa_c,beta,d_i,slack,kappa_b,gamma,phi_b");
  std::string lengths;
  while (std::getline(is, line)) {
    std::stringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    lengths += (lengths.empty() ? "" : ",") + field;
  }
  const CliRun fwd = run("solve-forward " + config("circle_one_section.json") + " --lengths " +
                      lengths + " --format json");
  ASSERT_EQ(fwd.code, 0);
  EXPECT_NE(fwd.out.find("\"phi_b\""), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const std::string c = config("circle_one_section.json");
  EXPECT_EQ(run("solve-inverse " + c + " --phi-deg 200").code, 2);
  EXPECT_EQ(run("solve-forward " + c + " --lengths 9.0,9.0").code, 2);
  EXPECT_EQ(run("solve-inverse --phi-deg 10").code, 3);
  EXPECT_EQ(run("no-such-command").code, 3);
  EXPECT_EQ(run("solve-inverse " + c + " --phi-deg 10 --format xml").code, 3);
  EXPECT_EQ(run("solve-inverse --config " + kData + "/bad_config.json --phi-deg 10").code, 3);
  EXPECT_EQ(run("identify-kb " + c + " --samples " + kData + "/kb_single_angle.csv").code, 1);
}

TEST(Cli, IdentifyBendStiffness) {
  const CliRun r = run("identify-kb " + config("circle_one_section.json") + " --samples " + kData +
                    "/kb_samples.csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("K_b,20.0"), std::string::npos) << r.out;
}

TEST(Cli, IdentifyCutinStiffness) {
  const CliRun r = run("identify-kc " + config("circle_one_section.json") + " --samples " + kData +
                    "/kc_samples.csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("K_c,3.1"), std::string::npos) << r.out;
}

TEST(Cli, RepeatableOutput) {
  const std::string args = "compare " + config("circle_one_section.json") + " --format json";
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutFileMatchesStdout) {
  const std::string path = ::testing::TempDir() + "softarm_fk.csv";
  const std::string args = "fk " + config("circle_two_section.json") +
                           " --phi-deg 30,60 --gamma-deg 0,90";
  const CliRun a = run(args);
  ASSERT_EQ(run(args + " --out " + path).code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
}

}  // namespace
