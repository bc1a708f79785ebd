#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured stream when asked.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd =
      std::string(FISHERBOUND_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const std::string kHeader =
    "theta,mu1,mu2,mu3bar,mu4bar,dmu1,dmu2,beta_star,s_value,f_exact,f_input,loss_db,case";

}  // namespace

TEST(Cli, LaplaceBound) {
  const auto r = run("bound --model laplace-scale --theta 1");
  ASSERT_EQ(r.status, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(r.out.substr(0, kHeader.size()), kHeader);
  EXPECT_NEAR(std::stod(rows[1][8]), 0.8, 1e-15);
  EXPECT_EQ(rows[1][9], "1");
  EXPECT_NEAR(std::stod(rows[1][8]) / std::stod(rows[1][9]), 0.8, 1e-15);
  EXPECT_EQ(rows[1][7], "inf");
  EXPECT_EQ(rows[1][12], "constant-first-moment");
}

TEST(Cli, GaussianBound) {
  const auto r = run("bound --model gaussian --theta 0.3");
  ASSERT_EQ(r.status, 0);
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[1][0], "0.29999999999999999");
  EXPECT_EQ(rows[1][8], "1");
  EXPECT_EQ(rows[1][9], "1");
}

TEST(Cli, SquaringAtZeroUsesSentinels) {
  const auto r = run("bound --model squaring --theta 0");
  ASSERT_EQ(r.status, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows[1].size(), 13u);
  EXPECT_EQ(rows[1][9], "");
  EXPECT_EQ(rows[1][11], "-inf");
}

TEST(Cli, SeventeenDigits) {
  const auto rows = parse_csv(run("bound --model squaring --theta 1").out);
  const std::string field = rows[1][8];
  EXPECT_EQ(field.size(), std::string("0.").size() + 17);
  EXPECT_NEAR(std::stod(field), 38.0 / 53.0, 1e-15);
  char again[40];
  std::snprintf(again, sizeof again, "%.17g", std::stod(field));
  EXPECT_EQ(field, again);
}

TEST(Cli, ReproduceFigureOne) {
  const std::string path = ::testing::TempDir() + "fig1.csv";
  const auto r = run("reproduce fig1 --out " + path, true);
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("crossover theta=0.7"), std::string::npos);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = parse_csv(text.str());
  ASSERT_EQ(rows.size(), 82u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "squaring_loss_db", "hard_limiter_loss_db"}));
  // Sign change of squaring - hard between adjacent rows near 0.75.
  int changes = 0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    if (rows[i - 1][1] == "-inf") continue;
    const double prev = std::stod(rows[i - 1][1]) - std::stod(rows[i - 1][2]);
    const double here = std::stod(rows[i][1]) - std::stod(rows[i][2]);
    if ((prev < 0) != (here < 0)) {
      ++changes;
      EXPECT_GE(std::stod(rows[i - 1][0]), 0.65);
      EXPECT_LE(std::stod(rows[i][0]), 0.8);
    }
  }
  EXPECT_EQ(changes, 1);
}

TEST(Cli, ByteIdenticalOutput) {
  const std::string args =
      "sweep --model soft-limiter --zeta 0.5 --min 0 --max 1 --steps 4 --samples 20000 --seed 7";
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_csv(a.out).size(), 5u);
  EXPECT_NE(run(args + " --crn off").out, a.out);
}

TEST(Cli, JsonOutput) {
  const auto r = run("sweep --model squaring --min 0 --max 1 --steps 3 --format json");
  ASSERT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_TRUE(doc[0]["f_exact"].is_null());
  EXPECT_EQ(doc[0]["loss_db"], "-inf");
  EXPECT_EQ(doc[2]["case"], "general");
  EXPECT_NEAR(doc[2]["s_value"].get<double>(), 38.0 / 53.0, 1e-15);
}

TEST(Cli, FisherVerb) {
  auto rows = parse_csv(run("fisher --model squaring --theta 1").out);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.73391, 1e-5);
  EXPECT_EQ(rows[1][2], "quadrature");
  rows = parse_csv(run("fisher --model poisson --theta 4").out);
  EXPECT_EQ(rows[1][1], "0.25");
  EXPECT_EQ(run("fisher --model soft-limiter --theta 1").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("bound --model gaussian --theta 1 --bogus").status, 1);
  EXPECT_EQ(run("bound --model nosuch --theta 1").status, 1);
  EXPECT_EQ(run("sweep --model gaussian --steps 1").status, 1);
  EXPECT_EQ(run("sweep --model gaussian --min 1 --max 0").status, 1);
  EXPECT_EQ(run("reproduce fig9").status, 1);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("bound --model gaussian").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, NumericErrorsNameTheta) {
  const auto r = run("sweep --model exponential --min -1 --max 1 --steps 3", true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("theta=-1"), std::string::npos);
  EXPECT_EQ(run("bound --model soft-limiter --theta 0.5 --mode analytic").status, 2);
  EXPECT_EQ(run("bound --model soft-limiter --theta 0.5 --samples 10").status, 2);
}

TEST(Cli, Verify) {
  const auto r = run("verify");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("tightness"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
