// End-to-end checks of the command-line tool: exit codes, output formats,
// reference checking, and byte-level determinism.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#ifndef LAMCOUNT_CLI_PATH
#error "LAMCOUNT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string path = "cli_test_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(LAMCOUNT_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  return {code, ss.str()};
}

using Json = nlohmann::json;

}  // namespace

TEST_CASE("term subcommand") {
  auto r = run_cli("term --text \"\\ \\ 2 1\" --model binary");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["canonical"] == "\\ \\ 2 1");
  CHECK(j["size"] == 11);  // 2a + b + 2c + d with a=c=d=2, b=1
  CHECK(j["openness"] == 0);

  CHECK(run_cli("term --text \"\\ 0\"").exit_code == 1);
  CHECK(run_cli("term --text \"((1\"").exit_code == 1);
}

TEST_CASE("count subcommand") {
  auto r = run_cli("count --model binary --m 0 --N 4 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output == "n,count\n0,0\n1,0\n2,0\n3,0\n4,1\n");

  auto j = Json::parse(run_cli("count --model natural --m inf --N 3").output);
  CHECK(j["family"] == "all_terms");
  CHECK(j["counts"][3]["count"] == "4");

  // invalid custom model is rejected before any work
  CHECK(run_cli("count --model custom:0,1,1,0 --m 0 --N 4").exit_code == 1);
  CHECK(run_cli("count --model custom:9,9 --m 0 --N 4").exit_code == 1);
}

TEST_CASE("oracle subcommand emits decimal strings") {
  auto r = run_cli("oracle --model natural --m inf --N 6");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  REQUIRE(j.is_array());
  CHECK(j.size() == 7);
  CHECK(j[6] == "57");
  // budget guard maps to the numeric-failure exit code
  CHECK(run_cli("oracle --model natural --m inf --N 12 --cap 10").exit_code == 3);
}

TEST_CASE("rho subcommand") {
  auto r = run_cli("rho --model natural --digits 30");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  std::string rho = j["rho"];
  CHECK(rho.substr(0, 8) == "0.295597");
  CHECK(j["rho_digits"] == 30);
  CHECK(Json::parse(run_cli("rho --model binary --digits 30").output)["rho"]
            .get<std::string>()
            .substr(0, 8) == "0.509308");
  auto withh = Json::parse(run_cli("rho --model natural --h 1").output);
  CHECK(withh["rho_h"].get<std::string>().substr(0, 6) == "0.3333");
  CHECK(run_cli("rho --model natural --digits 5000").exit_code == 1);
}

TEST_CASE("bounds and improve subcommands") {
  auto j = Json::parse(run_cli("bounds --model natural --m 0 --h 15 --H 15").output);
  CHECK(j["lower_trivial"] == false);
  CHECK(j.contains("reference_comparison"));
  double dev_up = j["reference_comparison"]["deviation_upper"];
  CHECK(std::abs(dev_up) < 5e-3);

  auto t = Json::parse(run_cli("bounds --model natural --m 0 --h 7 --H 7").output);
  CHECK(t["lower_trivial"] == true);

  auto imp = Json::parse(run_cli("improve --model binary --M 13 --h 13 --H 13 --m 0").output);
  std::string cl = imp["C_lower"];
  std::string cu = imp["C_upper"];
  CHECK(cl.substr(0, 9) == "0.0125241");
  CHECK(cu.substr(0, 9) == "0.0125459");

  CHECK(run_cli("improve --model natural --m 5 --M 3").exit_code == 1);
}

TEST_CASE("table subcommand with reference checking") {
  auto r = run_cli("table1 --model natural --check");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "h,H,c0_h,d0_h,c0_hH,d0_hH");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 15);

  // an impossible tolerance flips the exit code to "check failed"
  CHECK(run_cli("table1 --model natural --check --tol 1e-15").exit_code == 2);
  // the reference table is for the natural model only
  CHECK(run_cli("table1 --model binary --check").exit_code == 1);
  CHECK(run_cli("table1 --model binary").exit_code == 0);
}

TEST_CASE("figure data sets") {
  auto fig2 = run_cli("figure --which 2 --model natural");
  REQUIRE(fig2.exit_code == 0);
  std::istringstream lines(fig2.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "M,C_lowlow,C_upup");
  double prev_gap = 1e9;
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    auto p1 = line.find(',');
    auto p2 = line.find(',', p1 + 1);
    double lo = std::stod(line.substr(p1 + 1, p2 - p1 - 1));
    double hi = std::stod(line.substr(p2 + 1));
    CHECK(hi - lo > 0);
    CHECK(hi - lo < prev_gap);
    prev_gap = hi - lo;
    ++rows;
  }
  CHECK(rows == 6);

  CHECK(run_cli("figure --which 1 --N 100").exit_code == 1);
  CHECK(run_cli("figure --which 3").exit_code == 1);

  auto fig1 = run_cli("figure --which 1 --model natural --N 150");
  REQUIRE(fig1.exit_code == 0);
  std::istringstream fig1_rows(fig1.output);
  std::getline(fig1_rows, header);
  CHECK(header == "n,ratio,C_lower,C_upper");
  double first_ratio = -1, last_ratio = -1;
  int count = 0;
  for (std::string line; std::getline(fig1_rows, line);) {
    auto p1 = line.find(',');
    auto p2 = line.find(',', p1 + 1);
    auto p3 = line.find(',', p2 + 1);
    double ratio = std::stod(line.substr(p1 + 1, p2 - p1 - 1));
    double lo = std::stod(line.substr(p2 + 1, p3 - p2 - 1));
    double hi = std::stod(line.substr(p3 + 1));
    CHECK(lo <= ratio);
    CHECK(ratio <= hi);
    if (first_ratio < 0) first_ratio = ratio;
    last_ratio = ratio;
    ++count;
  }
  CHECK(count == 141);
  // the scaled ratio drifts toward the improved-bounds interval
  const double improved = 0.0779099;
  CHECK(std::abs(last_ratio - improved) < std::abs(first_ratio - improved));
}

TEST_CASE("identical runs produce identical bytes") {
  std::string args = "improve --model natural --m 0 --M 10 --h 10 --H 10";
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);

  auto c = run_cli("table1 --model natural");
  auto d = run_cli("table1 --model natural");
  CHECK(c.output == d.output);
}
