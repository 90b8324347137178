// End-to-end checks of the command-line tool: output, exit codes, formats
// and determinism.  The binary path comes in through DEFEXP_CLI_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "defexp/defexp.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DEFEXP_CLI_BIN) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

TEST_CASE("eval prints the value and exits 0") {
  const RunResult r = run_cli("eval e_sub --x 1 --y 3 --h 1");
  CHECK(r.exit_code == 0);
  const double v = std::strtod(r.output.c_str(), nullptr);
  CHECK(v == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("eval output round-trips to the exact double") {
  const RunResult r = run_cli("eval quantum_group --y 2 --p 4");
  CHECK(r.exit_code == 0);
  double expected = 0.0;
  REQUIRE(defexp_quantum_group_exp(2.0, 4.0, &expected) == DEFEXP_OK);
  const double parsed = std::strtod(r.output.c_str(), nullptr);
  CHECK(parsed == expected);  // bitwise: 17 significant digits round-trip

  const RunResult s = run_cli("eval kaniadakis --x 0.3 --kappa 0.7");
  double expected2 = 0.0;
  REQUIRE(defexp_kaniadakis_exp(0.3, 0.7, &expected2) == DEFEXP_OK);
  CHECK(std::strtod(s.output.c_str(), nullptr) == expected2);
}

TEST_CASE("eval reports domain violations on exit code 1") {
  const RunResult r = run_cli("eval e_sub --x -3 --y 1 --h 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("1 + h*x") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("eval no_such_function --x 1").exit_code == 2);
  CHECK(run_cli("eval e_sub --x 1 --y 2").exit_code == 2);       // missing --h
  CHECK(run_cli("eval e_sub --x 1 --y 2 --h 1 --q 3").exit_code == 2);
  CHECK(run_cli("bogus_subcommand").exit_code == 2);
  CHECK(run_cli("table e_sub --x-range 2:1:0.5 --y 1 --h 1").exit_code == 2);
  CHECK(run_cli("table e_sub --x-range 0:1:-0.5 --y 1 --h 1").exit_code == 2);
  CHECK(run_cli("table e_sub --y 1 --h 1").exit_code == 2);
  CHECK(run_cli("expand nope --x 0.1 --y 1 --h 1").exit_code == 2);
  CHECK(run_cli("eval e_sub --x 1 --y 2 --h 1 --format yaml").exit_code == 2);
}

TEST_CASE("table sweeps x inclusively") {
  const RunResult r = run_cli("table e_sub --x-range 0:1:0.5 --y 1 --h 1 --format csv");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "x,value");
  CHECK(std::strtod(lines[1].substr(lines[1].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(1.0));
  CHECK(std::strtod(lines[2].substr(lines[2].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::strtod(lines[3].substr(lines[3].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("table kaniadakis row values") {
  const RunResult r =
      run_cli("table kaniadakis --x-range -1:1:1 --kappa 1 --format csv");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  const double sqrt2 = std::sqrt(2.0);
  CHECK(std::strtod(lines[1].substr(lines[1].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(sqrt2 - 1.0).epsilon(1e-13));
  CHECK(std::strtod(lines[2].substr(lines[2].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(1.0));
  CHECK(std::strtod(lines[3].substr(lines[3].find(',') + 1).c_str(), nullptr) ==
        doctest::Approx(sqrt2 + 1.0).epsilon(1e-13));
}

TEST_CASE("out-of-domain table cells carry the DOMAIN sentinel, not a gap") {
  const RunResult r =
      run_cli("table e_sub --x-range -3:0:1.5 --y 1 --h 1 --format csv");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);  // header + 3 rows, nothing dropped
  CHECK(lines[1] == "-3,DOMAIN");
  CHECK(lines[2] == "-1.5,DOMAIN");
  CHECK(lines[3].rfind("0,", 0) == 0);
  CHECK(lines[3].find("DOMAIN") == std::string::npos);
}

TEST_CASE("table sweeps two axes as a cartesian product") {
  const RunResult r = run_cli(
      "table e_sub --x-range 0:1:1 --y-range 1:2:1 --h 1 --format csv");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "x,y,value");
}

TEST_CASE("expand reports the series diagnostics") {
  const RunResult r = run_cli("expand sub --x 0.2 --y 3 --h 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("terms_used          = 4") != std::string::npos);
  CHECK(r.output.find("terminated_exactly  = true") != std::string::npos);
  CHECK(r.output.find("1.728") != std::string::npos);
}

TEST_CASE("expand rejects |h x| >= 1 with exit 1 and cites the condition") {
  const RunResult r = run_cli("expand sub --x 2 --y 1 --h 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("|h*x|") != std::string::npos);
  CHECK(r.output.find("< 1") != std::string::npos);
}

TEST_CASE("expand json document carries the discrepancy") {
  const RunResult r =
      run_cli("expand sup --x 0.4 --y 1 --h 1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"discrepancy\"") != std::string::npos);
  CHECK(r.output.find("\"reference\"") != std::string::npos);
}

TEST_CASE("verify subset passes with exit 0") {
  const RunResult r = run_cli("verify --only genpow.* --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("verify with an unmatched pattern lists the registry and exits 2") {
  const RunResult r = run_cli("verify --only zzz");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("matches no identity") != std::string::npos);
  CHECK(r.output.find("genpow.reflection") != std::string::npos);
}

TEST_CASE("verify runs are byte-identical at a fixed seed") {
  const std::string cmd = "verify --only defarith.* --seed 42 --format csv";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.output == b.output);

  const std::string jcmd = "verify --only series.* --seed 7 --format json";
  const RunResult c = run_cli(jcmd);
  const RunResult d = run_cli(jcmd);
  CHECK(c.exit_code == 0);
  CHECK(c.output == d.output);
}

TEST_CASE("eval json is a single well-formed document") {
  const RunResult r = run_cli("eval e_sup --x 0.75 --y 1 --h 1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"function\": \"e_sup\"") != std::string::npos);
  CHECK(r.output.find("\"value\"") != std::string::npos);
}

TEST_CASE("csv eval has a header row") {
  const RunResult r = run_cli("eval brace_sub --x 0 --h 2 --format csv");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "function,value");
  CHECK(lines[1] == "brace_sub,0");
}
