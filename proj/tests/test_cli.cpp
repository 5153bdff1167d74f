#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Integration tests against the installed CLI binary (path injected by the
// build as BIVAR_CLI_PATH). Each test shells out via popen and inspects
// stdout bytes and the exit code.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_raw(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// env -u keeps a stray BIVAR_THREADS in the test environment from leaking in
CliResult run_cli(const std::string& args) {
  return run_raw(std::string("env -u BIVAR_THREADS \"") + BIVAR_CLI_PATH +
                 "\" " + args + " 2>/dev/null");
}

CliResult run_cli_env(const std::string& env_assignments, const std::string& args) {
  return run_raw(std::string("env ") + env_assignments + " \"" + BIVAR_CLI_PATH +
                 "\" " + args + " 2>/dev/null");
}

nlohmann::json parse_json(const std::string& s) { return nlohmann::json::parse(s); }

int count_lines_with_prefix(const std::string& out, const std::string& prefix) {
  int n = 0;
  std::size_t pos = 0;
  while (pos <= out.size()) {
    std::size_t end = out.find('\n', pos);
    if (end == std::string::npos) end = out.size();
    if (out.compare(pos, prefix.size(), prefix) == 0) ++n;
    pos = end + 1;
  }
  return n;
}

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("constant: example 3 is exactly one, example 7 hits 2/pi^2") {
  CliResult r3 = run_cli("constant --example 3 --threads 2");
  REQUIRE(r3.code == 0);
  nlohmann::json j3 = parse_json(r3.out);
  CHECK(j3["example"] == "3");
  CHECK(j3["closed_form"] == "1");
  CHECK(j3["product_value"].get<double>() == 1.0);
  CHECK(j3["threads"] == 2);

  CliResult r7 = run_cli("constant --example 7 --threads 2");
  REQUIRE(r7.code == 0);
  nlohmann::json j7 = parse_json(r7.out);
  CHECK(j7["closed_form"] == "2/pi^2");
  CHECK(j7["product_value"].get<double>() ==
        doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(j7["closed_form_value"].get<double>() ==
        doctest::Approx(0.2026423672).epsilon(1e-9));
  // series route: nothing was truncated
  CHECK(j7["pmax"] == 0);
  CHECK(j7["note"].get<std::string>().find("series") != std::string::npos);

  CliResult r1 = run_cli("constant --example 1 --k 1 --threads 2");
  REQUIRE(r1.code == 0);
  CHECK(parse_json(r1.out)["product_value"].get<double>() == 1.0);
  // non-default k must not claim the k=2 closed form
  CHECK(!parse_json(r1.out).contains("closed_form"));

  CHECK(run_cli("constant --example 12").code == 2);
  CHECK(run_cli("constant --example 5").code == 2);  // members are 5a/5b
}

TEST_CASE("converge CSV: schema, fit line, and frozen gcd values") {
  CliResult r = run_cli(
      "converge --function gcd --variant th1 --xs 1000,10000 --threads 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,raw_sum,normalized,target,abs_err,rel_err\n", 0) == 0);
  CHECK(r.out.find("\n1000,4449880,") != std::string::npos);
  CHECK(r.out.find("\n10000,584509280,") != std::string::npos);
  CHECK(r.out.find("# fit c0=") != std::string::npos);
  // target column: 1/zeta(2) truncated at p = 10^6 (tail ~ 4e-8 above)
  CHECK(r.out.find("0.6079271") != std::string::npos);
}

TEST_CASE("converge CSV is byte-stable across runs for a fixed config") {
  const std::string args =
      "converge --function sigma_gcd --variant th2ii --k 1 --xs 300,900 "
      "--pmax 5000 --threads 3";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("converge: tiny point budget aborts with marker and exit 1") {
  CliResult r = run_cli(
      "converge --function abs_ramanujan --variant th2ii --xs 40,5000 "
      "--point-budget 2000 --pmax 2000 --threads 2");
  CHECK(r.code == 1);
  CHECK(r.out.find("# aborted") != std::string::npos);
  // the 40-row still made it out before the abort
  CHECK(count_lines_with_prefix(r.out, "40,") == 1);
}

TEST_CASE("converge JSON carries rows, fit, verdict and echoed threads") {
  CliResult r = run_cli(
      "converge --function delta --variant th1 --xs 100 --format json "
      "--pmax 1000 --threads 2");
  REQUIRE(r.code == 0);
  nlohmann::json j = parse_json(r.out);
  CHECK(j["function"] == "delta");
  CHECK(j["variant"] == "th1");
  CHECK(j["k"] == 1);
  CHECK(j["threads"] == 2);
  CHECK(j["aborted"].get<bool>() == false);
  REQUIRE(j["rows"].size() == 1);
  // sum is the single lattice point (1,1); normalization is x^2 log x
  CHECK(j["rows"][0]["raw_sum"].get<double>() == 1.0);
  CHECK(j["rows"][0]["normalized"].get<double>() ==
        doctest::Approx(1.0 / (1e4 * std::log(100.0))).epsilon(1e-12));
  CHECK(j.contains("fit"));
}

TEST_CASE("check: pass/fail lines plus JSON summary; unknown suite exits 2") {
  CliResult ok = run_cli("check --suite constants --threads 2");
  REQUIRE(ok.code == 0);
  CHECK(count_lines_with_prefix(ok.out, "PASS  constants:") >= 5);
  CHECK(count_lines_with_prefix(ok.out, "FAIL") == 0);
  std::size_t brace = ok.out.rfind("\n{");
  REQUIRE(brace != std::string::npos);
  nlohmann::json j = parse_json(ok.out.substr(brace + 1));
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["failed"] == 0);
  CHECK(j["suites"][0]["suite"] == "constants");
  CHECK(j["threads"] == 2);

  CHECK(run_cli("check --suite nosuch").code == 2);
}

TEST_CASE("convolve and inverse point values") {
  CliResult c = run_cli("convolve --f one --g one --n1 4 --n2 1");
  CHECK(c.code == 0);
  CHECK(c.out == "3\n");
  CliResult i1 = run_cli("inverse --f gcd --n1 1 --n2 1");
  CHECK(i1.code == 0);
  CHECK(i1.out == "1\n");
  CliResult i2 = run_cli("inverse --f gcd --n1 4 --n2 4");
  CHECK(i2.code == 0);
  CHECK(i2.out == "-2\n");
  // inverse of one is mu(n1) mu(n2)
  CliResult i3 = run_cli("inverse --f one --n1 6 --n2 30");
  CHECK(i3.out == "-1\n");
  // float path prints 15 significant digits
  CliResult f = run_cli("convolve --f phi_ratio --g delta --n1 6 --n2 10");
  CHECK(f.code == 0);
  CHECK(f.out == "0.266666666666667\n");

  CHECK(run_cli("convolve --f nosuch --g one --n1 1 --n2 1").code == 2);
  CHECK(run_cli("inverse --f gcd --n1 0 --n2 1").code == 2);
  CHECK(run_cli("inverse --f gcd --n1 20000000 --n2 1").code == 2);
}

TEST_CASE("--threads flag beats the BIVAR_THREADS environment variable") {
  CliResult env_only = run_cli_env("BIVAR_THREADS=5",
                                   "constant --example 3 --pmax 100");
  REQUIRE(env_only.code == 0);
  CHECK(parse_json(env_only.out)["threads"] == 5);
  CliResult both = run_cli_env("BIVAR_THREADS=5",
                               "constant --example 3 --pmax 100 --threads 3");
  REQUIRE(both.code == 0);
  CHECK(parse_json(both.out)["threads"] == 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").code == 2);                       // subcommand required
  CHECK(run_cli("constant").code == 2);               // --example required
  CHECK(run_cli("converge --function gcd --variant nope --xs 10").code == 2);
  CHECK(run_cli("converge --function gcd --variant th1 --xs 10 --format xml")
            .code == 2);
  CHECK(run_cli("--threads -2 check --suite constants").code == 2);
}

TEST_CASE("--out redirects the report to a file") {
  std::string path = "/tmp/bivar_cli_out_test.json";
  std::remove(path.c_str());
  CliResult r = run_cli("constant --example 3 --pmax 100 --out " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n = std::fread(buf, 1, sizeof buf, f);
  std::fclose(f);
  nlohmann::json j = nlohmann::json::parse(std::string(buf, n));
  CHECK(j["product_value"].get<double>() == 1.0);
  std::remove(path.c_str());
}
