#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "uqbc/cli.hpp"

using namespace uqbc;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "uqbc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("uqbc_test_" + name)).string();
}

bool same(const VerificationReport& a, const VerificationReport& b) {
  if (a.suite != b.suite || a.gauge != b.gauge || a.left != b.left || a.right != b.right || a.seed != b.seed)
    return false;
  if (a.params.n != b.params.n || a.params.sites != b.params.sites || a.params.mu != b.params.mu ||
      a.params.m != b.params.m || a.params.zeta != b.params.zeta)
    return false;
  if (a.checks.size() != b.checks.size()) return false;
  for (size_t k = 0; k < a.checks.size(); ++k) {
    const Check &x = a.checks[k], &y = b.checks[k];
    const bool res = x.residual == y.residual || (std::isnan(x.residual) && std::isnan(y.residual));
    if (x.id != y.id || !res || x.pass != y.pass || x.millis != y.millis || x.scalar != y.scalar) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("0.9+0.2i") == cplx(0.9, 0.2));
  CHECK(parse_complex("0.9 - 0.2i") == cplx(0.9, -0.2));
  CHECK(parse_complex("-1.5") == cplx(-1.5, 0.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("1e-3+2.5e+1i") == cplx(1e-3, 25.0));
  CHECK(parse_complex("1-i") == cplx(1.0, -1.0));
  CHECK_THROWS_AS(parse_complex("1+x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  for (cplx z : {cplx(0.1, -0.3), cplx(-2.0, 1e-7), cplx(3.0, 0.0)}) CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("example invocations") {
  Run r = cli({"verify", "--suite", "ybe", "--n", "3", "--mu", "0.41", "--samples", "10", "--seed", "7"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("pass").get<bool>());
  for (const auto& c : j.at("checks")) CHECK(c.at("residual").get<double>() < 1e-9);

  r = cli({"verify", "--suite", "symmetry", "--n", "3", "--sites", "2", "--m", "0.9", "--zeta", "0.6"});
  CHECK(r.code == 0);

  r = cli({"verify", "--suite", "ybe", "--mu", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("sinh(i mu)") != std::string::npos);
}

TEST_CASE("invalid input exits with code 2") {
  CHECK(cli({"verify", "--bogus"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"verify", "--suite", "nope"}).code == 2);
  CHECK(cli({"verify", "--n", "three"}).code == 2);
  CHECK(cli({"verify", "--gauge", "sideways"}).code == 2);
  CHECK(cli({"verify", "--right", "diagonal", "--diag-block", "3", "--n", "3"}).code == 2);
  CHECK(cli({"verify", "--n", "1"}).code == 2);
  CHECK(cli({"verify", "--seed", "-4"}).code == 2);
  const Run big = cli({"verify", "--suite", "chain", "--n", "4", "--sites", "5"});
  CHECK(big.code == 2);
  CHECK(big.err.find("size") != std::string::npos);
  const Run x0 = cli({"spectrum", "--m", "1.2", "--zeta", "0.6"});  // cosh(i mu m) = cosh(2 i mu zeta)
  CHECK(x0.code == 2);
  CHECK(x0.err.find("x(0)") != std::string::npos);
}

TEST_CASE("I/O failures exit with code 3") {
  CHECK(cli({"verify", "--suite", "hecke", "--out", "/nonexistent-dir/report.json"}).code == 3);
  CHECK(cli({"verify", "--config", "/nonexistent-dir/cfg"}).code == 3);
}

TEST_CASE("config file with command-line precedence") {
  const std::string cfg = temp_path("cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# test configuration\n n = 2\nsites=3\nmu = 0.5+0.01i\nsuite=hecke\nseed=99\n";
  }
  Run r = cli({"verify", "--config", cfg, "--sites", "2"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["params"]["n"] == 2);
  CHECK(j["params"]["sites"] == 2);
  CHECK(j["params"]["mu"]["im"].get<double>() == doctest::Approx(0.01));
  CHECK(j["params"]["seed"] == 99);
  CHECK(j["suite"] == "hecke");

  {
    std::ofstream f(cfg);
    f << "n=3\ncolour=blue\n";
  }
  r = cli({"verify", "--config", cfg});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("JSON output is deterministic and round-trips") {
  const std::vector<std::string> args{"verify", "--suite", "reflection", "--n", "2", "--samples", "2", "--seed", "5"};
  const Run a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  for (const char* key : {"suite", "params", "checks", "pass"}) CHECK(j.contains(key));
  for (const auto& c : j["checks"]) CHECK(c["millis"] == 0);

  const VerificationReport r = report_from_json(j);
  CHECK(same(report_from_json(report_to_json(r)), r));
  CHECK(report_to_json(r).dump() == j.dump());
}

TEST_CASE("report edge cases") {
  VerificationReport empty;
  empty.suite = "hecke";
  const json j = report_to_json(empty);
  CHECK(j["suite"] == "hecke");
  CHECK(j["checks"].empty());
  CHECK(j["pass"] == true);

  VerificationReport one = empty;
  one.add("hecke.example", 0.5, 1e-9, cplx(1.0, -2.0));
  one.add("hecke.diagnostic", INFINITY, INFINITY);
  CHECK_FALSE(report_to_json(one)["pass"].get<bool>());
  CHECK(same(report_from_json(json::parse(report_to_json(one).dump())), one));
  CHECK(emit_report(one, ReportFormat::text).find("FAIL") != std::string::npos);
}

TEST_CASE("output file and text format") {
  const std::string out = temp_path("report.txt");
  Run r = cli({"verify", "--suite", "hecke", "--format", "text", "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("PASS") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("spectrum subcommand") {
  Run r = cli({"spectrum", "--n", "3", "--sites", "2"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["eigenvalues"].size() == 9);
  int total = 0;
  for (const auto& c : j["clusters"]) total += c["multiplicity"].get<int>();
  CHECK(total == 9);
  CHECK(j["cluster_tol"].get<double>() == 1e-8);

  r = cli({"spectrum", "--n", "2", "--sites", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["eigenvalues"].size() == 2);

  r = cli({"spectrum", "--n", "4", "--sites", "7"});
  CHECK(r.code == 2);
}

TEST_CASE("all suites at the defaults") {
  const VerificationReport r = run_verify(RunOptions{});
  CHECK(r.pass());
  for (const char* prefix : {"hecke.", "ybe.", "reflection.", "algebra.", "chain.", "charges."}) {
    bool seen = false;
    for (const auto& c : r.checks) seen |= c.id.rfind(prefix, 0) == 0;
    CAPTURE(prefix);
    CHECK(seen);
  }
  for (size_t k = 1; k < r.checks.size(); ++k) CHECK(r.checks[k - 1].id <= r.checks[k].id);
}
