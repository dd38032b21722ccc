#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zsum/certificate_json.hpp"
#include "zsum/cli.hpp"

using namespace zsum;
using namespace zsum::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("zsum_cli_test_" + name);
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse_args examples") {
    auto cmd = parse_args({"egz-solve", "--modulus", "3", "--values", "1,2,3,4,5"});
    const auto& solve = std::get<EgzSolve>(cmd.sub);
    CHECK(solve.n == Modulus(3));
    CHECK(solve.values.inline_values == std::vector<Value>{1, 2, 3, 4, 5});

    cmd = parse_args({"sets-check", "--desc", "2N+0", "--property", "syndetic", "--g", "1,2", "--window", "1000"});
    const auto& sets = std::get<SetsCheck>(cmd.sub);
    CHECK(sets.property == SetProperty::Syndetic);
    CHECK(sets.g == std::vector<Value>{1, 2});
    CHECK(sets.window == 1000);

    CHECK_THROWS_AS(parse_args({"egz-solve", "--modulus", "0"}), UsageError);
  }

  TEST_CASE("usage errors name the offending flag") {
    try {
      parse_args({"egz-solve", "--modulus", "3", "--values", "1,2", "--bogus", "1"});
      FAIL("expected a usage error");
    } catch (const UsageError& e) {
      CHECK(contains(e.what(), "--bogus"));
    }
    try {
      parse_args({"egz-solve", "--modulus", "0", "--values", "1"});
      FAIL("expected a usage error");
    } catch (const UsageError& e) {
      CHECK(contains(e.what(), "--modulus"));
    }
    try {
      parse_args({"egz-solve", "--modulus", "2", "--values", "1,-2"});
      FAIL("expected a usage error");
    } catch (const UsageError& e) {
      CHECK(contains(e.what(), "--values"));
      CHECK(contains(e.what(), "negative"));
    }
  }

  TEST_CASE("exit code matrix") {
    struct Case {
      std::vector<std::string> args;
      int code;
    };
    const std::vector<Case> cases{
        {{"egz-solve", "--modulus", "3", "--values", "1,2,3,4,5"}, kSuccess},
        {{"egz-solve", "--modulus", "3", "--values", "0,0,1,1"}, kNotFound},
        {{"egz-solve", "--modulus", "3", "--values", "0,0,1,1", "--method", "brute"}, kNotFound},
        {{"egz-solve", "--modulus", "4", "--values", "1,1,1,1,1,1,1", "--split", "2"}, kSuccess},
        {{"egz-solve", "--modulus", "4", "--values", "1,1,1", "--split", "2"}, kUsage},
        {{"egz-solve", "--modulus", "4", "--values", "1,1,1", "--split", "3"}, kUsage},
        {{"egz-solve", "--modulus", "0"}, kUsage},
        {{"egz-solve", "--modulus", "3"}, kUsage},
        {{"egz-solve", "--modulus", "3", "--values", "1,x"}, kUsage},
        {{"egz-solve", "--budget", "10", "--modulus", "10", "--values", "1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1",
          "--method", "brute"},
         kBudget},
        {{"egz-partition", "--modulus", "2", "--values", "1,2,3,4,5,6", "--colors", "1,2,1,2,1,2"}, kSuccess},
        {{"egz-partition", "--modulus", "2", "--values", "1,2,3,4,5,6", "--colors", "1,2,1,2,1,2", "--threshold",
          "quadratic"},
         kUsage},
        {{"egz-partition", "--modulus", "2", "--values", "1,2,3", "--colors", "1,2"}, kUsage},
        {{"egz-partition", "--modulus", "2", "--values", "1,2,3", "--colors", "1,1,3", "--r", "2"}, kUsage},
        {{"davenport", "--modulus", "6"}, kSuccess},
        {{"davenport", "--modulus", "10", "--budget", "5"}, kBudget},
        {{"sets-check", "--desc", "2N+0", "--property", "syndetic", "--g", "1,2", "--window", "1000"}, kSuccess},
        {{"sets-check", "--desc", "I2", "--property", "syndetic", "--g", "1,2,3", "--window", "100"}, kNotFound},
        {{"sets-check", "--desc", "I2", "--property", "thick", "--f", "1,2,3", "--bound", "100"}, kSuccess},
        {{"sets-check", "--desc", "2N+0", "--property", "thick", "--f", "1,2", "--bound", "100"}, kNotFound},
        {{"sets-check", "--desc", "2N+0 & I2", "--property", "pws", "--g", "1,2", "--f", "1,2,3,4,5"}, kSuccess},
        {{"sets-check", "--desc", "2N+0 & I2", "--x", "5"}, kNotFound},
        {{"sets-check", "--desc", "I2", "--x", "5"}, kSuccess},
        {{"sets-check", "--desc", "2N+7", "--x", "5"}, kUsage},
        {{"sets-check", "--desc", "I2", "--property", "pws", "--f", "1"}, kUsage},
        {{"sets-check", "--desc", "I2", "--property", "color"}, kUsage},
        {{"config-build", "--modulus", "2", "--surrogate", "mod:3", "--levels", "2", "--affine", "1"}, kSuccess},
        {{"config-build", "--modulus", "2", "--surrogate", "mod:3", "--levels", "2", "--seq", "1,2,3"}, kUsage},
        {{"config-build", "--modulus", "2", "--surrogate", "ip:1,2,4,8,16", "--levels", "2", "--seq",
          "1,2,3,4,5,6"},
         kNotFound},
        {{"config-build", "--modulus", "2", "--surrogate", "zz:3", "--levels", "2", "--affine", "1"}, kUsage},
        {{"config-build", "--modulus", "2", "--surrogate", "mod:3", "--levels", "2"}, kUsage},
        {{"config-verify", "--cert", "/nonexistent/cert.json", "--affine", "1"}, kUsage},
        {{"frobnicate"}, kUsage},
        {{}, kUsage},
        {{"--help"}, kSuccess},
    };
    for (const auto& c : cases) {
      std::string joined;
      for (const auto& a : c.args) joined += a + " ";
      CAPTURE(joined);
      CHECK(invoke(c.args).code == c.code);
    }
  }

  TEST_CASE("witness rendering") {
    auto r = invoke({"egz-solve", "--format", "json", "--modulus", "2", "--values", "0,0,1"});
    CHECK(r.out == "{\"indices\":[\"0\",\"1\"],\"modulus\":\"2\"}\n");

    r = invoke({"egz-solve", "--modulus", "3", "--values", "0,0,1,1"});
    CHECK(r.code == kNotFound);
    CHECK(contains(r.out, "no zero-sum subset of size n exists"));

    r = invoke({"egz-solve", "--modulus", "3", "--values", "1,2,3,4,5", "--format", "csv"});
    CHECK(r.out == "index,value,residue\n0,1,1\n1,2,2\n2,3,0\n");

    r = invoke({"egz-partition", "--format", "json", "--modulus", "2", "--values", "1,2,3,4,5,6", "--colors",
                "1,2,1,2,1,2"});
    CHECK(r.out == "{\"color\":\"1\",\"witness\":{\"indices\":[\"0\",\"2\"],\"modulus\":\"2\"}}\n");

    r = invoke({"davenport", "--modulus", "8"});
    CHECK(r.out == "D(Z_8) = 8\n");

    r = invoke({"sets-check", "--desc", "I2", "--property", "syndetic", "--g", "1,2,3", "--window", "100",
                "--format", "json"});
    CHECK(contains(r.out, "\"uncovered\":\"11\""));
  }

  TEST_CASE("values from a file") {
    const auto path = temp_path("values.txt");
    {
      std::ofstream f(path);
      f << "1 2\n3\t4 5\n";
    }
    auto r = invoke({"egz-solve", "--modulus", "3", "--file", path.string()});
    CHECK(r.code == kSuccess);
    CHECK(contains(r.out, "indices 0 1 2"));
    {
      std::ofstream f(path);
      f << "1 2 -3\n";
    }
    CHECK(invoke({"egz-solve", "--modulus", "3", "--file", path.string()}).code == kUsage);
    CHECK(invoke({"egz-solve", "--modulus", "3", "--file", path.string(), "--values", "1"}).code == kUsage);
    std::filesystem::remove(path);
  }

  TEST_CASE("ZS_BUDGET overrides the default and --budget overrides ZS_BUDGET") {
    setenv("ZS_BUDGET", "5", 1);
    CHECK(parse_args({"davenport", "--modulus", "3"}).budget == 5);
    CHECK(invoke({"davenport", "--modulus", "10"}).code == kBudget);
    CHECK(invoke({"davenport", "--modulus", "10", "--budget", "100000000"}).code == kSuccess);
    setenv("ZS_BUDGET", "lots", 1);
    CHECK(invoke({"davenport", "--modulus", "3"}).code == kUsage);
    unsetenv("ZS_BUDGET");
    CHECK(parse_args({"davenport", "--modulus", "3"}).budget == kDefaultBudget);
  }

  TEST_CASE("config-build then config-verify round trip") {
    const auto cert_path = temp_path("cert.json");
    const auto seq_path = temp_path("seqs.txt");
    {
      std::ofstream f(seq_path);
      for (int j = 1; j <= 2; ++j) {
        for (int i = 1; i <= 18; ++i) f << j * i << " ";
        f << "\n";
      }
    }
    auto r = invoke({"config-build", "--modulus", "2", "--surrogate", "mod:2", "--levels", "3", "--file",
                     seq_path.string(), "--out", cert_path.string()});
    REQUIRE(r.code == kSuccess);
    CHECK(contains(r.out, "wrote certificate"));

    r = invoke({"config-verify", "--cert", cert_path.string(), "--file", seq_path.string()});
    CHECK(r.code == kSuccess);
    CHECK(contains(r.out, "chains visited: 26 / 26"));
    CHECK(contains(r.out, "certificate valid"));

    r = invoke({"config-verify", "--format", "json", "--cert", cert_path.string(), "--file", seq_path.string()});
    CHECK(contains(r.out, "\"chains_visited\":\"26\""));
    CHECK(contains(r.out, "\"valid\":true"));

    // tamper with one stored value
    std::string text;
    {
      std::ifstream f(cert_path);
      std::getline(f, text);
    }
    auto cert = parse_certificate(text);
    cert.blocks[2].values[1] += 1;
    {
      std::ofstream f(cert_path);
      f << serialize_certificate(cert);
    }
    r = invoke({"config-verify", "--cert", cert_path.string(), "--file", seq_path.string(), "--format", "csv"});
    CHECK(r.code == kNotFound);
    CHECK(r.out.rfind("clause,detail\n", 0) == 0);
    CHECK(contains(r.out, "value mismatch"));

    // different sequences
    r = invoke({"config-verify", "--cert", cert_path.string(), "--seq", "1,2,3"});
    CHECK(r.code == kNotFound);
    CHECK(contains(r.err, "fingerprint"));

    std::filesystem::remove(cert_path);
    std::filesystem::remove(seq_path);
  }

  TEST_CASE("affine sequences take their lengths from the certificate") {
    const auto cert_path = temp_path("affine.json");
    auto r = invoke({"config-build", "--modulus", "3", "--surrogate", "mod:4", "--levels", "2", "--affine", "3",
                     "--out", cert_path.string()});
    REQUIRE(r.code == kSuccess);
    r = invoke({"config-verify", "--cert", cert_path.string(), "--affine", "3"});
    CHECK(r.code == kSuccess);
    CHECK(contains(r.out, "chains visited: 15 / 15"));
    r = invoke({"config-verify", "--cert", cert_path.string(), "--affine", "3", "--length", "100"});
    CHECK(r.code == kNotFound);
    std::filesystem::remove(cert_path);
  }

  TEST_CASE("config-build writes the certificate to stdout without --out") {
    auto r = invoke({"config-build", "--modulus", "3", "--surrogate", "mod:1", "--levels", "1", "--seq",
                     "3,3,3,3,3"});
    REQUIRE(r.code == kSuccess);
    const auto cert = parse_certificate(r.out);
    CHECK(cert.blocks.size() == 1);
    CHECK(cert.blocks[0].values == std::vector<Value>{3, 3, 3});
  }
}
