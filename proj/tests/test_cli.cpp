#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pbm/cli_main.hpp"
#include "pbm/rational.hpp"

using namespace pbm;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse command") {
  CliRun r = cli({"parse", "a.0 + (b.0;c.0)"});
  CHECK(r.code == 0);
  CHECK(r.out == "a.0 + b.0;c.0\n");
  CHECK(cli({"parse", "a.(("}).code == 1);
  CHECK(cli({"parse", "a.([1/3]0 (+) [1/3]0)"}).code == 1);
}

TEST_CASE("dist command") {
  CliRun r = cli({"dist", "--left", "a.0", "--right", "a.0", "--lambda", "1", "--exact"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0/1") != std::string::npos);

  CliRun w = cli({"dist", "--left", "a.([3/4]eps (+) [1/4]0)", "--right", "a.eps", "--lambda",
                  "1", "--exact"});
  CHECK(w.code == 0);
  CHECK(w.out.find("1/4") != std::string::npos);

  CliRun j = cli({"dist", "--left", "a.0", "--right", "b.0", "--lambda", "1", "--upto", "3",
                  "--format", "json"});
  CHECK(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["result"]["value"]["fraction"] == "1/1");

  // exactly one mode must be chosen
  CHECK(cli({"dist", "--left", "a.0", "--right", "b.0", "--lambda", "1"}).code == 1);
  // budget exhaustion maps to exit 2
  CHECK(cli({"dist", "--left", "bang(a.([1/2]b.0 (+) [1/2]0))", "--right", "bang(a.b.0)",
             "--lambda", "1/2", "--exact", "--budget", "40"})
            .code == 2);
  // bad lambda maps to exit 3
  CHECK(cli({"dist", "--left", "a.0", "--right", "b.0", "--lambda", "2", "--exact"}).code == 3);
}

TEST_CASE("bound and witness commands") {
  CliRun b = cli({"bound", "--op", "infiter", "--lambda", "4/5", "--eps", "1/10"});
  CHECK(b.code == 0);
  CHECK(b.out.find("1/3") != std::string::npos);

  CliRun w = cli({"witness", "--op", "seq", "--lambda", "1", "--eps", "1/4,1/3", "--verify"});
  CHECK(w.code == 0);
  CHECK(w.out.find("tight") != std::string::npos);

  CHECK(cli({"bound", "--op", "nosuch", "--lambda", "1", "--eps", "1/2"}).code == 3);
  CHECK(cli({"bound", "--op", "seq", "--lambda", "1", "--eps", "1/2"}).code == 3);  // arity
}

TEST_CASE("brp commands") {
  CliRun s = cli({"brp", "solve", "--target", "0.99", "--n", "20", "--t", "1"});
  CHECK(s.code == 0);
  CHECK(s.out.find("epsilon") != std::string::npos);
  CHECK(s.out.find("0.0105") != std::string::npos);

  CliRun r = cli({"brp", "report", "--n", "1", "--t", "1", "--p", "1/10", "--q", "1/10",
                  "--depth", "8", "--verify", "--format", "json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"]["chBound"]["fraction"] == "19/100");
  CHECK(doc["result"]["verify"]["ok"] == true);

  CHECK(cli({"brp", "report", "--n", "0", "--t", "1", "--p", "0", "--q", "0"}).code == 3);
}

TEST_CASE("json numeric fields round-trip") {
  CliRun j = cli({"dist", "--left", "a.([3/4]eps (+) [1/4]0)", "--right", "a.eps", "--lambda",
                  "4/5", "--exact", "--format", "json"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  std::string frac = doc["result"]["lower"]["fraction"];
  double dec = doc["result"]["lower"]["decimal"];
  CHECK(ratToDouble(ratFromString(frac)) == dec);
}

TEST_CASE("derive json matches golden files") {
  struct Row {
    const char* name;
    std::vector<std::string> args;
  };
  std::vector<Row> rows{
      {"derive_prefix.json",
       {"derive", "--term", "a.([1/2]eps (+) [1/2]0)", "--format", "json"}},
      {"derive_palt.json", {"derive", "--term", "a.0 +[1/3] a.eps", "--format", "json"}},
      {"derive_pbang.json", {"derive", "--term", "pbang(1/2, a.0)", "--format", "json"}},
      {"derive_brp_cell.json",
       {"derive", "--term", "eps;a.0 ||{a} star(a.eps, b.0)", "--depth", "2", "--format",
        "json"}},
  };
  for (const auto& row : rows) {
    CliRun r = cli(row.args);
    REQUIRE(r.code == 0);
    std::ifstream golden(std::string(PBM_GOLDEN_DIR) + "/" + row.name, std::ios::binary);
    REQUIRE_MESSAGE(golden.good(), row.name);
    std::stringstream want;
    want << golden.rdbuf();
    CHECK_MESSAGE(r.out == want.str(), row.name);
  }
}
