#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "higgsnef/cli.hpp"
#include "json.hpp"
#include "support/generators.hpp"

using namespace higgsnef;
using namespace higgsnef::testing;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("higgsnef_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kChain = R"(# genus-2 chain
[curve]
genus = 2

[atom]
label = L1
degree = 3
[atom]
label = L2
degree = 1
[atom]
label = L3
degree = 3

[arrow]
from = L1
to = L2
[arrow]
from = L2
to = L3
)";

void string_leaves(const nlohmann::ordered_json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_structured()) {
    for (const auto& v : j) string_leaves(v, out);
  }
}

}  // namespace

TEST_CASE("spec parser reads the chain") {
  CHECK(parse_bundle_spec(kChain) == genus2_counterexample());
}

TEST_CASE("spec parser reports positions") {
  CHECK_THROWS_WITH_AS(parse_bundle_spec("[curve]\ngenus = 2\n[atom]\nlabel = A\ndegree = x\n"),
                       "line 5, column 10: expected an integer, got 'x'", Error);
  CHECK_THROWS_WITH_AS(parse_bundle_spec("[curve]\ngenus = 2\n[bogus]\n"),
                       "line 3, column 2: unknown section [bogus]", Error);
  CHECK_THROWS_WITH_AS(
      parse_bundle_spec("[curve]\ngenus = 1\n[atom]\nlabel = A\ndegree = 0\n"
                        "[arrow]\nfrom = A\nto = B\n"),
      "line 8, column 6: arrow refers to unknown label 'B'", Error);
  CHECK_THROWS_AS(parse_bundle_spec("[atom]\nlabel = A\ndegree = 1\n"), Error);
  CHECK_THROWS_AS(parse_bundle_spec("[curve]\ngenus = 1\n"), Error);
  CHECK_THROWS_AS(parse_bundle_spec("[curve]\ngenus = 1\ngenus = 2\n"), Error);
  CHECK_THROWS_AS(parse_bundle_spec("[curve]\ngenus = 1\n[atom]\nlabel = A\ndegree = 1\n"
                                    "[atom]\nlabel = A\ndegree = 2\n"),
                  Error);
}

TEST_CASE("property: serialize then parse is the identity") {
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const auto e = random_higgs_bundle(rng, 6, -20, 20);
    CHECK(parse_bundle_spec(serialize_bundle_spec(e)) == e);
  }
}

TEST_CASE("demo command prints the golden values") {
  const auto r = invoke({"demo-counterexample"});
  CHECK(r.code == 0);
  CHECK(r.out.starts_with("HIGGS-UNSTABLE (destabilizer: L3)"));
  CHECK(r.out.find("theta_2: -2/3") != std::string::npos);
  CHECK(r.out.find("lambda_barE_component: 4/3") != std::string::npos);
}

TEST_CASE("json and human output carry the same values") {
  const auto path = write_temp("chain.spec", kChain);
  for (const std::string cmd : {"slope", "higgs-stability", "stability", "nef", "theta"}) {
    const auto human = invoke({cmd, path});
    const auto json = invoke({"--json", cmd, path});
    REQUIRE(human.code == 0);
    REQUIRE(json.code == 0);
    const auto doc = nlohmann::ordered_json::parse(json.out);
    CHECK(doc["schema_version"] == kJsonSchemaVersion);
    CHECK(doc["command"] == cmd);
    if (doc.contains("result")) {
      CHECK(human.out.starts_with(doc["result"].get<std::string>() + "\n"));
    }
    std::vector<std::string> leaves;
    string_leaves(doc, leaves);
    for (const auto& v : leaves) {
      if (v == cmd) continue;
      CHECK_MESSAGE(human.out.find(v) != std::string::npos, cmd << ": " << v);
    }
  }
}

TEST_CASE("commands are deterministic") {
  const auto path = write_temp("chain2.spec", kChain);
  for (const std::string cmd : {"miyaoka", "grass1", "equations", "classes", "pairing"}) {
    const auto a = invoke({"--json", cmd, path});
    const auto b = invoke({"--json", cmd, path});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("nef with explicit coefficients") {
  const auto path = write_temp("chain3.spec", kChain);
  auto r = invoke({"nef", "--a", "1", "--b", "-7/3", path});
  CHECK(r.out.starts_with("NOT NEF, witness quotient L2, pairing -4/3"));
  r = invoke({"nef", "--a", "0", "--b", "1", path});
  CHECK(r.out.starts_with("NEF"));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"slope", "/nonexistent/file"}).code == 2);
  const auto bad = write_temp("cycle.spec",
                              "[curve]\ngenus = 2\n[atom]\nlabel = A\ndegree = 0\n"
                              "[atom]\nlabel = B\ndegree = 0\n[arrow]\nfrom = A\nto = B\n"
                              "[arrow]\nfrom = B\nto = A\n");
  const auto v = invoke({"validate", bad});
  CHECK(v.code == 2);
  CHECK(v.out.starts_with("INVALID"));
  CHECK(invoke({"higgs-stability", bad}).code == 2);
  CHECK(invoke({"delta", "--rank", "9"}).code == 2);
  CHECK(invoke({"delta", "--rank", "3"}).code == 0);
  CHECK(invoke({"no-such-command"}).code == 2);
}
