#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wdp/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wdp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wdp::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string table(const std::string& name) { return std::string(WDP_SOURCE_DIR) + "/tables/" + name; }

}  // namespace

TEST_CASE("check a degree-3 table system") {
  const auto r = run({"check", "--surface", "3,3A2", "--system", table("yes-deg3.json"), "--mode", "cyclic"});
  CHECK(r.code == 0);
  const auto both = run({"check", "--system", table("yes-deg3.json"), "--mode", "cyclic", "--path", "both"});
  CHECK(both.code == 0);
}

TEST_CASE("counterexample suite") {
  const auto r = run({"classify", "counterexample"});
  CHECK(r.code == 0);
  const auto j = run({"--format", "json", "classify", "counterexample"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.contains("checks"));
  CHECK(run({"--format", "json", "classify", "counterexample"}).out == j.out);
}

TEST_CASE("effectiveness with witness") {
  const auto r = run({"effective", "--surface", "2,A1+2A3", "--class", "L-E1-E4-E5", "--witness"});
  CHECK(r.code == 1);
  CHECK(r.out.find("false") != std::string::npos);
  CHECK(run({"effective", "--surface", "2,A1+2A3", "--class", "2L-E123456"}).code == 0);
  const auto j = run({"--format", "json", "effective", "--surface", "2,A1+2A3", "--class", "2L-E11457", "--witness"});
  CHECK(j.code == 1);
  CHECK(nlohmann::json::parse(j.out).is_object());
}

TEST_CASE("usage and input errors") {
  CHECK(run({"effective", "--surface", "9,Q", "--class", "L"}).code == 2);
  CHECK(run({"effective", "--surface", "5,A3", "--class", "L-E9"}).code == 2);
  CHECK(run({"check", "--system", "/nonexistent.json"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("classes and admissible") {
  const auto r = run({"classes", "--lattice", "B6", "--square", "-1", "--kdeg", "-1", "--count-only"});
  CHECK(r.code == 0);
  CHECK(r.out.find("27") != std::string::npos);
  CHECK(run({"admissible", "check", "(0,0,-1,-1,-1)"}).code == 0);
  CHECK(run({"admissible", "check", "(-2,-2,-2,-2)"}).code == 1);
  const auto fk = run({"--format", "json", "admissible", "first-kind", "--list"});
  CHECK(fk.code == 0);
  CHECK(nlohmann::json::parse(fk.out).dump().find("[-2,-2,-1,-2,-2,-1,-2,-2,-1]") != std::string::npos);
}

TEST_CASE("augment search and toric operations") {
  CHECK(run({"augment-search", "--system", table("example-bad.json"), "--grade", "standard"}).code == 1);
  CHECK(run({"augment-search", "--system", table("example-bad.json"), "--grade", "weak", "--all-chains"}).code == 0);
  CHECK(run({"augment-search", "--system", table("counterexample.json"), "--grade", "weak"}).code == 1);
  CHECK(run({"toric", "validate", "--system", table("example-bad.txt")}).code == 0);
  const auto p = run({"--format", "json", "toric", "perm", "--system", table("example-bad.json"), "--k", "8"});
  CHECK(p.code == 0);
  CHECK(run({"toric", "perm", "--system", table("example-bad.json"), "--k", "2"}).code == 2);
  const auto sq = run({"toric", "squares", "--system", table("counterexample.json")});
  CHECK(sq.out.find("(-1,-2,-2,-2,-1,-2,-2,-1,-2,-3)") != std::string::npos);
}

TEST_CASE("surfaces") {
  CHECK(run({"surface", "list"}).code == 0);
  const auto s = run({"--format", "json", "surface", "show", "5,A3"});
  CHECK(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["r_slo"].size() == 8);
}
