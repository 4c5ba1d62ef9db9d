#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pdlwb/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pdlwb::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(PDLWB_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("check") {
  const Result r = run({"check", "--model", fixture("fix1.json"), "--formula", "<a*>{3/4} p"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(R"({"valid_in": ["s0"]})"));

  const Result at = run({"check", "--model", fixture("fix1.json"), "--formula", "<a*>{3/4} p", "--state", "s1"});
  CHECK(at.code == 1);

  const Result many = run({"check", "--model", fixture("fix2.json"), "--formula", "<a u b>{2/3} p", "--formula",
                           "hm<a>{1/3} p", "--logic", "hm", "--jobs", "2"});
  CHECK(many.code == 2);  // the first formula is not an hm formula

  const Result jobs = run({"check", "--model", fixture("fix2.json"), "--formula", "<a u b>{2/3} p", "--formula",
                           "<a>{1/2} p", "--formula", "tt", "--jobs", "3"});
  CHECK(jobs.code == 0);
  const auto doc = nlohmann::json::parse(jobs.out);
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["valid_in"] == nlohmann::json::array({"s0"}));
  CHECK(doc[1]["valid_in"] == nlohmann::json::array({"s0"}));
  CHECK(doc[2]["valid_in"] == nlohmann::json::array({"s0", "s1"}));
}

TEST_CASE("weight and parse") {
  const Result r = run({"weight", "--program", "(a*)*"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out) == "w^w");
  CHECK(run({"--format", "text", "weight", "--program", "a;(b u c)"}).out == "10\n");
  CHECK(run({"weight", "--program", "a;(b u c)", "--format", "text"}).out == "10\n");

  const Result bad = run({"parse", "--program", "a;;b"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("offset 2") != std::string::npos);
  CHECK(run({"parse", "--formula", "hm<a>{1/2} p", "--logic", "hm"}).code == 0);
}

TEST_CASE("nu prints infinity") {
  const Result r = run({"nu", "--model", fixture("fix3.json"), "--program", "a*", "--target", "s1"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["nu"]["s0"] == "inf");
  CHECK(doc["divergence_detected"] == true);
  CHECK(run({"--max-coords", "1", "nu", "--model", fixture("fix3.json"), "--program", "a*", "--target", "s1"}).code ==
        3);
}

TEST_CASE("equiv") {
  const Result r = run({"equiv", "--left", fixture("fix1.json"), "--right", fixture("fix3.json"), "--mode", "logical"});
  CHECK(r.code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == false);
  CHECK(doc.contains("counterexample"));

  const Result same = run({"equiv", "--left", fixture("fix1.json"), "--right", fixture("fix1.json"), "--mode", "bisim"});
  CHECK(same.code == 0);
  CHECK(nlohmann::json::parse(same.out).contains("maps"));
  CHECK(run({"equiv", "--left", fixture("fix1.json"), "--right", fixture("fix2.json"), "--mode", "logical"}).code == 2);
}

TEST_CASE("other subcommands") {
  CHECK(run({"normalize", "--program", "a;(b u c)"}).code == 0);
  const auto lang = nlohmann::json::parse(run({"lang", "--program", "(a;b)*", "--max-words", "3"}).out);
  CHECK(lang["words"] == nlohmann::json::array({"eps", "a;b", "a;b;a;b"}));
  CHECK(run({"quotient", "--model", fixture("fix3.json")}).code == 0);
  CHECK(run({"oracle", "--model", fixture("fix2.json"), "--mode", "grid", "--formula", "<a u b>{7/12} p", "--state",
             "s0"})
            .code == 1);
  CHECK(run({"oracle", "--model", fixture("fix3.json"), "--mode", "trunc", "--program", "a*", "--target", "s1",
             "--max-words", "4"})
            .code == 0);
}

TEST_CASE("input errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"check", "--model", "/nonexistent.json", "--formula", "tt"}).code == 2);
  CHECK(run({"weight"}).code == 2);
  CHECK(run({"weight", "--program", "a*", "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"equiv", "--left", fixture("fix1.json"), "--right", fixture("fix1.json"),
                                      "--mode", "behavioral"};
  CHECK(run(args).out == run(args).out);
}
