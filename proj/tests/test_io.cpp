#include "doctest.h"

#include "topos/error.hpp"
#include "topos/filters.hpp"
#include "topos/fixtures.hpp"
#include "topos/io.hpp"
#include "topos/report.hpp"
#include "topos/verify.hpp"
#include "topos/words/automaton.hpp"

using namespace topos;
using topos::io::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::MalformedInput;
}

}  // namespace

TEST_CASE("categories round-trip through JSON") {
  for (const auto& [name, site] : bundled_sites()) {
    CAPTURE(name);
    const auto doc = io::category_to_json(*site);
    CHECK(FiniteCategory::validate(io::category_from_json(doc)) == *site);
    CHECK(FiniteCategory::validate(io::category_from_json(json::parse(doc.dump()))) == *site);
  }
}

TEST_CASE("groups and DFAs round-trip through JSON") {
  for (const auto& [name, g] : bundled_groups()) {
    const auto back = io::group_from_json(io::group_to_json(g));
    CHECK(back.names() == g.names());
    CHECK(back.table() == g.table());
  }
  for (const auto& fx : bundled_regexes()) {
    const auto d = words::compile_regex(fx.regex, fx.alphabet);
    CHECK(io::dfa_from_json(io::dfa_to_json(d)) == d);
  }
}

TEST_CASE("DFA files accept named states and list alphabets") {
  const auto doc = json::parse(R"({"alphabet": ["a", "b"], "states": ["even", "odd"], "initial": "even",
    "accepting": ["even"], "transitions": [["even","a","odd"],["odd","a","even"],["even","b","even"],["odd","b","odd"]]})");
  const auto d = io::dfa_from_json(doc);
  CHECK(d.states() == 2);
  CHECK(d.accepts("aab"));
  CHECK_FALSE(d.accepts("ab"));
}

TEST_CASE("malformed documents are rejected") {
  CHECK(code_of([] { io::dfa_from_json(json::parse(R"({"alphabet": "ab", "states": 1, "initial": 0,
    "accepting": [], "transitions": [[0, "a", 0]]})")); }) == ErrorCode::MalformedInput);
  CHECK(code_of([] { io::dfa_from_json(json::parse(R"({"alphabet": "ab", "states": 1, "initial": 0,
    "accepting": [], "transitions": [[0, "a", 0], [0, "b", 0]], "extra": 1})")); }) == ErrorCode::MalformedInput);
  CHECK(code_of([] { io::group_from_json(json::parse(R"({"elements": ["e", "x"], "table": [["e", "x"], ["x", "x"]]})")); }) ==
        ErrorCode::InvalidGroup);
  CHECK(code_of([] { io::read_json_file("definitely/not/here.json"); }) == ErrorCode::MalformedInput);
  CHECK_THROWS_AS(FiniteCategory::validate(io::category_from_json(json::parse(R"({"objects": ["A"],
    "morphisms": [{"name": "id", "src": "A", "dst": "A"}, {"name": "x", "src": "A", "dst": "A"}],
    "identities": {"A": "id"}, "composition": [{"g": "x", "f": "x", "result": "id"}]})"))),
                  CategoryError);
}

TEST_CASE("filter selections accept indices and quotient names") {
  const auto lsc = LocalStateClassifier::build(make_site(parallel_arrows_category()));
  const auto e = lsc.site().object("E");
  const auto by_name = io::filter_from_json(
      json{{"selection", {{"E", {lsc.xi().name(e, lsc.top(e))}}, {"V", {0}}}}}, lsc);
  CHECK(by_name == top_filter(lsc).subset());
  CHECK(code_of([&] { io::filter_from_json(json{{"selection", {{"W", {0}}}}}, lsc); }) == ErrorCode::MalformedInput);
  CHECK(code_of([&] { io::filter_from_json(json{{"selection", {{"E", {"nope"}}}}}, lsc); }) == ErrorCode::MalformedInput);
}

TEST_CASE("reports carry a schema version and every verdict") {
  const auto report = words_report(words::compile_regex("(ab)*", "ab"), "(ab)*");
  const auto doc = json::parse(render_machine(report));
  CHECK(doc.at("schema_version") == kReportSchemaVersion);
  CHECK(doc.at("kind") == "words");
  CHECK(doc.at("payload").at("nerode_index") == 3);
  CHECK(doc.at("payload").at("syntactic_monoid").at("order") == 6);
  CHECK(doc.at("verdicts").size() == report.verdicts.verdicts.size());
  CHECK(render_human(report).find("PASS orbit meet") != std::string::npos);
}

TEST_CASE("every verification suite passes on the bundled fixtures") {
  for (const auto& suite : suite_names()) {
    CAPTURE(suite);
    const auto cert = run_suite(suite);
    CHECK(!cert.verdicts.empty());
    for (const auto& v : cert.verdicts) {
      CAPTURE(v.check);
      CHECK(v.pass);
    }
  }
  CHECK(code_of([] { run_suite("nope"); }) == ErrorCode::MalformedInput);
}
