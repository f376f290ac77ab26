#include "doctest.h"

#include "topos/category.hpp"
#include "topos/error.hpp"
#include "topos/fixtures.hpp"

using namespace topos;

namespace {

// A -f-> B -g-> C -h-> D with two distinct arrows A -> D, one for each
// bracketing of h o g o f.
CategoryDescription chain_with_bad_associativity() {
  CategoryDescription d;
  d.objects = {"A", "B", "C", "D"};
  for (auto o : d.objects) {
    d.morphisms.push_back({"id_" + o, o, o});
    d.identities[o] = "id_" + o;
  }
  d.morphisms.insert(d.morphisms.end(), {{"f", "A", "B"},
                                         {"g", "B", "C"},
                                         {"h", "C", "D"},
                                         {"gf", "A", "C"},
                                         {"hg", "B", "D"},
                                         {"p", "A", "D"},
                                         {"q", "A", "D"}});
  for (const auto& m : d.morphisms) {
    if (m.name.rfind("id_", 0) == 0) continue;
    d.composition.push_back({"id_" + m.dst, m.name, m.name});
    d.composition.push_back({m.name, "id_" + m.src, m.name});
  }
  for (auto o : d.objects) d.composition.push_back({"id_" + o, "id_" + o, "id_" + o});
  d.composition.insert(d.composition.end(),
                       {{"g", "f", "gf"}, {"h", "g", "hg"}, {"h", "gf", "p"}, {"hg", "f", "q"}});
  return d;
}

}  // namespace

TEST_CASE("idempotent monoid table validates") {
  const auto cat = idempotent_monoid_category();
  CHECK(cat.object_count() == 1);
  CHECK(cat.morphism_count() == 2);
  const auto x = cat.morphism("x");
  CHECK(cat.compose(x, x) == x);
  CHECK(cat.compose(cat.identity(0), x) == x);
}

TEST_CASE("parallel arrows site validates") {
  const auto cat = parallel_arrows_category();
  CHECK(cat.object_count() == 2);
  CHECK(cat.morphism_count() == 4);
  const auto v = cat.object("V"), e = cat.object("E");
  CHECK(cat.hom(v, e).size() == 2);
  CHECK(cat.hom(e, v).empty());
  CHECK(cat.hom(e, e).size() == 1);
  // Round trip through the raw description.
  CHECK(FiniteCategory::validate(cat.describe()) == cat);
}

TEST_CASE("associativity violation names the offending triple") {
  try {
    FiniteCategory::validate(chain_with_bad_associativity());
    FAIL("expected a violation");
  } catch (const CategoryError& err) {
    CHECK(err.code() == ErrorCode::AssociativityViolation);
    REQUIRE(!err.violations().empty());
    CHECK(err.violations().front().morphisms.size() == 3);
  }
}

TEST_CASE("identity violation") {
  auto d = idempotent_monoid_category().describe();
  for (auto& c : d.composition)
    if (c.g == "1" && c.f == "x") c.result = "1";
  try {
    FiniteCategory::validate(d);
    FAIL("expected a violation");
  } catch (const CategoryError& err) {
    CHECK(err.code() != ErrorCode::AssociativityViolation);
    bool identity_reported = false;
    for (const auto& v : err.violations()) identity_reported |= v.law == ErrorCode::IdentityViolation;
    CHECK(identity_reported);
  }
}

TEST_CASE("ill-typed and missing composites") {
  auto d = parallel_arrows_category().describe();
  d.composition.push_back({"s", "t", "s"});
  CHECK_THROWS_AS(FiniteCategory::validate(d), CategoryError);
  try {
    FiniteCategory::validate(d);
  } catch (const CategoryError& err) {
    CHECK(err.code() == ErrorCode::IllTypedComposite);
  }

  auto missing = idempotent_monoid_category().describe();
  missing.composition.pop_back();
  try {
    FiniteCategory::validate(missing);
    FAIL("expected a violation");
  } catch (const CategoryError& err) {
    CHECK(err.code() == ErrorCode::IllTypedComposite);
  }
}

TEST_CASE("unknown names are malformed") {
  auto d = idempotent_monoid_category().describe();
  d.morphisms.push_back({"y", "*", "nowhere"});
  CHECK_THROWS_AS(FiniteCategory::validate(d), CategoryError);
  const auto cat = idempotent_monoid_category();
  CHECK_THROWS_AS(cat.object("nowhere"), Error);
  CHECK_THROWS_AS(cat.morphism(std::string_view("nothing")), Error);
}

TEST_CASE("posets take the transitive closure") {
  const auto cat = poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(cat.morphism_count() == 6);
  CHECK(cat.hom(cat.object("a"), cat.object("c")).size() == 1);
  CHECK(cat.hom(cat.object("c"), cat.object("a")).empty());
}

TEST_CASE("every bundled site satisfies the category laws") {
  for (const auto& [name, site] : bundled_sites()) {
    CAPTURE(name);
    CHECK_NOTHROW(FiniteCategory::validate(site->describe()));
  }
}
