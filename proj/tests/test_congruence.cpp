#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "topos/congruence.hpp"
#include "topos/error.hpp"
#include "topos/fixtures.hpp"

using namespace topos;

TEST_CASE("quotient objects of the idempotent monoid") {
  const auto cat = idempotent_monoid_category();
  CHECK(enumerate_quotient_objects(cat, 0).size() == 2);
}

TEST_CASE("quotient objects of y(E) on the graph site") {
  const auto cat = parallel_arrows_category();
  const auto qs = enumerate_quotient_objects(cat, cat.object("E"));
  CHECK(qs.size() == 2);
  CHECK(qs.front().is_total());
  CHECK(qs.back().is_discrete());
  CHECK(enumerate_quotient_objects(cat, cat.object("V")).size() == 1);
}

TEST_CASE("Z/2 has the two coset partitions") {
  const auto cat = group_category(cyclic_group(2));
  CHECK(enumerate_quotient_objects(cat, 0).size() == 2);
}

TEST_CASE("enumeration agrees with exhaustive set partitions") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name == "S4") continue;
    CAPTURE(name);
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c) {
      std::set<RepCongruence> expected;
      for (auto labels : oracle::quotients_by_partitions(*site, c))
        expected.insert(canonical_congruence(c, std::move(labels)));
      const auto found = enumerate_quotient_objects(*site, c);
      CHECK(std::set<RepCongruence>(found.begin(), found.end()) == expected);
      CHECK(found.size() == expected.size());
    }
  }
}

TEST_CASE("enumeration contains top and discrete and is meet-closed") {
  for (const auto& [name, site] : bundled_sites()) {
    CAPTURE(name);
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c) {
      const auto qs = enumerate_quotient_objects(*site, c);
      const std::set<RepCongruence> all(qs.begin(), qs.end());
      CHECK(all.count(total_congruence(*site, c)) == 1);
      CHECK(all.count(discrete_congruence(*site, c)) == 1);
      if (qs.size() > 40) continue;
      for (const auto& a : qs)
        for (const auto& b : qs) CHECK(all.count(meet(a, b)) == 1);
    }
  }
}

TEST_CASE("budget is enforced") {
  const auto cat = group_category(symmetric_group(4));
  try {
    enumerate_quotient_objects(cat, 0, 10);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.size() == 24);
    CHECK(e.cap() == 10);
  }
}

TEST_CASE("image quotients on the graph site") {
  const auto site = make_site(parallel_arrows_category());
  const auto v = site->object("V"), e = site->object("E");
  // Vertices a, b; edges loop at a, edge a -> b.
  std::vector<std::vector<std::string>> carrier(2);
  carrier[v] = {"a", "b"};
  carrier[e] = {"loop", "edge"};
  std::vector<std::vector<Element>> action(4);
  action[site->morphism("id_V")] = {0, 1};
  action[site->morphism("id_E")] = {0, 1};
  action[site->morphism("s")] = {0, 0};
  action[site->morphism("t")] = {0, 1};
  const Presheaf g(site, carrier, action);
  CHECK(image_quotient(yoneda_morphism(g, e, 0)).is_total());
  CHECK(image_quotient(yoneda_morphism(g, e, 1)).is_discrete());
  CHECK(element_kernel(g, e, 1) == image_quotient(yoneda_morphism(g, e, 1)));

  const auto not_rep = identity_morphism(g);
  try {
    image_quotient(not_rep);
    FAIL("expected NonRepresentableSource");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NonRepresentableSource);
  }
}

TEST_CASE("fixed points have total kernels") {
  const auto site = make_site(idempotent_monoid_category());
  const Presheaf xs(site, {{"p", "q"}}, {{0, 1}, {0, 0}});
  CHECK(image_quotient(yoneda_morphism(xs, 0, 0)).is_total());
  CHECK(image_quotient(yoneda_morphism(xs, 0, 1)).is_discrete());
}

TEST_CASE("canonical form is an isomorphism test") {
  const auto cat = group_category(dihedral_group(4));
  const auto a = RepCongruence::from_blocks(cat, 0, {{cat.morphism("1"), cat.morphism("t")},
                                                     {cat.morphism("s"), cat.morphism("s3t")},
                                                     {cat.morphism("s2"), cat.morphism("s2t")},
                                                     {cat.morphism("s3"), cat.morphism("st")}});
  // Same partition listed in another order.
  const auto b = RepCongruence::from_blocks(cat, 0, {{cat.morphism("st"), cat.morphism("s3")},
                                                     {cat.morphism("t"), cat.morphism("1")},
                                                     {cat.morphism("s3t"), cat.morphism("s")},
                                                     {cat.morphism("s2t"), cat.morphism("s2")}});
  CHECK(a == b);
  CHECK_THROWS_AS(RepCongruence::from_blocks(cat, 0, {{cat.morphism("1"), cat.morphism("s")}}), Error);
}
