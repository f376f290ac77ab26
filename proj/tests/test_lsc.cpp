#include "doctest.h"

#include <random>

#include "topos/congruence.hpp"
#include "topos/error.hpp"
#include "topos/fixtures.hpp"
#include "topos/lsc.hpp"
#include "topos/normalize.hpp"

using namespace topos;

namespace {

Presheaf graph_with_loop_and_edge(const Site& site) {
  std::vector<std::vector<std::string>> carrier(2);
  carrier[site->object("V")] = {"a", "b"};
  carrier[site->object("E")] = {"loop", "edge"};
  std::vector<std::vector<Element>> action(4);
  action[site->morphism("id_V")] = {0, 1};
  action[site->morphism("id_E")] = {0, 1};
  action[site->morphism("s")] = {0, 0};
  action[site->morphism("t")] = {0, 1};
  return Presheaf(site, carrier, action);
}

// Random right M-set for a one-object site given by a monoid: orbits of
// randomly chosen quotients of y(*).
Presheaf random_quotient_sum(std::mt19937& rng, const LocalStateClassifier& lsc, int parts) {
  const auto& site = lsc.site_ptr();
  std::uniform_int_distribution<std::size_t> pick(0, lsc.size(0) - 1);
  Presheaf acc = empty_presheaf(site);
  for (int i = 0; i < parts; ++i) acc = coproduct(acc, quotient_presheaf(site, lsc.congruence(0, static_cast<Element>(pick(rng))))).sum;
  return acc;
}

}  // namespace

TEST_CASE("graph site classifier") {
  const auto site = make_site(parallel_arrows_category());
  const auto lsc = LocalStateClassifier::build(site);
  const auto v = site->object("V"), e = site->object("E");
  CHECK(lsc.size(v) == 1);
  CHECK(lsc.size(e) == 2);
  CHECK(lsc.congruence(e, lsc.top(e)).is_total());

  const auto g = graph_with_loop_and_edge(site);
  const auto xi = xi_component(lsc, g);
  CHECK(lsc.congruence(e, xi(e, 0)).is_total());
  CHECK(lsc.congruence(e, xi(e, 1)).is_discrete());
}

TEST_CASE("idempotent monoid classifier") {
  const auto site = make_site(idempotent_monoid_category());
  const auto lsc = LocalStateClassifier::build(site);
  REQUIRE(lsc.size(0) == 2);
  const auto fixed = lsc.top(0);
  const Element not_fixed = fixed == 0 ? 1 : 0;
  CHECK(lsc.act(not_fixed, site->morphism("x")) == fixed);
  CHECK(lsc.act(fixed, site->morphism("x")) == fixed);

  const Presheaf xs(site, {{"p", "q"}}, {{0, 1}, {0, 0}});
  const auto xi = xi_component(lsc, xs);
  CHECK(xi(0, 0) == fixed);
  CHECK(xi(0, 1) == not_fixed);
}

TEST_CASE("poset sites have a terminal classifier") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name != "chain2" && name != "chain3" && name != "diamond") continue;
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c) CHECK(lsc.size(c) == 1);
  }
}

TEST_CASE("group elements are classified by their stabilizers") {
  const auto g = dihedral_group(4);
  const auto site = make_site(group_category(g));
  const auto lsc = LocalStateClassifier::build(site);
  const SubgroupCongruenceBijection bij(g, site);
  // D4 acting on the four vertices of a square via right cosets of <t>.
  const auto h = generated_subgroup(g, std::vector<std::string>{"t"});
  const auto square = quotient_presheaf(site, bij.forward(h));
  const auto xi = xi_component(lsc, square);
  for (Element x = 0; x < static_cast<Element>(square.size(0)); ++x) {
    Subgroup stab;
    for (int a = 0; a < static_cast<int>(g.order()); ++a)
      if (square.act(x, site->morphism(g.name(a))) == x) stab.members.push_back(a);
    CHECK(bij.backward(lsc.congruence(0, xi(0, x))) == stab);
  }
}

TEST_CASE("meets and order in D4") {
  const auto g = dihedral_group(4);
  const auto site = make_site(group_category(g));
  const auto lsc = LocalStateClassifier::build(site);
  const SubgroupCongruenceBijection bij(g, site);
  auto idx = [&](std::vector<std::string> gens) { return lsc.index_of(bij.forward(generated_subgroup(g, gens))); };
  CHECK(lsc.meet(0, idx({"t", "s2"}), idx({"s"})) == idx({"s2"}));
  CHECK(lsc.leq(0, idx({"t"}), idx({"t", "s2"})));
  CHECK_FALSE(lsc.leq(0, idx({"t"}), idx({"st"})));
  for (Element q = 0; q < static_cast<Element>(lsc.size(0)); ++q) CHECK(lsc.meet(0, q, lsc.top(0)) == q);
}

TEST_CASE("index_of rejects foreign congruences") {
  const auto site = make_site(parallel_arrows_category());
  const auto lsc = LocalStateClassifier::build(site);
  const auto other = group_category(cyclic_group(3));
  CHECK_THROWS_AS(lsc.index_of(discrete_congruence(other, 0)), Error);
}

TEST_CASE("semilattice laws and monotone action on every bundled site") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name == "S4") continue;
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    const auto& cat = *site;
    for (ObjectId c = 0; c < static_cast<ObjectId>(cat.object_count()); ++c) {
      const auto n = static_cast<Element>(lsc.size(c));
      for (Element a = 0; a < n; ++a) {
        CHECK(lsc.meet(c, a, a) == a);
        CHECK(lsc.leq(c, a, lsc.top(c)));
        for (Element b = 0; b < n; ++b) {
          CHECK(lsc.meet(c, a, b) == lsc.meet(c, b, a));
          CHECK(lsc.leq(c, a, b) == (lsc.meet(c, a, b) == a));
          for (Element d = 0; d < n && n <= 12; ++d)
            CHECK(lsc.meet(c, lsc.meet(c, a, b), d) == lsc.meet(c, a, lsc.meet(c, b, d)));
          for (MorphismId f = 0; f < static_cast<MorphismId>(cat.morphism_count()); ++f) {
            if (cat.target(f) != c) continue;
            CHECK(lsc.act(lsc.meet(c, a, b), f) == lsc.meet(cat.source(f), lsc.act(a, f), lsc.act(b, f)));
            if (lsc.leq(c, a, b)) CHECK(lsc.leq(cat.source(f), lsc.act(a, f), lsc.act(b, f)));
          }
        }
      }
    }
  }
}

TEST_CASE("joint surjectivity witnesses") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name == "S4") continue;
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c)
      for (Element q = 0; q < static_cast<Element>(lsc.size(c)); ++q) {
        const auto& cong = lsc.congruence(c, q);
        const auto quotient = quotient_presheaf(site, cong);
        const auto xi = xi_component(lsc, quotient);
        CHECK(xi(c, quotient_generator(*site, cong)) == q);
      }
  }
}

TEST_CASE("cocone naturality along monomorphisms") {
  std::mt19937 rng(7);
  for (const auto& [name, site] : bundled_sites()) {
    if (name != "idempotent" && name != "S3" && name != "Z4" && name != "graph") continue;
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    std::vector<Presheaf> family;
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c)
      for (Element q = 0; q < static_cast<Element>(lsc.size(c)); ++q)
        family.push_back(quotient_presheaf(site, lsc.congruence(c, q)));
    if (site->object_count() == 1) family.push_back(random_quotient_sum(rng, lsc, 2));
    family.push_back(coproduct(family.front(), family.back()).sum);
    for (const auto& x : family)
      for (const auto& y : family)
        for (const auto& m : enumerate_morphisms(x, y, 16, true)) {
          const auto xi_x = xi_component(lsc, x);
          const auto xi_y = xi_component(lsc, y);
          CHECK(compose(xi_y, m) == xi_x);
        }
  }
}

TEST_CASE("product kernels are meets") {
  std::mt19937 rng(11);
  const auto site = make_site(idempotent_monoid_category());
  const auto lsc = LocalStateClassifier::build(site);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Presheaf> factors{random_quotient_sum(rng, lsc, 2), random_quotient_sum(rng, lsc, 2)};
    CHECK(verify_semilattice_compat(lsc, factors).passed());
  }
  CHECK(verify_semilattice_compat(lsc, {}).passed());

  const auto d4 = make_site(group_category(dihedral_group(4)));
  const auto lsc4 = LocalStateClassifier::build(d4);
  std::vector<Presheaf> factors;
  for (Element q : {1, 3, 5}) factors.push_back(quotient_presheaf(d4, lsc4.congruence(0, q)));
  CHECK(verify_semilattice_compat(lsc4, factors).passed());
  CHECK(verify_semilattice_compat(lsc4, std::span<const Presheaf>(factors).first(1)).passed());
}

TEST_CASE("classifier action is functorial on every bundled site") {
  for (const auto& [name, site] : bundled_sites()) {
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    CHECK_NOTHROW(Presheaf(site, lsc.xi().carrier(), lsc.xi().actions()));
  }
}
