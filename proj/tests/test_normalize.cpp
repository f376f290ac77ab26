#include "doctest.h"

#include <map>

#include "topos/error.hpp"
#include "topos/fixtures.hpp"
#include "topos/normalize.hpp"
#include "oracles.hpp"

using namespace topos;

namespace {

struct GroupSetup {
  FiniteGroup group;
  Site site;
  LocalStateClassifier lsc;
  SubgroupCongruenceBijection bij;

  explicit GroupSetup(FiniteGroup g)
      : group(g), site(make_site(group_category(g))), lsc(LocalStateClassifier::build(site)), bij(g, site) {}

  Subgroup gen(std::vector<std::string> names) const { return generated_subgroup(group, names); }
  Subgroup normalize(const Subgroup& h) const {
    const auto n = normalization_operator(lsc);
    return bij.backward(lsc.congruence(0, n(0, lsc.index_of(bij.forward(h)))));
  }
};

// All monoid tables on {0, ..., n-1} with unit 0.
std::vector<std::vector<std::vector<int>>> monoid_tables(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  const int cells = n * n;
  std::vector<int> flat(cells, 0);
  while (true) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < cells; ++i) t[i / n][i % n] = flat[i];
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t[0][x] == x && t[x][0] == x;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        for (int c = 0; c < n && ok; ++c) ok = t[t[a][b]][c] == t[a][t[b][c]];
    if (ok) out.push_back(t);
    int i = 0;
    while (i < cells && ++flat[i] == n) flat[i++] = 0;
    if (i == cells) break;
  }
  return out;
}

}  // namespace

TEST_CASE("D4 normalization table") {
  const GroupSetup d4(dihedral_group(4));
  CHECK(d4.lsc.size(0) == 10);
  const auto whole = d4.gen({"s", "t"});
  CHECK(d4.normalize(d4.gen({"t"})) == d4.gen({"t", "s2"}));
  CHECK(d4.normalize(d4.gen({"s2t"})) == d4.gen({"t", "s2"}));
  CHECK(d4.normalize(d4.gen({"st"})) == d4.gen({"st", "s2"}));
  CHECK(d4.normalize(d4.gen({"s3t"})) == d4.gen({"st", "s2"}));
  for (auto gens : std::vector<std::vector<std::string>>{{"s"}, {"s2"}, {"t", "s2"}, {"st", "s2"}, {}, {"s", "t"}})
    CHECK(d4.normalize(d4.gen(gens)) == whole);
}

TEST_CASE("normalizer oracle agrees on every bundled group") {
  for (const auto& [name, g] : bundled_groups()) {
    if (name == "S4") continue;  // exercised by the acceptance run
    CAPTURE(name);
    const GroupSetup setup(g);
    const auto subgroups = enumerate_subgroups(g);
    CHECK(subgroups.size() == setup.lsc.size(0));
    for (const auto& h : subgroups) CHECK(setup.normalize(h) == normalizer_direct(g, h));
  }
}

TEST_CASE("subgroup enumeration agrees with the subset oracle") {
  for (const auto& [name, g] : bundled_groups()) {
    if (g.order() > 12) continue;
    CAPTURE(name);
    CHECK(enumerate_subgroups(g) == oracle::subgroups_by_subsets(g));
  }
}

TEST_CASE("graph site: both edge congruences normalize to the loop") {
  const auto site = make_site(parallel_arrows_category());
  const auto lsc = LocalStateClassifier::build(site);
  const auto n = normalization_operator(lsc);
  const auto e = site->object("E");
  for (Element q = 0; q < 2; ++q) CHECK(n(e, q) == lsc.top(e));
}

TEST_CASE("idempotent monoid and posets: identity operator") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name != "idempotent" && name != "chain2" && name != "chain3" && name != "diamond") continue;
    CAPTURE(name);
    const auto lsc = LocalStateClassifier::build(site);
    CHECK(is_identity_operator(normalization_operator(lsc)));
  }
}

TEST_CASE("Dedekind groups: constantly top") {
  for (const auto& [name, g] : bundled_groups()) {
    CAPTURE(name);
    if (name == "S4") continue;
    const GroupSetup setup(g);
    const auto n = normalization_operator(setup.lsc);
    CHECK(is_top_operator(setup.lsc, n) == is_dedekind(g));
    CHECK(all_congruences_action_invariant(setup.lsc) == is_top_operator(setup.lsc, n));
    if (name == "Q8" || g.is_abelian()) CHECK(is_top_operator(setup.lsc, n));
  }
}

TEST_CASE("normalization lemma on small monoids") {
  std::size_t count = 0;
  for (int order = 1; order <= 3; ++order)
    for (const auto& table : monoid_tables(order)) {
      std::vector<std::string> names;
      for (int i = 0; i < order; ++i) names.push_back(i == 0 ? "1" : "m" + std::to_string(i));
      const auto site = make_site(monoid_category(names, table));
      const auto lsc = LocalStateClassifier::build(site);
      CHECK(check_normalization_lemma(lsc).passed());
      ++count;
    }
  CHECK(count > 5);
}

TEST_CASE("normalization lemma on bundled sites") {
  for (const auto& [name, site] : bundled_sites()) {
    if (name == "S4") continue;
    CAPTURE(name);
    CHECK(check_normalization_lemma(LocalStateClassifier::build(site)).passed());
  }
}

TEST_CASE("D4 is neither idempotent nor monotone") {
  const GroupSetup d4(dihedral_group(4));
  const auto n = normalization_operator(d4.lsc);
  const auto idem = find_non_idempotence(d4.lsc, n);
  REQUIRE(idem.has_value());
  CHECK(n(0, idem->second) != idem->second);
  const auto tau = d4.lsc.index_of(d4.bij.forward(d4.gen({"t"})));
  CHECK(n(0, n(0, tau)) == d4.lsc.top(0));
  CHECK(n(0, tau) != d4.lsc.top(0));

  const auto mono = find_non_monotonicity(d4.lsc, n);
  REQUIRE(mono.has_value());
  CHECK(d4.lsc.leq(0, mono->first, mono->second));
  CHECK_FALSE(d4.lsc.leq(0, n(0, mono->first), n(0, mono->second)));
}

TEST_CASE("subgroup and congruence bijection") {
  const GroupSetup d4(dihedral_group(4));
  const auto& g = d4.group;
  for (const auto& h : enumerate_subgroups(g)) {
    CHECK(d4.bij.backward(d4.bij.forward(h)) == h);
    for (int a = 0; a < static_cast<int>(g.order()); ++a)
      CHECK(act(*d4.site, d4.bij.forward(h), d4.site->morphism(g.name(a))) == d4.bij.forward(conjugate(g, h, a)));
  }
  CHECK(d4.bij.forward(d4.gen({})).is_discrete());
  CHECK(act(*d4.site, d4.bij.forward(d4.gen({"t"})), d4.site->morphism("s")) == d4.bij.forward(d4.gen({"s2t"})));
}

TEST_CASE("brute-force normalizers") {
  const auto d4 = dihedral_group(4);
  CHECK(normalizer_direct(d4, generated_subgroup(d4, std::vector<std::string>{"t"})) ==
        generated_subgroup(d4, std::vector<std::string>{"t", "s2"}));
  const auto whole = generated_subgroup(d4, std::vector<std::string>{"s", "t"});
  CHECK(normalizer_direct(d4, whole) == whole);
  const auto s3 = symmetric_group(3);
  const auto rot = generated_subgroup(s3, std::vector<std::string>{"231"});
  CHECK(rot.order() == 3);
  CHECK(normalizer_direct(s3, rot).order() == 6);
  CHECK_THROWS_AS(normalizer_direct(d4, Subgroup{{0, 1}}), Error);
}

TEST_CASE("invalid group tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup::from_table({"a", "b"}, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(make_subgroup(dihedral_group(4), {0, 1}), Error);
}
