#include "topos/fixtures.hpp"

namespace topos {

FiniteCategory idempotent_monoid_category() { return monoid_category({"1", "x"}, {{0, 1}, {1, 1}}); }

std::vector<NamedGroup> bundled_groups() {
  std::vector<NamedGroup> out;
  out.push_back({"D4", dihedral_group(4)});
  out.push_back({"Q8", quaternion_group()});
  out.push_back({"S3", symmetric_group(3)});
  out.push_back({"S4", symmetric_group(4)});
  for (int n = 1; n <= 6; ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
  return out;
}

std::vector<NamedSite> bundled_sites() {
  std::vector<NamedSite> out;
  for (auto& g : bundled_groups()) out.push_back({g.name, make_site(group_category(g.group))});
  out.push_back({"graph", make_site(parallel_arrows_category())});
  out.push_back({"idempotent", make_site(idempotent_monoid_category())});
  out.push_back({"chain2", make_site(poset_category({"a", "b"}, {{"a", "b"}}))});
  out.push_back({"chain3", make_site(poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}))});
  out.push_back({"diamond", make_site(poset_category({"bot", "l", "r", "top"},
                                                     {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}}))});
  return out;
}

std::vector<NamedRegex> bundled_regexes() {
  return {
      {"ab_star", "(ab)*", "ab"},
      {"ends_in_a", "(a|b)*a", "ab"},
      {"a_star", "a*", "ab"},
      {"empty_word", "#e", "ab"},
      {"everything", "(a|b)*", "ab"},
      {"nothing", "#0", "ab"},
      {"starts_with_a", "a(a|b)*", "ab"},
      {"second_to_last_b", "(a|b)*b(a|b)", "ab"},
      {"even_a_blocks", "(aa|b)*", "ab"},
      {"a_then_b", "a*b*", "ab"},
      {"ends_in_abb", "(a|b)*abb", "ab"},
      {"contains_abc", "(a|b|c)*abc(a|b|c)*", "abc"},
  };
}

}  // namespace topos
