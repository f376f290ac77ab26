#pragma once

#include <string>
#include <vector>

#include "topos/group.hpp"
#include "topos/presheaf.hpp"

namespace topos {

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

struct NamedSite {
  std::string name;
  Site site;
};

struct NamedRegex {
  std::string name;
  std::string regex;
  std::string alphabet;
};

/// M = {1, x} with x*x = x.
FiniteCategory idempotent_monoid_category();

/// D4, Q8, S3, S4 and Z/n for 1 <= n <= 6.
std::vector<NamedGroup> bundled_groups();

/// Group sites of bundled_groups(), the graph site, the idempotent monoid
/// and three small posets.
std::vector<NamedSite> bundled_sites();

std::vector<NamedRegex> bundled_regexes();

}  // namespace topos
