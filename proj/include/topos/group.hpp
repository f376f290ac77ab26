#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topos/category.hpp"

namespace topos {

/// A finite group given by its multiplication table; `mul(a, b)` is a*b.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::string> names, std::vector<std::vector<int>> table);

  std::size_t order() const { return names_.size(); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  /// g^-1 h g
  int conjugate(int h, int g) const { return mul(mul(inverse(g), h), g); }

  const std::string& name(int a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  int element(std::string_view name) const;
  const std::vector<std::vector<int>>& table() const { return table_; }
  bool is_abelian() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

FiniteGroup cyclic_group(int n);
/// Dihedral group of order 2n with rotation s and reflection t, t s = s^-1 t.
/// Elements are named 1, s, s2, ..., t, st, s2t, ... for s^i t^j.
FiniteGroup dihedral_group(int n);
/// Quaternion group {1, -1, i, -i, j, -j, k, -k}.
FiniteGroup quaternion_group();
/// Symmetric group on {1..n}, elements named by one-line notation,
/// product a*b = "apply a, then b" so that right actions compose.
FiniteGroup symmetric_group(int n);
/// Klein four-group Z/2 x Z/2.
FiniteGroup klein_four_group();

/// A subgroup, stored as a sorted list of element indices.
struct Subgroup {
  std::vector<int> members;

  bool contains(int g) const;
  std::size_t order() const { return members.size(); }
  auto operator<=>(const Subgroup&) const = default;
};

/// Validates that `members` is a subgroup of g; throws NotASubgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& generators);
Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<std::string>& generators);
/// g^-1 H g
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int by);

/// All subgroups: cyclic subgroups closed under pairwise joins until stable,
/// sorted by (order, members).
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g);

/// Brute-force normalizer {g | g^-1 H g = H}.
Subgroup normalizer_direct(const FiniteGroup& g, const Subgroup& h);

/// Every subgroup is normal.
bool is_dedekind(const FiniteGroup& g);

/// Short label from a smallest generating set, e.g. "<t,s2>"; "<>" for the
/// trivial subgroup.
std::string subgroup_label(const FiniteGroup& g, const Subgroup& h);

/// The one-object category of the group.
FiniteCategory group_category(const FiniteGroup& g, std::string object_name = "*");

}  // namespace topos
