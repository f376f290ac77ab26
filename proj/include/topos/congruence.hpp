#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "topos/category.hpp"
#include "topos/presheaf.hpp"

namespace topos {

/// A right-compatible partition of the representable y(c): one quotient
/// object of y(c), i.e. one element of the local state classifier at c.
///
/// Stored as block labels: labels()[c'][i] is the block of the i-th morphism
/// of Hom(c', c). Labels are numbered by first occurrence, so blocks are
/// ordered by least member and equal partitions have equal labels.
class RepCongruence {
 public:
  RepCongruence() = default;

  /// Canonicalizes `labels`; throws MalformedInput if the shape does not
  /// match y(base) or the partition is not right-compatible.
  static RepCongruence from_labels(const FiniteCategory& cat, ObjectId base,
                                   std::vector<std::vector<int>> labels);

  /// Partition given as blocks of morphism ids; unlisted morphisms of y(base)
  /// become singletons.
  static RepCongruence from_blocks(const FiniteCategory& cat, ObjectId base,
                                   const std::vector<std::vector<MorphismId>>& blocks);

  ObjectId base() const { return base_; }
  const std::vector<std::vector<int>>& labels() const { return labels_; }

  /// Blocks at each object, each a sorted list of morphism ids.
  std::vector<std::vector<std::vector<MorphismId>>> blocks(const FiniteCategory& cat) const;
  std::size_t block_count(ObjectId c) const;
  std::size_t total_blocks() const;

  /// u ~ v for u, v in the same Hom(c', base).
  bool related(const FiniteCategory& cat, MorphismId u, MorphismId v) const;

  bool is_total() const;
  bool is_discrete() const;

  auto operator<=>(const RepCongruence&) const = default;

 private:
  friend RepCongruence canonical_congruence(ObjectId base, std::vector<std::vector<int>> labels);
  ObjectId base_ = 0;
  std::vector<std::vector<int>> labels_;
};

/// Renumbers labels by first occurrence, without a compatibility check.
RepCongruence canonical_congruence(ObjectId base, std::vector<std::vector<int>> labels);

RepCongruence total_congruence(const FiniteCategory& cat, ObjectId c);
RepCongruence discrete_congruence(const FiniteCategory& cat, ObjectId c);

/// Kernel of a morphism out of a representable: u ~ v iff m(u) = m(v).
/// Throws NonRepresentableSource unless m.source() is y(c) for some c.
RepCongruence image_quotient(const PresheafMorphism& m);

/// Kernel of the Yoneda morphism of x in X(c), without materializing it.
RepCongruence element_kernel(const Presheaf& xs, ObjectId c, Element x);

/// Every quotient object of y(c), canonical and ordered by (total block
/// count, labels). Throws BudgetExceeded when y(c) has more than `cap`
/// elements or more than `cap` quotients are found.
std::vector<RepCongruence> enumerate_quotient_objects(const FiniteCategory& cat, ObjectId c,
                                                      std::size_t cap = kDefaultBudget);

/// Intersection of the two relations.
RepCongruence meet(const RepCongruence& a, const RepCongruence& b);
/// a is contained in b as a relation.
bool leq(const RepCongruence& a, const RepCongruence& b);

/// q.f for f : c' -> c: u ~ v iff f o u ~_q f o v. Lands at c'.
RepCongruence act(const FiniteCategory& cat, const RepCongruence& q, MorphismId f);

/// The quotient presheaf y(c)/q; element indices are block labels.
Presheaf quotient_presheaf(const Site& site, const RepCongruence& q);
/// The class of id_c in y(c)/q.
Element quotient_generator(const FiniteCategory& cat, const RepCongruence& q);

/// Human-readable blocks, e.g. "E:{id_E} V:{s,t}".
std::string describe(const FiniteCategory& cat, const RepCongruence& q);

}  // namespace topos
