#pragma once

#include <optional>
#include <vector>
#include <string>

#include "topos/certificate.hpp"
#include "topos/group.hpp"
#include "topos/lsc.hpp"

namespace topos {

/// xi_Xi : Xi -> Xi, the cocone component at Xi itself. Computed by the
/// generic xi_component on Xi as a presheaf; q at c goes to the congruence
/// u ~ v iff q.u = q.v.
PresheafMorphism normalization_operator(const LocalStateClassifier& lsc);

/// q <= xi_Xi(q) for every object and every q; the first failure is the witness.
Certificate check_normalization_lemma(const LocalStateClassifier& lsc);

struct XiWitness {
  ObjectId object = 0;
  Element first = 0;   // q
  Element second = 0;  // xi_Xi(q), or a larger q' for the order witness
};

/// Some q with xi_Xi(xi_Xi(q)) != xi_Xi(q).
std::optional<XiWitness> find_non_idempotence(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer);
/// Some q1 <= q2 with xi_Xi(q1) not <= xi_Xi(q2).
std::optional<XiWitness> find_non_monotonicity(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer);

bool is_identity_operator(const PresheafMorphism& normalizer);
/// xi_Xi = top, i.e. it factors through xi_1 : 1 -> Xi.
bool is_top_operator(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer);
/// Every q is invariant under its own restrictions: q.u = q.v for all
/// parallel u, v into its base. The action-side reading of xi_Xi = top.
bool all_congruences_action_invariant(const LocalStateClassifier& lsc);

/// Subgroups of G versus quotient objects of y(*) on the group's site.
class SubgroupCongruenceBijection {
 public:
  SubgroupCongruenceBijection(FiniteGroup group, Site site);

  /// Partition of G into right cosets Hg.
  RepCongruence forward(const Subgroup& h) const;
  /// The block of the identity; throws NotACongruenceOfSubgroupForm if that
  /// block is not a subgroup.
  Subgroup backward(const RepCongruence& q) const;

  const FiniteGroup& group() const { return group_; }

 private:
  FiniteGroup group_;
  Site site_;
  std::vector<MorphismId> morphism_of_;  // element index -> morphism id
  std::vector<int> element_of_;          // morphism id -> element index
};

}  // namespace topos
