#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "topos/certificate.hpp"
#include "topos/congruence.hpp"
#include "topos/presheaf.hpp"

namespace topos {

/// The local state classifier of a presheaf topos on a finite site.
///
/// Xi(c) is the set of quotient objects of y(c), each a RepCongruence, and
/// the restriction along f : c' -> c sends q to q.f. Elements of xi() are
/// indices into elements(c). The order is relation inclusion, so top(c) is
/// the total congruence.
class LocalStateClassifier {
 public:
  static LocalStateClassifier build(const Site& site, std::size_t cap = kDefaultBudget);

  const FiniteCategory& site() const { return *site_; }
  const Site& site_ptr() const { return site_; }

  const Presheaf& xi() const { return xi_; }
  std::span<const RepCongruence> elements(ObjectId c) const { return congruences_.at(c); }
  const RepCongruence& congruence(ObjectId c, Element q) const { return congruences_.at(c).at(q); }
  std::size_t size(ObjectId c) const { return congruences_.at(c).size(); }

  /// Index of q in Xi(q.base()); throws ObjectMismatch if q is not there.
  Element index_of(const RepCongruence& q) const;

  Element top(ObjectId c) const { return top_.at(c); }
  Element meet(ObjectId c, Element a, Element b) const;
  bool leq(ObjectId c, Element a, Element b) const;
  Element act(Element q, MorphismId f) const { return xi_.act(q, f); }

 private:
  LocalStateClassifier(Site site, Presheaf xi) : site_(std::move(site)), xi_(std::move(xi)) {}

  Site site_;
  Presheaf xi_;
  std::vector<std::vector<RepCongruence>> congruences_;
  std::vector<std::map<RepCongruence, Element>> index_;
  std::vector<Element> top_;
};

/// xi_X : X -> Xi, sending x in X(c) to the kernel of its Yoneda morphism.
PresheafMorphism xi_component(const LocalStateClassifier& lsc, const Presheaf& x);

/// Checks xi_{X1 x ... x Xn}(x1, ..., xn) = xi_{X1}(x1) ^ ... ^ xi_{Xn}(xn)
/// at every element of the product; n = 0 checks xi_1 = top.
Certificate verify_semilattice_compat(const LocalStateClassifier& lsc, std::span<const Presheaf> factors);

}  // namespace topos
