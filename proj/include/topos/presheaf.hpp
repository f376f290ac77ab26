#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topos/category.hpp"

namespace topos {

using Site = std::shared_ptr<const FiniteCategory>;
using Element = int;

inline Site make_site(FiniteCategory cat) { return std::make_shared<const FiniteCategory>(std::move(cat)); }

// Same pointer or structurally equal categories.
bool same_site(const Site& a, const Site& b);

/// A finite presheaf: a finite set X(c) per object and, for every
/// f : c' -> c, the restriction map X(c) -> X(c'), written x.f.
class Presheaf {
 public:
  /// Tag for constructions that are functorial by construction.
  struct Trusted {};

  /// Validates carriers, action ranges and functoriality.
  Presheaf(Site site, std::vector<std::vector<std::string>> carrier,
           std::vector<std::vector<Element>> action);
  Presheaf(Site site, std::vector<std::vector<std::string>> carrier,
           std::vector<std::vector<Element>> action, Trusted);

  const FiniteCategory& site() const { return *site_; }
  const Site& site_ptr() const { return site_; }

  std::size_t size(ObjectId c) const { return carrier_.at(c).size(); }
  std::size_t total_size() const;
  const std::vector<std::string>& elements(ObjectId c) const { return carrier_.at(c); }
  const std::string& name(ObjectId c, Element x) const;
  Element find(ObjectId c, std::string_view name) const;
  bool contains(ObjectId c, Element x) const {
    return x >= 0 && static_cast<std::size_t>(x) < size(c);
  }

  /// x.f for x in X(target f); lands in X(source f).
  Element act(Element x, MorphismId f) const { return action_[f][x]; }
  std::span<const Element> action(MorphismId f) const { return action_.at(f); }

  const std::vector<std::vector<std::string>>& carrier() const { return carrier_; }
  const std::vector<std::vector<Element>>& actions() const { return action_; }

  bool operator==(const Presheaf& other) const {
    return same_site(site_, other.site_) && carrier_ == other.carrier_ && action_ == other.action_;
  }

 private:
  void check_shape() const;
  void check_functoriality() const;

  Site site_;
  std::vector<std::vector<std::string>> carrier_;
  std::vector<std::vector<Element>> action_;
};

/// A natural transformation between presheaves on the same site.
class PresheafMorphism {
 public:
  /// Validates ranges and naturality.
  PresheafMorphism(Presheaf source, Presheaf target, std::vector<std::vector<Element>> components);
  PresheafMorphism(Presheaf source, Presheaf target, std::vector<std::vector<Element>> components,
                   Presheaf::Trusted);

  const Presheaf& source() const { return source_; }
  const Presheaf& target() const { return target_; }
  Element operator()(ObjectId c, Element x) const { return components_[c][x]; }
  std::span<const Element> component(ObjectId c) const { return components_.at(c); }
  const std::vector<std::vector<Element>>& components() const { return components_; }

  /// Pointwise injective, i.e. a monomorphism of presheaves.
  bool is_mono() const;

  bool operator==(const PresheafMorphism&) const = default;

 private:
  Presheaf source_;
  Presheaf target_;
  std::vector<std::vector<Element>> components_;
};

/// y(c): y(c)(c') = Hom(c', c) in morphism-id order, acting by precomposition.
Presheaf representable(const Site& site, ObjectId c);

/// The morphism y(c) -> X sending u : c' -> c to x.u.
PresheafMorphism yoneda_morphism(const Presheaf& x_sheaf, ObjectId c, Element x);

PresheafMorphism identity_morphism(const Presheaf& x);
/// g o f.
PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f);

Presheaf terminal(const Site& site);
Presheaf empty_presheaf(const Site& site);

/// Pointwise product; element (x, y) of X x Y at c has index x * |Y(c)| + y.
Presheaf product(const Presheaf& x, const Presheaf& y);
/// n-ary product; the empty product is the terminal presheaf.
Presheaf product(const Site& site, std::span<const Presheaf> factors);
PresheafMorphism projection(const Presheaf& x, const Presheaf& y, int which);
/// Index of (x, y) in product(X, Y) at object c.
inline Element pair_index(const Presheaf& /*x*/, const Presheaf& y, ObjectId c, Element a, Element b) {
  return static_cast<Element>(a * static_cast<Element>(y.size(c)) + b);
}

struct Coproduct {
  Presheaf sum;
  PresheafMorphism left;
  PresheafMorphism right;
};
Coproduct coproduct(const Presheaf& x, const Presheaf& y);

struct Subobject {
  Presheaf object;
  PresheafMorphism inclusion;
};

/// The subpresheaf of X on the elements with keep[c][x] set.
/// Throws NotSubpresheaf if the selection is not closed under the action.
Subobject subpresheaf(const Presheaf& x, const std::vector<std::vector<char>>& keep);
/// The least subpresheaf containing x in X(c) (its orbit).
Subobject generated_subpresheaf(const Presheaf& x_sheaf, ObjectId c, Element x);
/// Equalizer of two parallel morphisms; throws NotParallel.
Subobject equalizer(const PresheafMorphism& f, const PresheafMorphism& g);

bool is_mono(const PresheafMorphism& m);

/// All natural transformations X -> Y (only injective ones if `monos_only`),
/// stopping after `limit` results. Backtracking over elements with
/// naturality propagation.
std::vector<PresheafMorphism> enumerate_morphisms(const Presheaf& x, const Presheaf& y,
                                                  std::size_t limit, bool monos_only = false);

}  // namespace topos
