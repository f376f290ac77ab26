#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topos {

using ObjectId = int;
using MorphismId = int;

// Default cap on the total number of elements of a representable (and on the
// number of quotient objects enumerated from it).
inline constexpr std::size_t kDefaultBudget = 5000;

struct Morphism {
  std::string name;
  ObjectId source = 0;
  ObjectId target = 0;

  bool operator==(const Morphism&) const = default;
};

// Unvalidated category data, as read from a category file.
struct CategoryDescription {
  struct Arrow {
    std::string name, src, dst;
  };
  struct Composite {
    std::string g, f, result;  // g o f = result
  };

  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Composite> composition;
};

/// A finite category with a total composition table on composable pairs.
///
/// Morphism ids are dense in [0, morphism_count()) and give the fixed order
/// used by every canonical form in the library. Composition is written
/// `compose(g, f)` for g o f, where f : a -> b and g : b -> c.
class FiniteCategory {
 public:
  /// Checks typing, identity and associativity laws exhaustively.
  /// Throws CategoryError listing every violation found.
  static FiniteCategory validate(const CategoryDescription& raw);

  std::size_t object_count() const { return object_names_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const std::string& object_name(ObjectId c) const;
  ObjectId object(std::string_view name) const;
  const std::vector<std::string>& object_names() const { return object_names_; }

  const Morphism& morphism(MorphismId m) const;
  MorphismId morphism(std::string_view name) const;
  const std::vector<Morphism>& morphisms() const { return morphisms_; }

  ObjectId source(MorphismId m) const { return morphism(m).source; }
  ObjectId target(MorphismId m) const { return morphism(m).target; }
  MorphismId identity(ObjectId c) const;

  bool composable(MorphismId g, MorphismId f) const;
  /// g o f; throws IllTypedComposite when target(f) != source(g).
  MorphismId compose(MorphismId g, MorphismId f) const;

  /// Hom(from, to), sorted by morphism id.
  std::span<const MorphismId> hom(ObjectId from, ObjectId to) const;
  /// Position of m inside hom(source(m), target(m)).
  std::size_t hom_position(MorphismId m) const { return hom_position_[m]; }

  bool has_object(ObjectId c) const { return c >= 0 && static_cast<std::size_t>(c) < object_count(); }

  CategoryDescription describe() const;

  bool operator==(const FiniteCategory& other) const {
    return object_names_ == other.object_names_ && morphisms_ == other.morphisms_ &&
           composition_ == other.composition_;
  }

 private:
  FiniteCategory() = default;

  std::vector<std::string> object_names_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismId> identities_;
  std::vector<MorphismId> composition_;  // row-major [g * n + f], -1 if not composable
  std::vector<std::vector<MorphismId>> homs_;  // [from * objects + to]
  std::vector<std::size_t> hom_position_;
};

/// One-object category of a finite monoid; `table[a][b]` is the product a*b,
/// and composition is g o f = g*f so presheaves are right actions.
FiniteCategory monoid_category(const std::vector<std::string>& element_names,
                               const std::vector<std::vector<int>>& table,
                               std::string object_name = "*");

/// Category of a finite preorder; `relations` lists generating pairs a <= b.
FiniteCategory poset_category(const std::vector<std::string>& objects,
                              const std::vector<std::pair<std::string, std::string>>& relations);

/// The site of directed graphs: objects V, E and two arrows s, t : V -> E.
FiniteCategory parallel_arrows_category();

}  // namespace topos
