#pragma once

#include <optional>
#include <span>
#include <vector>

#include "topos/certificate.hpp"
#include "topos/error.hpp"
#include "topos/lsc.hpp"

namespace topos {

/// A pointwise subset of Xi; not necessarily a subpresheaf.
class XiSubset {
 public:
  /// `indices[c]` lists selected elements of Xi(c); throws on out-of-range.
  XiSubset(const LocalStateClassifier& lsc, const std::vector<std::vector<Element>>& indices);

  bool contains(ObjectId c, Element q) const { return mask_.at(c).at(q) != 0; }
  std::vector<Element> at(ObjectId c) const;
  std::vector<std::vector<Element>> indices() const;
  const std::vector<std::vector<char>>& mask() const { return mask_; }
  const Site& site_ptr() const { return site_; }

  bool operator==(const XiSubset& other) const { return mask_ == other.mask_; }

 private:
  Site site_;
  std::vector<std::vector<char>> mask_;
};

/// A subpresheaf of Xi that is pointwise upward-closed, meet-closed and
/// contains top. Obtained only through validate_filter or filter_generated_by.
class InternalFilter {
 public:
  const XiSubset& subset() const { return subset_; }
  operator const XiSubset&() const { return subset_; }
  bool contains(ObjectId c, Element q) const { return subset_.contains(c, q); }

 private:
  friend InternalFilter validate_filter(const LocalStateClassifier&, const XiSubset&);
  explicit InternalFilter(XiSubset subset) : subset_(std::move(subset)) {}
  XiSubset subset_;
};

struct FilterViolation {
  ErrorCode clause;  // NotSubpresheaf, NotUpwardClosed, MissingTop or NotMeetClosed
  std::string witness;
};

/// First violated clause, checked in the order: subpresheaf, upward closure,
/// top, meets.
std::optional<FilterViolation> check_filter(const LocalStateClassifier& lsc, const XiSubset& selection);
/// Throws Error with the violated clause as its code.
InternalFilter validate_filter(const LocalStateClassifier& lsc, const XiSubset& selection);

/// Least internal filter containing `seeds`.
InternalFilter filter_generated_by(const LocalStateClassifier& lsc, const XiSubset& seeds);
InternalFilter top_filter(const LocalStateClassifier& lsc);
InternalFilter whole_filter(const LocalStateClassifier& lsc);

/// F as a presheaf with its inclusion into Xi; throws NotSubpresheaf.
Subobject as_presheaf(const LocalStateClassifier& lsc, const XiSubset& selection);

struct Membership {
  bool member = false;
  /// xi_X corestricted to F, present iff member.
  std::optional<PresheafMorphism> lift;
  /// First element whose classifying congruence is outside F.
  std::string witness;
};

/// X belongs to E_F iff xi_X factors through F. The lift needs F to be a
/// subpresheaf; for other selections only the verdict is computed.
Membership in_subcategory(const LocalStateClassifier& lsc, const XiSubset& selection, const Presheaf& x);

struct ComonadResult {
  Presheaf gx;
  PresheafMorphism counit;  // GX >-> X
};

/// GX(c) = {x in X(c) | xi_X(x) in F(c)}, the pullback of F >-> Xi along xi_X.
ComonadResult comonad_apply(const LocalStateClassifier& lsc, const InternalFilter& filter, const Presheaf& x);
/// Same pullback for an arbitrary subpresheaf selection.
ComonadResult comonad_apply(const LocalStateClassifier& lsc, const XiSubset& selection, const Presheaf& x);

/// Finitely checkable core of the classification of the quotient E_F:
///   (a) F lies in E_F;
///   (b) xi^F is a cocone over monos between members sampled from `samples`;
///   (c) every q in F(c) is xi^F([id_c]) of y(c)/q, which lies in E_F;
///   (d) G is idempotent, has monic counit, and preserves the terminal
///       object, sampled binary products and equalizers.
Certificate verify_main_theorem(const LocalStateClassifier& lsc, const XiSubset& selection,
                                std::span<const Presheaf> samples);

}  // namespace topos
