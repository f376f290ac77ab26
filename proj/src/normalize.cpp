#include "topos/normalize.hpp"

#include <algorithm>

#include "topos/error.hpp"

namespace topos {

PresheafMorphism normalization_operator(const LocalStateClassifier& lsc) { return xi_component(lsc, lsc.xi()); }

Certificate check_normalization_lemma(const LocalStateClassifier& lsc) {
  Certificate cert;
  const auto normalizer = normalization_operator(lsc);
  const auto& cat = lsc.site();
  std::string witness;
  for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t q = 0; q < lsc.size(obj) && witness.empty(); ++q) {
      const auto image = normalizer(obj, static_cast<Element>(q));
      // q <= xi(q), equivalently q ^ xi(q) = q
      if (!lsc.leq(obj, static_cast<Element>(q), image) ||
          lsc.meet(obj, static_cast<Element>(q), image) != static_cast<Element>(q))
        witness = "at '" + cat.object_name(obj) + "': " + lsc.xi().name(obj, static_cast<Element>(q)) +
                  " not <= " + lsc.xi().name(obj, image);
    }
  }
  cert.add("normalization lemma: q <= xi_Xi(q)", witness.empty(), witness);
  return cert;
}

std::optional<XiWitness> find_non_idempotence(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer) {
  const auto& cat = lsc.site();
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t q = 0; q < lsc.size(obj); ++q) {
      const auto once = normalizer(obj, static_cast<Element>(q));
      if (normalizer(obj, once) != once) return XiWitness{obj, static_cast<Element>(q), once};
    }
  }
  return std::nullopt;
}

std::optional<XiWitness> find_non_monotonicity(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer) {
  const auto& cat = lsc.site();
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t a = 0; a < lsc.size(obj); ++a)
      for (std::size_t b = 0; b < lsc.size(obj); ++b) {
        const auto qa = static_cast<Element>(a), qb = static_cast<Element>(b);
        if (lsc.leq(obj, qa, qb) && !lsc.leq(obj, normalizer(obj, qa), normalizer(obj, qb)))
          return XiWitness{obj, qa, qb};
      }
  }
  return std::nullopt;
}

bool is_identity_operator(const PresheafMorphism& normalizer) {
  return normalizer == identity_morphism(normalizer.source());
}

bool is_top_operator(const LocalStateClassifier& lsc, const PresheafMorphism& normalizer) {
  for (std::size_t c = 0; c < lsc.site().object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t q = 0; q < lsc.size(obj); ++q)
      if (normalizer(obj, static_cast<Element>(q)) != lsc.top(obj)) return false;
  }
  return true;
}

bool all_congruences_action_invariant(const LocalStateClassifier& lsc) {
  const auto& cat = lsc.site();
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t d = 0; d < cat.object_count(); ++d) {
      const auto hom = cat.hom(static_cast<ObjectId>(d), obj);
      for (std::size_t q = 0; q < lsc.size(obj); ++q)
        for (MorphismId u : hom)
          if (lsc.act(static_cast<Element>(q), u) != lsc.act(static_cast<Element>(q), hom.front())) return false;
    }
  }
  return true;
}

SubgroupCongruenceBijection::SubgroupCongruenceBijection(FiniteGroup group, Site site)
    : group_(std::move(group)), site_(std::move(site)) {
  const auto& cat = *site_;
  if (cat.object_count() != 1 || cat.morphism_count() != group_.order())
    throw Error(ErrorCode::SiteMismatch, "site is not the one-object category of the group");
  morphism_of_.resize(group_.order());
  element_of_.resize(group_.order());
  for (std::size_t a = 0; a < group_.order(); ++a) {
    const auto m = cat.morphism(group_.name(static_cast<int>(a)));
    morphism_of_[a] = m;
    element_of_[m] = static_cast<int>(a);
  }
  for (std::size_t a = 0; a < group_.order(); ++a)
    for (std::size_t b = 0; b < group_.order(); ++b)
      if (cat.compose(morphism_of_[a], morphism_of_[b]) != morphism_of_[group_.mul(static_cast<int>(a), static_cast<int>(b))])
        throw Error(ErrorCode::SiteMismatch, "site composition disagrees with the group table");
}

RepCongruence SubgroupCongruenceBijection::forward(const Subgroup& h) const {
  const auto& cat = *site_;
  make_subgroup(group_, h.members);
  // u ~ v iff u v^-1 in H, i.e. Hu = Hv
  std::vector<std::vector<int>> labels(1);
  for (MorphismId u : cat.hom(0, 0)) {
    const int g = element_of_[u];
    int least = g;
    for (int x : h.members) least = std::min(least, group_.mul(x, g));
    labels[0].push_back(least);
  }
  return RepCongruence::from_labels(cat, 0, std::move(labels));
}

Subgroup SubgroupCongruenceBijection::backward(const RepCongruence& q) const {
  const auto& cat = *site_;
  std::vector<int> members;
  const auto id = cat.identity(0);
  for (MorphismId u : cat.hom(0, 0))
    if (q.related(cat, u, id)) members.push_back(element_of_[u]);
  try {
    return make_subgroup(group_, std::move(members));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotACongruenceOfSubgroupForm, e.what());
  }
}

}  // namespace topos
