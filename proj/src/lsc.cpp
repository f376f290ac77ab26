#include "topos/lsc.hpp"

#include "topos/error.hpp"

namespace topos {

LocalStateClassifier LocalStateClassifier::build(const Site& site, std::size_t cap) {
  const auto& cat = *site;
  const auto objects = cat.object_count();

  std::vector<std::vector<RepCongruence>> congruences(objects);
  std::vector<std::map<RepCongruence, Element>> index(objects);
  std::vector<Element> top(objects, -1);
  std::vector<std::vector<std::string>> carrier(objects);
  for (std::size_t c = 0; c < objects; ++c) {
    const auto obj = static_cast<ObjectId>(c);
    congruences[c] = enumerate_quotient_objects(cat, obj, cap);
    for (std::size_t i = 0; i < congruences[c].size(); ++i) {
      index[c].emplace(congruences[c][i], static_cast<Element>(i));
      carrier[c].push_back(describe(cat, congruences[c][i]));
      if (congruences[c][i].is_total()) top[c] = static_cast<Element>(i);
    }
  }

  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mf = cat.morphism(static_cast<MorphismId>(f));
    for (const auto& q : congruences[mf.target]) {
      auto it = index[mf.source].find(topos::act(cat, q, static_cast<MorphismId>(f)));
      if (it == index[mf.source].end())
        throw Error(ErrorCode::NotFunctorial, "restriction of a quotient object is missing from Xi");
      action[f].push_back(it->second);
    }
  }

  LocalStateClassifier lsc(site, Presheaf(site, std::move(carrier), std::move(action)));
  lsc.congruences_ = std::move(congruences);
  lsc.index_ = std::move(index);
  lsc.top_ = std::move(top);
  return lsc;
}

Element LocalStateClassifier::index_of(const RepCongruence& q) const {
  if (!site_->has_object(q.base())) throw Error(ErrorCode::UnknownObject, "congruence base");
  auto it = index_.at(q.base()).find(q);
  if (it == index_[q.base()].end())
    throw Error(ErrorCode::ObjectMismatch, "congruence " + describe(*site_, q) + " is not in Xi");
  return it->second;
}

Element LocalStateClassifier::meet(ObjectId c, Element a, Element b) const {
  return index_of(topos::meet(congruence(c, a), congruence(c, b)));
}

bool LocalStateClassifier::leq(ObjectId c, Element a, Element b) const {
  return topos::leq(congruence(c, a), congruence(c, b));
}

PresheafMorphism xi_component(const LocalStateClassifier& lsc, const Presheaf& x) {
  if (!same_site(lsc.site_ptr(), x.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "presheaf is not on the classifier's site");
  const auto& cat = lsc.site();
  std::vector<std::vector<Element>> comps(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t e = 0; e < x.size(obj); ++e)
      comps[c].push_back(lsc.index_of(element_kernel(x, obj, static_cast<Element>(e))));
  }
  return PresheafMorphism(x, lsc.xi(), std::move(comps), Presheaf::Trusted{});
}

Certificate verify_semilattice_compat(const LocalStateClassifier& lsc, std::span<const Presheaf> factors) {
  Certificate cert;
  const auto& cat = lsc.site();
  for (const auto& f : factors)
    if (!same_site(lsc.site_ptr(), f.site_ptr()))
      throw Error(ErrorCode::SiteMismatch, "factor is not on the classifier's site");

  const auto prod = product(lsc.site_ptr(), factors);
  const auto xi_prod = xi_component(lsc, prod);
  std::vector<PresheafMorphism> xi_factors;
  for (const auto& f : factors) xi_factors.push_back(xi_component(lsc, f));

  std::string witness;
  for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t e = 0; e < prod.size(obj) && witness.empty(); ++e) {
      // Mixed-radix decomposition matching the left-nested product.
      auto rest = e;
      Element folded = lsc.top(obj);
      for (std::size_t k = factors.size(); k-- > 0;) {
        const auto width = factors.size() == 1 ? prod.size(obj) : factors[k].size(obj);
        const auto component = factors.size() == 1 ? rest : rest % width;
        if (factors.size() != 1) rest /= width;
        folded = lsc.meet(obj, folded, xi_factors[k](obj, static_cast<Element>(component)));
      }
      if (folded != xi_prod(obj, static_cast<Element>(e)))
        witness = "at '" + cat.object_name(obj) + "' element " + prod.name(obj, static_cast<Element>(e)) +
                  ": product kernel " + lsc.xi().name(obj, xi_prod(obj, static_cast<Element>(e))) +
                  " vs meet " + lsc.xi().name(obj, folded);
    }
  }
  cert.add("xi of product is meet of xi (n=" + std::to_string(factors.size()) + ")", witness.empty(), witness);
  return cert;
}

}  // namespace topos
