#include "topos/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "topos/error.hpp"

namespace topos {

bool same_site(const Site& a, const Site& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Presheaf::Presheaf(Site site, std::vector<std::vector<std::string>> carrier,
                   std::vector<std::vector<Element>> action)
    : site_(std::move(site)), carrier_(std::move(carrier)), action_(std::move(action)) {
  check_shape();
  check_functoriality();
}

Presheaf::Presheaf(Site site, std::vector<std::vector<std::string>> carrier,
                   std::vector<std::vector<Element>> action, Trusted)
    : site_(std::move(site)), carrier_(std::move(carrier)), action_(std::move(action)) {}

std::size_t Presheaf::total_size() const {
  std::size_t total = 0;
  for (const auto& set : carrier_) total += set.size();
  return total;
}

const std::string& Presheaf::name(ObjectId c, Element x) const {
  if (!site_->has_object(c) || !contains(c, x))
    throw Error(ErrorCode::ElementNotInCarrier,
                "element " + std::to_string(x) + " at object " + std::to_string(c));
  return carrier_[c][x];
}

Element Presheaf::find(ObjectId c, std::string_view name) const {
  const auto& set = carrier_.at(c);
  auto it = std::find(set.begin(), set.end(), name);
  if (it == set.end())
    throw Error(ErrorCode::ElementNotInCarrier,
                "'" + std::string(name) + "' at object " + site_->object_name(c));
  return static_cast<Element>(it - set.begin());
}

void Presheaf::check_shape() const {
  if (!site_) throw Error(ErrorCode::MalformedInput, "presheaf without a site");
  const auto& cat = *site_;
  if (carrier_.size() != cat.object_count())
    throw Error(ErrorCode::MalformedInput, "presheaf carrier does not cover every object");
  if (action_.size() != cat.morphism_count())
    throw Error(ErrorCode::MalformedInput, "presheaf action does not cover every morphism");
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mor = cat.morphism(static_cast<MorphismId>(f));
    if (action_[f].size() != carrier_[mor.target].size())
      throw Error(ErrorCode::MalformedInput, "action of '" + mor.name + "' has the wrong domain size");
    for (Element v : action_[f])
      if (v < 0 || static_cast<std::size_t>(v) >= carrier_[mor.source].size())
        throw Error(ErrorCode::ElementNotInCarrier, "action of '" + mor.name + "' leaves the carrier");
  }
}

void Presheaf::check_functoriality() const {
  const auto& cat = *site_;
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto id = cat.identity(static_cast<ObjectId>(c));
    for (std::size_t x = 0; x < carrier_[c].size(); ++x)
      if (action_[id][x] != static_cast<Element>(x))
        throw Error(ErrorCode::NotFunctorial, "identity of '" + cat.object_name(static_cast<ObjectId>(c)) +
                                                  "' moves '" + carrier_[c][x] + "'");
  }
  // x.(f o g) = (x.f).g
  const auto n = static_cast<MorphismId>(cat.morphism_count());
  for (MorphismId f = 0; f < n; ++f)
    for (MorphismId g = 0; g < n; ++g) {
      if (!cat.composable(f, g)) continue;
      const auto fg = cat.compose(f, g);
      const auto c = cat.target(f);
      for (std::size_t x = 0; x < carrier_[c].size(); ++x)
        if (action_[fg][x] != action_[g][action_[f][x]])
          throw Error(ErrorCode::NotFunctorial,
                      "'" + carrier_[c][x] + "' . (" + cat.morphism(f).name + " o " +
                          cat.morphism(g).name + ") differs from the iterated action");
    }
}

PresheafMorphism::PresheafMorphism(Presheaf source, Presheaf target,
                                   std::vector<std::vector<Element>> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!same_site(source_.site_ptr(), target_.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "morphism between presheaves on different sites");
  const auto& cat = source_.site();
  if (components_.size() != cat.object_count())
    throw Error(ErrorCode::MalformedInput, "morphism does not have a component per object");
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    if (components_[c].size() != source_.size(static_cast<ObjectId>(c)))
      throw Error(ErrorCode::MalformedInput, "component has the wrong domain size");
    for (Element v : components_[c])
      if (!target_.contains(static_cast<ObjectId>(c), v))
        throw Error(ErrorCode::ElementNotInCarrier, "component leaves the target carrier");
  }
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mor = cat.morphism(static_cast<MorphismId>(f));
    for (std::size_t x = 0; x < source_.size(mor.target); ++x) {
      const auto lhs = components_[mor.source][source_.act(static_cast<Element>(x), static_cast<MorphismId>(f))];
      const auto rhs = target_.act(components_[mor.target][x], static_cast<MorphismId>(f));
      if (lhs != rhs)
        throw Error(ErrorCode::NotNatural, "naturality fails at '" + mor.name + "' on '" +
                                               source_.name(mor.target, static_cast<Element>(x)) + "'");
    }
  }
}

PresheafMorphism::PresheafMorphism(Presheaf source, Presheaf target,
                                   std::vector<std::vector<Element>> components, Presheaf::Trusted)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {}

bool PresheafMorphism::is_mono() const {
  for (std::size_t c = 0; c < components_.size(); ++c) {
    std::vector<char> seen(target_.size(static_cast<ObjectId>(c)), 0);
    for (Element v : components_[c]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_mono(const PresheafMorphism& m) { return m.is_mono(); }

Presheaf representable(const Site& site, ObjectId c) {
  const auto& cat = *site;
  if (!cat.has_object(c)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(c));
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  for (std::size_t d = 0; d < cat.object_count(); ++d)
    for (MorphismId u : cat.hom(static_cast<ObjectId>(d), c)) carrier[d].push_back(cat.morphism(u).name);

  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t g = 0; g < cat.morphism_count(); ++g) {
    const auto& mg = cat.morphism(static_cast<MorphismId>(g));
    for (MorphismId u : cat.hom(mg.target, c))
      action[g].push_back(static_cast<Element>(cat.hom_position(cat.compose(u, static_cast<MorphismId>(g)))));
  }
  return Presheaf(site, std::move(carrier), std::move(action), Presheaf::Trusted{});
}

PresheafMorphism yoneda_morphism(const Presheaf& xs, ObjectId c, Element x) {
  const auto& cat = xs.site();
  if (!cat.has_object(c)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(c));
  if (!xs.contains(c, x))
    throw Error(ErrorCode::ElementNotInCarrier, "element " + std::to_string(x) + " at '" + cat.object_name(c) + "'");
  auto y = representable(xs.site_ptr(), c);
  std::vector<std::vector<Element>> comps(cat.object_count());
  for (std::size_t d = 0; d < cat.object_count(); ++d)
    for (MorphismId u : cat.hom(static_cast<ObjectId>(d), c)) comps[d].push_back(xs.act(x, u));
  return PresheafMorphism(std::move(y), xs, std::move(comps), Presheaf::Trusted{});
}

PresheafMorphism identity_morphism(const Presheaf& x) {
  std::vector<std::vector<Element>> comps(x.site().object_count());
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t i = 0; i < x.size(static_cast<ObjectId>(c)); ++i) comps[c].push_back(static_cast<Element>(i));
  return PresheafMorphism(x, x, std::move(comps), Presheaf::Trusted{});
}

PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f) {
  if (!(f.target() == g.source()))
    throw Error(ErrorCode::NotParallel, "composite of morphisms whose ends do not match");
  auto comps = f.components();
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto& v : comps[c]) v = g(static_cast<ObjectId>(c), v);
  return PresheafMorphism(f.source(), g.target(), std::move(comps), Presheaf::Trusted{});
}

Presheaf terminal(const Site& site) {
  std::vector<std::vector<std::string>> carrier(site->object_count(), std::vector<std::string>{"*"});
  std::vector<std::vector<Element>> action(site->morphism_count(), std::vector<Element>{0});
  return Presheaf(site, std::move(carrier), std::move(action), Presheaf::Trusted{});
}

Presheaf empty_presheaf(const Site& site) {
  return Presheaf(site, std::vector<std::vector<std::string>>(site->object_count()),
                  std::vector<std::vector<Element>>(site->morphism_count()), Presheaf::Trusted{});
}

Presheaf product(const Presheaf& x, const Presheaf& y) {
  if (!same_site(x.site_ptr(), y.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "product of presheaves on different sites");
  const auto& cat = x.site();
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (const auto& a : x.elements(obj))
      for (const auto& b : y.elements(obj)) carrier[c].push_back("(" + a + "," + b + ")");
  }
  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mor = cat.morphism(static_cast<MorphismId>(f));
    for (std::size_t a = 0; a < x.size(mor.target); ++a)
      for (std::size_t b = 0; b < y.size(mor.target); ++b)
        action[f].push_back(pair_index(x, y, mor.source, x.act(static_cast<Element>(a), static_cast<MorphismId>(f)),
                                       y.act(static_cast<Element>(b), static_cast<MorphismId>(f))));
  }
  return Presheaf(x.site_ptr(), std::move(carrier), std::move(action), Presheaf::Trusted{});
}

Presheaf product(const Site& site, std::span<const Presheaf> factors) {
  Presheaf acc = terminal(site);
  for (std::size_t i = 0; i < factors.size(); ++i) acc = i == 0 ? factors[0] : product(acc, factors[i]);
  return acc;
}

PresheafMorphism projection(const Presheaf& x, const Presheaf& y, int which) {
  auto xy = product(x, y);
  const auto& cat = x.site();
  std::vector<std::vector<Element>> comps(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t a = 0; a < x.size(obj); ++a)
      for (std::size_t b = 0; b < y.size(obj); ++b)
        comps[c].push_back(static_cast<Element>(which == 0 ? a : b));
  }
  return PresheafMorphism(std::move(xy), which == 0 ? x : y, std::move(comps), Presheaf::Trusted{});
}

Coproduct coproduct(const Presheaf& x, const Presheaf& y) {
  if (!same_site(x.site_ptr(), y.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "coproduct of presheaves on different sites");
  const auto& cat = x.site();
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  std::vector<std::vector<Element>> left(cat.object_count()), right(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t a = 0; a < x.size(obj); ++a) {
      left[c].push_back(static_cast<Element>(carrier[c].size()));
      carrier[c].push_back("inl:" + x.name(obj, static_cast<Element>(a)));
    }
    for (std::size_t b = 0; b < y.size(obj); ++b) {
      right[c].push_back(static_cast<Element>(carrier[c].size()));
      carrier[c].push_back("inr:" + y.name(obj, static_cast<Element>(b)));
    }
  }
  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mor = cat.morphism(static_cast<MorphismId>(f));
    for (std::size_t a = 0; a < x.size(mor.target); ++a)
      action[f].push_back(x.act(static_cast<Element>(a), static_cast<MorphismId>(f)));
    const auto offset = static_cast<Element>(x.size(mor.source));
    for (std::size_t b = 0; b < y.size(mor.target); ++b)
      action[f].push_back(offset + y.act(static_cast<Element>(b), static_cast<MorphismId>(f)));
  }
  Presheaf sum(x.site_ptr(), std::move(carrier), std::move(action), Presheaf::Trusted{});
  PresheafMorphism inl(x, sum, std::move(left), Presheaf::Trusted{});
  PresheafMorphism inr(y, sum, std::move(right), Presheaf::Trusted{});
  return {std::move(sum), std::move(inl), std::move(inr)};
}

Subobject subpresheaf(const Presheaf& x, const std::vector<std::vector<char>>& keep) {
  const auto& cat = x.site();
  if (keep.size() != cat.object_count())
    throw Error(ErrorCode::MalformedInput, "selection does not cover every object");
  std::vector<std::vector<Element>> new_index(cat.object_count());
  std::vector<std::vector<Element>> incl(cat.object_count());
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    if (keep[c].size() != x.size(obj))
      throw Error(ErrorCode::MalformedInput, "selection has the wrong size");
    new_index[c].assign(x.size(obj), -1);
    for (std::size_t e = 0; e < x.size(obj); ++e)
      if (keep[c][e]) {
        new_index[c][e] = static_cast<Element>(incl[c].size());
        incl[c].push_back(static_cast<Element>(e));
        carrier[c].push_back(x.name(obj, static_cast<Element>(e)));
      }
  }
  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mor = cat.morphism(static_cast<MorphismId>(f));
    for (Element e : incl[mor.target]) {
      const auto image = x.act(e, static_cast<MorphismId>(f));
      if (new_index[mor.source][image] < 0)
        throw Error(ErrorCode::NotSubpresheaf, "'" + x.name(mor.target, e) + "' . " + mor.name + " = '" +
                                                   x.name(mor.source, image) + "' is not selected");
      action[f].push_back(new_index[mor.source][image]);
    }
  }
  Presheaf sub(x.site_ptr(), std::move(carrier), std::move(action), Presheaf::Trusted{});
  PresheafMorphism inclusion(sub, x, std::move(incl), Presheaf::Trusted{});
  return {std::move(sub), std::move(inclusion)};
}

Subobject generated_subpresheaf(const Presheaf& xs, ObjectId c, Element x) {
  const auto& cat = xs.site();
  if (!xs.contains(c, x)) throw Error(ErrorCode::ElementNotInCarrier, "generator not in carrier");
  std::vector<std::vector<char>> keep(cat.object_count());
  for (std::size_t d = 0; d < cat.object_count(); ++d) {
    keep[d].assign(xs.size(static_cast<ObjectId>(d)), 0);
    for (MorphismId u : cat.hom(static_cast<ObjectId>(d), c)) keep[d][xs.act(x, u)] = 1;
  }
  return subpresheaf(xs, keep);
}

Subobject equalizer(const PresheafMorphism& f, const PresheafMorphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw Error(ErrorCode::NotParallel, "equalizer of non-parallel morphisms");
  const auto& x = f.source();
  std::vector<std::vector<char>> keep(x.site().object_count());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    keep[c].assign(x.size(obj), 0);
    for (std::size_t e = 0; e < x.size(obj); ++e)
      keep[c][e] = f(obj, static_cast<Element>(e)) == g(obj, static_cast<Element>(e));
  }
  return subpresheaf(x, keep);
}

std::vector<PresheafMorphism> enumerate_morphisms(const Presheaf& x, const Presheaf& y, std::size_t limit,
                                                  bool monos_only) {
  if (!same_site(x.site_ptr(), y.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "morphisms between presheaves on different sites");
  const auto& cat = x.site();
  const auto objects = cat.object_count();

  std::vector<std::vector<Element>> assign(objects);
  std::vector<std::vector<int>> used(objects);  // how many sources map to each target element
  for (std::size_t c = 0; c < objects; ++c) {
    assign[c].assign(x.size(static_cast<ObjectId>(c)), -1);
    used[c].assign(y.size(static_cast<ObjectId>(c)), 0);
  }

  // Into-morphisms per object, so forced images can be propagated downwards.
  std::vector<std::vector<MorphismId>> into(objects);
  for (std::size_t f = 0; f < cat.morphism_count(); ++f)
    into[cat.target(static_cast<MorphismId>(f))].push_back(static_cast<MorphismId>(f));

  std::vector<std::pair<ObjectId, Element>> order;
  for (std::size_t c = 0; c < objects; ++c)
    for (std::size_t e = 0; e < x.size(static_cast<ObjectId>(c)); ++e)
      order.emplace_back(static_cast<ObjectId>(c), static_cast<Element>(e));

  std::vector<PresheafMorphism> out;
  std::vector<std::pair<ObjectId, Element>> trail;

  // Assign (c, e) -> v and everything it forces; false on conflict.
  auto set = [&](ObjectId c0, Element e0, Element v0) {
    std::vector<std::tuple<ObjectId, Element, Element>> work{{c0, e0, v0}};
    while (!work.empty()) {
      auto [c, e, v] = work.back();
      work.pop_back();
      auto& slot = assign[c][e];
      if (slot >= 0) {
        if (slot != v) return false;
        continue;
      }
      if (monos_only && used[c][v] > 0) return false;
      slot = v;
      ++used[c][v];
      trail.emplace_back(c, e);
      for (MorphismId f : into[c]) work.emplace_back(cat.source(f), x.act(e, f), y.act(v, f));
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      auto [c, e] = trail.back();
      trail.pop_back();
      --used[c][assign[c][e]];
      assign[c][e] = -1;
    }
  };

  std::function<void(std::size_t)> search = [&](std::size_t pos) {
    if (out.size() >= limit) return;
    while (pos < order.size() && assign[order[pos].first][order[pos].second] >= 0) ++pos;
    if (pos == order.size()) {
      out.emplace_back(x, y, assign, Presheaf::Trusted{});
      return;
    }
    const auto [c, e] = order[pos];
    for (std::size_t v = 0; v < y.size(c) && out.size() < limit; ++v) {
      const auto mark = trail.size();
      if (set(c, e, static_cast<Element>(v))) search(pos + 1);
      undo(mark);
    }
  };
  search(0);
  return out;
}

}  // namespace topos
