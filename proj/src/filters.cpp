#include "topos/filters.hpp"

#include <algorithm>

namespace topos {

namespace {

constexpr std::size_t kMorphismsPerPair = 16;
constexpr std::size_t kMaxProductSize = 4096;

std::string element_at(const LocalStateClassifier& lsc, ObjectId c, Element q) {
  return lsc.site().object_name(c) + ": " + lsc.xi().name(c, q);
}

void require_same_site(const LocalStateClassifier& lsc, const Presheaf& x) {
  if (!same_site(lsc.site_ptr(), x.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "presheaf is not on the classifier's site");
}

// keep[c][x] = xi_X(x) in F(c)
std::vector<std::vector<char>> pullback_mask(const LocalStateClassifier& lsc, const XiSubset& selection,
                                             const Presheaf& x) {
  const auto xi = xi_component(lsc, x);
  std::vector<std::vector<char>> keep(lsc.site().object_count());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t e = 0; e < x.size(obj); ++e)
      keep[c].push_back(selection.contains(obj, xi(obj, static_cast<Element>(e))));
  }
  return keep;
}

}  // namespace

XiSubset::XiSubset(const LocalStateClassifier& lsc, const std::vector<std::vector<Element>>& indices)
    : site_(lsc.site_ptr()) {
  const auto& cat = lsc.site();
  if (indices.size() != cat.object_count())
    throw Error(ErrorCode::MalformedInput, "selection does not list every object");
  mask_.resize(cat.object_count());
  for (std::size_t c = 0; c < mask_.size(); ++c) {
    mask_[c].assign(lsc.size(static_cast<ObjectId>(c)), 0);
    for (Element q : indices[c]) {
      if (q < 0 || static_cast<std::size_t>(q) >= mask_[c].size())
        throw Error(ErrorCode::MalformedInput, "selection index " + std::to_string(q) + " outside Xi(" +
                                                   cat.object_name(static_cast<ObjectId>(c)) + ")");
      mask_[c][q] = 1;
    }
  }
}

std::vector<Element> XiSubset::at(ObjectId c) const {
  std::vector<Element> out;
  for (std::size_t q = 0; q < mask_.at(c).size(); ++q)
    if (mask_[c][q]) out.push_back(static_cast<Element>(q));
  return out;
}

std::vector<std::vector<Element>> XiSubset::indices() const {
  std::vector<std::vector<Element>> out;
  for (std::size_t c = 0; c < mask_.size(); ++c) out.push_back(at(static_cast<ObjectId>(c)));
  return out;
}

std::optional<FilterViolation> check_filter(const LocalStateClassifier& lsc, const XiSubset& selection) {
  if (!same_site(lsc.site_ptr(), selection.site_ptr()))
    throw Error(ErrorCode::SiteMismatch, "selection is not on the classifier's site");
  const auto& cat = lsc.site();
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mf = cat.morphism(static_cast<MorphismId>(f));
    for (Element q : selection.at(mf.target)) {
      const auto image = lsc.act(q, static_cast<MorphismId>(f));
      if (!selection.contains(mf.source, image))
        return FilterViolation{ErrorCode::NotSubpresheaf, element_at(lsc, mf.target, q) + " . " + mf.name +
                                                              " = " + element_at(lsc, mf.source, image)};
    }
  }
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (Element q : selection.at(obj))
      for (std::size_t r = 0; r < lsc.size(obj); ++r)
        if (lsc.leq(obj, q, static_cast<Element>(r)) && !selection.contains(obj, static_cast<Element>(r)))
          return FilterViolation{ErrorCode::NotUpwardClosed, element_at(lsc, obj, q) + " <= " +
                                                                 element_at(lsc, obj, static_cast<Element>(r))};
  }
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    if (!selection.contains(obj, lsc.top(obj)))
      return FilterViolation{ErrorCode::MissingTop, element_at(lsc, obj, lsc.top(obj))};
  }
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    const auto members = selection.at(obj);
    for (Element a : members)
      for (Element b : members) {
        const auto m = lsc.meet(obj, a, b);
        if (!selection.contains(obj, m))
          return FilterViolation{ErrorCode::NotMeetClosed, element_at(lsc, obj, a) + " ^ " + lsc.xi().name(obj, b) +
                                                               " = " + lsc.xi().name(obj, m)};
      }
  }
  return std::nullopt;
}

InternalFilter validate_filter(const LocalStateClassifier& lsc, const XiSubset& selection) {
  if (auto violation = check_filter(lsc, selection)) throw Error(violation->clause, violation->witness);
  return InternalFilter(selection);
}

InternalFilter filter_generated_by(const LocalStateClassifier& lsc, const XiSubset& seeds) {
  const auto& cat = lsc.site();
  auto mask = seeds.mask();
  for (std::size_t c = 0; c < cat.object_count(); ++c) mask[c][lsc.top(static_cast<ObjectId>(c))] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    auto mark = [&](ObjectId c, Element q) {
      if (!mask[c][q]) {
        mask[c][q] = 1;
        changed = true;
      }
    };
    for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
      const auto& mf = cat.morphism(static_cast<MorphismId>(f));
      for (std::size_t q = 0; q < mask[mf.target].size(); ++q)
        if (mask[mf.target][q]) mark(mf.source, lsc.act(static_cast<Element>(q), static_cast<MorphismId>(f)));
    }
    for (std::size_t c = 0; c < cat.object_count(); ++c) {
      const auto obj = static_cast<ObjectId>(c);
      const auto n = lsc.size(obj);
      for (std::size_t a = 0; a < n; ++a) {
        if (!mask[c][a]) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (lsc.leq(obj, static_cast<Element>(a), static_cast<Element>(b))) mark(obj, static_cast<Element>(b));
          if (mask[c][b]) mark(obj, lsc.meet(obj, static_cast<Element>(a), static_cast<Element>(b)));
        }
      }
    }
  }
  std::vector<std::vector<Element>> indices(mask.size());
  for (std::size_t c = 0; c < mask.size(); ++c)
    for (std::size_t q = 0; q < mask[c].size(); ++q)
      if (mask[c][q]) indices[c].push_back(static_cast<Element>(q));
  return validate_filter(lsc, XiSubset(lsc, indices));
}

InternalFilter top_filter(const LocalStateClassifier& lsc) {
  return filter_generated_by(lsc, XiSubset(lsc, std::vector<std::vector<Element>>(lsc.site().object_count())));
}

InternalFilter whole_filter(const LocalStateClassifier& lsc) {
  std::vector<std::vector<Element>> all(lsc.site().object_count());
  for (std::size_t c = 0; c < all.size(); ++c)
    for (std::size_t q = 0; q < lsc.size(static_cast<ObjectId>(c)); ++q) all[c].push_back(static_cast<Element>(q));
  return validate_filter(lsc, XiSubset(lsc, all));
}

Subobject as_presheaf(const LocalStateClassifier& lsc, const XiSubset& selection) {
  return subpresheaf(lsc.xi(), selection.mask());
}

Membership in_subcategory(const LocalStateClassifier& lsc, const XiSubset& selection, const Presheaf& x) {
  require_same_site(lsc, x);
  const auto xi = xi_component(lsc, x);
  Membership out;
  out.member = true;
  const auto& cat = lsc.site();
  for (std::size_t c = 0; c < cat.object_count() && out.member; ++c) {
    const auto obj = static_cast<ObjectId>(c);
    for (std::size_t e = 0; e < x.size(obj) && out.member; ++e)
      if (!selection.contains(obj, xi(obj, static_cast<Element>(e)))) {
        out.member = false;
        out.witness = "element '" + x.name(obj, static_cast<Element>(e)) + "' at " +
                      element_at(lsc, obj, xi(obj, static_cast<Element>(e)));
      }
  }
  if (!out.member) return out;
  if (auto v = check_filter(lsc, selection); v && v->clause == ErrorCode::NotSubpresheaf) return out;

  auto f = as_presheaf(lsc, selection);
  std::vector<std::vector<Element>> lift(cat.object_count());
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    const auto inclusion = f.inclusion.component(obj);
    for (std::size_t e = 0; e < x.size(obj); ++e) {
      const auto q = xi(obj, static_cast<Element>(e));
      lift[c].push_back(static_cast<Element>(std::find(inclusion.begin(), inclusion.end(), q) - inclusion.begin()));
    }
  }
  out.lift.emplace(x, f.object, std::move(lift), Presheaf::Trusted{});
  return out;
}

ComonadResult comonad_apply(const LocalStateClassifier& lsc, const XiSubset& selection, const Presheaf& x) {
  require_same_site(lsc, x);
  auto sub = subpresheaf(x, pullback_mask(lsc, selection, x));
  return {std::move(sub.object), std::move(sub.inclusion)};
}

ComonadResult comonad_apply(const LocalStateClassifier& lsc, const InternalFilter& filter, const Presheaf& x) {
  return comonad_apply(lsc, filter.subset(), x);
}

Certificate verify_main_theorem(const LocalStateClassifier& lsc, const XiSubset& selection,
                                std::span<const Presheaf> samples) {
  Certificate cert;
  const auto& cat = lsc.site();
  for (const auto& s : samples) require_same_site(lsc, s);

  if (auto violation = check_filter(lsc, selection); violation && violation->clause == ErrorCode::NotSubpresheaf) {
    cert.add("a: F in E_F", false, "F is not a subpresheaf of Xi: " + violation->witness);
    return cert;
  }

  // (a)
  const auto f_obj = as_presheaf(lsc, selection);
  {
    const auto m = in_subcategory(lsc, selection, f_obj.object);
    std::string witness;
    if (!m.member) {
      const auto xi_f = xi_component(lsc, f_obj.object);
      for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
        const auto obj = static_cast<ObjectId>(c);
        for (std::size_t e = 0; e < f_obj.object.size(obj) && witness.empty(); ++e) {
          const auto q = xi_f(obj, static_cast<Element>(e));
          if (!selection.contains(obj, q))
            witness = "element " + element_at(lsc, obj, f_obj.inclusion(obj, static_cast<Element>(e))) +
                      " of F is classified by " + lsc.xi().name(obj, q) + ", which is not in F";
        }
      }
    }
    cert.add("a: F in E_F", m.member, witness);
  }

  // Members of E_F to test the cocone and the comonad on.
  std::vector<Presheaf> members;
  for (const auto& s : samples) {
    if (in_subcategory(lsc, selection, s).member) members.push_back(s);
    members.push_back(comonad_apply(lsc, selection, s).gx);
  }
  if (in_subcategory(lsc, selection, f_obj.object).member) members.push_back(f_obj.object);

  // (b)
  {
    std::string witness;
    std::size_t checked = 0;
    auto check_mono = [&](const PresheafMorphism& m, const std::string& what) {
      if (!witness.empty()) return;
      if (!m.is_mono()) {
        witness = what + " is not monic";
        return;
      }
      const auto xs = xi_component(lsc, m.source());
      const auto xt = xi_component(lsc, m.target());
      ++checked;
      for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
        const auto obj = static_cast<ObjectId>(c);
        for (std::size_t e = 0; e < m.source().size(obj); ++e) {
          const auto lhs = xt(obj, m(obj, static_cast<Element>(e)));
          const auto rhs = xs(obj, static_cast<Element>(e));
          if (lhs != rhs || !selection.contains(obj, rhs)) {
            witness = what + ": element '" + m.source().name(obj, static_cast<Element>(e)) + "' classified by " +
                      lsc.xi().name(obj, rhs) + " but its image by " + lsc.xi().name(obj, lhs);
            break;
          }
        }
      }
    };
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& z = members[i];
      for (std::size_t c = 0; c < cat.object_count(); ++c)
        for (std::size_t e = 0; e < z.size(static_cast<ObjectId>(c)); ++e)
          check_mono(generated_subpresheaf(z, static_cast<ObjectId>(c), static_cast<Element>(e)).inclusion,
                     "orbit inclusion in member " + std::to_string(i));
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (z.total_size() + members[j].total_size() <= kMaxProductSize) {
          const auto sum = coproduct(z, members[j]);
          check_mono(sum.left, "coproduct injection " + std::to_string(i) + "+" + std::to_string(j));
        }
        for (const auto& m : enumerate_morphisms(z, members[j], kMorphismsPerPair, true))
          check_mono(m, "mono member " + std::to_string(i) + " -> member " + std::to_string(j));
      }
    }
    cert.add("b: cocone over monos in E_F (" + std::to_string(checked) + " monos)", witness.empty(), witness);
  }

  // (c)
  {
    std::string witness;
    for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
      const auto obj = static_cast<ObjectId>(c);
      for (Element q : selection.at(obj)) {
        const auto quotient = quotient_presheaf(lsc.site_ptr(), lsc.congruence(obj, q));
        const auto member = in_subcategory(lsc, selection, quotient);
        const auto xi_q = xi_component(lsc, quotient);
        if (!member.member) {
          witness = "y(c)/q for q = " + element_at(lsc, obj, q) + " is not in E_F: " + member.witness;
          break;
        }
        if (xi_q(obj, quotient_generator(cat, lsc.congruence(obj, q))) != q) {
          witness = "xi of [id] in y(c)/q differs from q = " + element_at(lsc, obj, q);
          break;
        }
      }
    }
    cert.add("c: joint surjectivity via y(c)/q", witness.empty(), witness);
  }

  // (d)
  {
    std::string witness;
    auto fail = [&](std::string w) {
      if (witness.empty()) witness = std::move(w);
    };
    const auto one = terminal(lsc.site_ptr());
    if (comonad_apply(lsc, selection, one).gx.total_size() != one.total_size()) fail("G does not preserve 1");

    std::vector<ComonadResult> applied;
    for (const auto& s : samples) applied.push_back(comonad_apply(lsc, selection, s));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& g = applied[i];
      if (!g.counit.is_mono()) fail("counit of sample " + std::to_string(i) + " is not monic");
      if (comonad_apply(lsc, selection, g.gx).gx.total_size() != g.gx.total_size())
        fail("G(G X) != G X for sample " + std::to_string(i));
    }

    auto g_mask = [&](std::size_t i) { return pullback_mask(lsc, selection, samples[i]); };
    for (std::size_t i = 0; i < samples.size() && witness.empty(); ++i)
      for (std::size_t j = i; j < samples.size() && witness.empty(); ++j) {
        const auto& x = samples[i];
        const auto& y = samples[j];
        std::size_t size = 0;
        for (std::size_t c = 0; c < cat.object_count(); ++c)
          size += x.size(static_cast<ObjectId>(c)) * y.size(static_cast<ObjectId>(c));
        const auto gx = g_mask(i), gy = g_mask(j);
        if (size <= kMaxProductSize) {
          const auto xy = product(x, y);
          const auto gxy = pullback_mask(lsc, selection, xy);
          for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c) {
            const auto obj = static_cast<ObjectId>(c);
            for (std::size_t a = 0; a < x.size(obj); ++a)
              for (std::size_t b = 0; b < y.size(obj); ++b)
                if (static_cast<bool>(gxy[c][pair_index(x, y, obj, static_cast<Element>(a), static_cast<Element>(b))]) !=
                    (gx[c][a] && gy[c][b]))
                  fail("G(X x Y) != GX x GY for samples " + std::to_string(i) + "," + std::to_string(j));
          }
        }
        // Functoriality of G and preservation of equalizers on sampled parallel pairs.
        const auto maps = enumerate_morphisms(x, y, kMorphismsPerPair);
        for (std::size_t p = 0; p < maps.size() && witness.empty(); ++p) {
          for (std::size_t c = 0; c < cat.object_count(); ++c)
            for (std::size_t a = 0; a < x.size(static_cast<ObjectId>(c)); ++a)
              if (gx[c][a] && !gy[c][maps[p](static_cast<ObjectId>(c), static_cast<Element>(a))])
                fail("G f does not land in G Y for a sampled f");
          for (std::size_t q = p + 1; q < maps.size() && witness.empty(); ++q) {
            const auto eq = equalizer(maps[p], maps[q]);
            const auto geq = pullback_mask(lsc, selection, eq.object);
            for (std::size_t c = 0; c < cat.object_count(); ++c) {
              const auto obj = static_cast<ObjectId>(c);
              std::vector<char> via_g(x.size(obj), 0), via_eq(x.size(obj), 0);
              for (std::size_t e = 0; e < eq.object.size(obj); ++e)
                if (geq[c][e]) via_g[eq.inclusion(obj, static_cast<Element>(e))] = 1;
              for (std::size_t a = 0; a < x.size(obj); ++a)
                via_eq[a] = gx[c][a] && maps[p](obj, static_cast<Element>(a)) == maps[q](obj, static_cast<Element>(a));
              if (via_g != via_eq) fail("G(Eq(f,g)) != Eq(Gf,Gg) for samples " + std::to_string(i) + "," + std::to_string(j));
            }
          }
        }
      }
    cert.add("d: lex idempotent comonad with monic counit", witness.empty(), witness);
  }
  return cert;
}

}  // namespace topos
