#include "topos/category.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "topos/error.hpp"

namespace topos {

namespace {

// Stop collecting after this many violations; a broken table can have O(n^3).
constexpr std::size_t kMaxReportedViolations = 64;

}  // namespace

FiniteCategory FiniteCategory::validate(const CategoryDescription& raw) {
  std::vector<CategoryViolation> violations;
  auto fail = [&](ErrorCode law, std::vector<std::string> names, std::string detail) {
    if (violations.size() < kMaxReportedViolations)
      violations.push_back({law, std::move(names), std::move(detail)});
  };

  FiniteCategory cat;
  std::unordered_map<std::string, ObjectId> object_index;
  for (const auto& name : raw.objects) {
    if (!object_index.emplace(name, static_cast<ObjectId>(cat.object_names_.size())).second)
      throw CategoryError({{ErrorCode::MalformedCategory, {}, "duplicate object '" + name + "'"}});
    cat.object_names_.push_back(name);
  }

  std::unordered_map<std::string, MorphismId> morphism_index;
  for (const auto& arrow : raw.morphisms) {
    auto src = object_index.find(arrow.src);
    auto dst = object_index.find(arrow.dst);
    if (src == object_index.end() || dst == object_index.end())
      throw CategoryError({{ErrorCode::MalformedCategory, {arrow.name},
                            "endpoint is not a declared object"}});
    if (!morphism_index.emplace(arrow.name, static_cast<MorphismId>(cat.morphisms_.size())).second)
      throw CategoryError({{ErrorCode::MalformedCategory, {arrow.name}, "duplicate morphism"}});
    cat.morphisms_.push_back({arrow.name, src->second, dst->second});
  }

  const auto n = cat.morphisms_.size();
  const auto objects = cat.object_names_.size();

  cat.identities_.assign(objects, -1);
  for (const auto& [obj, id] : raw.identities) {
    auto o = object_index.find(obj);
    auto m = morphism_index.find(id);
    if (o == object_index.end() || m == morphism_index.end())
      throw CategoryError({{ErrorCode::MalformedCategory, {id}, "identity of unknown object or morphism"}});
    const auto& mor = cat.morphisms_[m->second];
    if (mor.source != o->second || mor.target != o->second)
      fail(ErrorCode::IdentityViolation, {id}, "identity of '" + obj + "' is not an endomorphism of it");
    cat.identities_[o->second] = m->second;
  }
  for (std::size_t c = 0; c < objects; ++c)
    if (cat.identities_[c] < 0)
      fail(ErrorCode::IdentityViolation, {}, "object '" + cat.object_names_[c] + "' has no identity");

  cat.composition_.assign(n * n, -1);
  std::vector<char> defined(n * n, 0);
  for (const auto& entry : raw.composition) {
    auto g = morphism_index.find(entry.g);
    auto f = morphism_index.find(entry.f);
    auto r = morphism_index.find(entry.result);
    if (g == morphism_index.end() || f == morphism_index.end() || r == morphism_index.end())
      throw CategoryError({{ErrorCode::MalformedCategory, {entry.g, entry.f, entry.result},
                            "composition mentions an unknown morphism"}});
    const auto& mg = cat.morphisms_[g->second];
    const auto& mf = cat.morphisms_[f->second];
    const auto& mr = cat.morphisms_[r->second];
    if (mf.target != mg.source) {
      fail(ErrorCode::IllTypedComposite, {entry.g, entry.f, entry.result}, "pair is not composable");
      continue;
    }
    if (mr.source != mf.source || mr.target != mg.target) {
      fail(ErrorCode::IllTypedComposite, {entry.g, entry.f, entry.result},
           "composite has the wrong source or target");
      continue;
    }
    const auto slot = static_cast<std::size_t>(g->second) * n + f->second;
    if (defined[slot] && cat.composition_[slot] != r->second) {
      fail(ErrorCode::IllTypedComposite, {entry.g, entry.f, entry.result}, "conflicting composite");
      continue;
    }
    defined[slot] = 1;
    cat.composition_[slot] = r->second;
  }

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (cat.morphisms_[f].target == cat.morphisms_[g].source && !defined[g * n + f])
        fail(ErrorCode::IllTypedComposite, {cat.morphisms_[g].name, cat.morphisms_[f].name},
             "composable pair has no composite");

  if (!violations.empty()) throw CategoryError(std::move(violations));

  for (std::size_t f = 0; f < n; ++f) {
    const auto& mf = cat.morphisms_[f];
    const auto left = cat.identities_[mf.target];
    const auto right = cat.identities_[mf.source];
    if (cat.composition_[left * n + f] != static_cast<MorphismId>(f))
      fail(ErrorCode::IdentityViolation, {cat.morphisms_[left].name, mf.name}, "id o f != f");
    if (cat.composition_[f * n + right] != static_cast<MorphismId>(f))
      fail(ErrorCode::IdentityViolation, {mf.name, cat.morphisms_[right].name}, "f o id != f");
  }

  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g) {
      const auto hg = cat.composition_[h * n + g];
      if (hg < 0) continue;
      for (std::size_t f = 0; f < n; ++f) {
        const auto gf = cat.composition_[g * n + f];
        if (gf < 0) continue;
        const auto lhs = cat.composition_[h * n + gf];
        const auto rhs = cat.composition_[static_cast<std::size_t>(hg) * n + f];
        if (lhs != rhs)
          fail(ErrorCode::AssociativityViolation,
               {cat.morphisms_[h].name, cat.morphisms_[g].name, cat.morphisms_[f].name},
               "h o (g o f) = " + cat.morphisms_[lhs].name + " but (h o g) o f = " +
                   cat.morphisms_[rhs].name);
      }
    }

  if (!violations.empty()) throw CategoryError(std::move(violations));

  cat.homs_.assign(objects * objects, {});
  cat.hom_position_.assign(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    auto& bucket = cat.homs_[static_cast<std::size_t>(cat.morphisms_[m].source) * objects +
                             cat.morphisms_[m].target];
    cat.hom_position_[m] = bucket.size();
    bucket.push_back(static_cast<MorphismId>(m));
  }
  return cat;
}

const std::string& FiniteCategory::object_name(ObjectId c) const {
  if (!has_object(c)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(c));
  return object_names_[c];
}

ObjectId FiniteCategory::object(std::string_view name) const {
  auto it = std::find(object_names_.begin(), object_names_.end(), name);
  if (it == object_names_.end()) throw Error(ErrorCode::UnknownObject, std::string(name));
  return static_cast<ObjectId>(it - object_names_.begin());
}

const Morphism& FiniteCategory::morphism(MorphismId m) const {
  if (m < 0 || static_cast<std::size_t>(m) >= morphisms_.size())
    throw Error(ErrorCode::UnknownMorphism, "morphism id " + std::to_string(m));
  return morphisms_[m];
}

MorphismId FiniteCategory::morphism(std::string_view name) const {
  auto it = std::find_if(morphisms_.begin(), morphisms_.end(),
                         [&](const Morphism& m) { return m.name == name; });
  if (it == morphisms_.end()) throw Error(ErrorCode::UnknownMorphism, std::string(name));
  return static_cast<MorphismId>(it - morphisms_.begin());
}

MorphismId FiniteCategory::identity(ObjectId c) const {
  if (!has_object(c)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(c));
  return identities_[c];
}

bool FiniteCategory::composable(MorphismId g, MorphismId f) const {
  return morphism(f).target == morphism(g).source;
}

MorphismId FiniteCategory::compose(MorphismId g, MorphismId f) const {
  if (!composable(g, f))
    throw Error(ErrorCode::IllTypedComposite, morphisms_[g].name + " o " + morphisms_[f].name);
  return composition_[static_cast<std::size_t>(g) * morphisms_.size() + f];
}

std::span<const MorphismId> FiniteCategory::hom(ObjectId from, ObjectId to) const {
  if (!has_object(from) || !has_object(to))
    throw Error(ErrorCode::UnknownObject, "hom between unknown objects");
  return homs_[static_cast<std::size_t>(from) * object_count() + to];
}

CategoryDescription FiniteCategory::describe() const {
  CategoryDescription d;
  d.objects = object_names_;
  for (const auto& m : morphisms_)
    d.morphisms.push_back({m.name, object_names_[m.source], object_names_[m.target]});
  for (std::size_t c = 0; c < object_count(); ++c)
    d.identities[object_names_[c]] = morphisms_[identities_[c]].name;
  const auto n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (composition_[g * n + f] >= 0)
        d.composition.push_back(
            {morphisms_[g].name, morphisms_[f].name, morphisms_[composition_[g * n + f]].name});
  return d;
}

FiniteCategory monoid_category(const std::vector<std::string>& element_names,
                               const std::vector<std::vector<int>>& table,
                               std::string object_name) {
  const auto n = element_names.size();
  if (table.size() != n)
    throw Error(ErrorCode::MalformedCategory, "monoid table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n)
      throw Error(ErrorCode::MalformedCategory, "monoid table has a row of the wrong length");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorCode::MalformedCategory, "monoid table entry out of range");
  }

  std::optional<std::size_t> unit;
  for (std::size_t e = 0; e < n && !unit; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = table[e][x] == static_cast<int>(x) && table[x][e] == static_cast<int>(x);
    if (ok) unit = e;
  }
  if (!unit)
    throw CategoryError({{ErrorCode::IdentityViolation, {}, "monoid table has no two-sided unit"}});

  CategoryDescription d;
  d.objects = {object_name};
  for (const auto& name : element_names) d.morphisms.push_back({name, object_name, object_name});
  d.identities[object_name] = element_names[*unit];
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      d.composition.push_back({element_names[g], element_names[f], element_names[table[g][f]]});
  return FiniteCategory::validate(d);
}

FiniteCategory poset_category(const std::vector<std::string>& objects,
                              const std::vector<std::pair<std::string, std::string>>& relations) {
  const auto n = objects.size();
  auto index = [&](const std::string& name) {
    auto it = std::find(objects.begin(), objects.end(), name);
    if (it == objects.end()) throw Error(ErrorCode::UnknownObject, name);
    return static_cast<std::size_t>(it - objects.begin());
  };
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = 1;
  for (const auto& [a, b] : relations) leq[index(a)][index(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;

  auto arrow = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + objects[i] : objects[i] + "<=" + objects[j];
  };
  CategoryDescription d;
  d.objects = objects;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i][j]) d.morphisms.push_back({arrow(i, j), objects[i], objects[j]});
  for (std::size_t i = 0; i < n; ++i) d.identities[objects[i]] = arrow(i, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (leq[i][j] && leq[j][k]) d.composition.push_back({arrow(j, k), arrow(i, j), arrow(i, k)});
  return FiniteCategory::validate(d);
}

FiniteCategory parallel_arrows_category() {
  CategoryDescription d;
  d.objects = {"V", "E"};
  d.morphisms = {{"id_V", "V", "V"}, {"id_E", "E", "E"}, {"s", "V", "E"}, {"t", "V", "E"}};
  d.identities = {{"V", "id_V"}, {"E", "id_E"}};
  d.composition = {{"id_V", "id_V", "id_V"}, {"id_E", "id_E", "id_E"}, {"id_E", "s", "s"},
                   {"id_E", "t", "t"},       {"s", "id_V", "s"},       {"t", "id_V", "t"}};
  return FiniteCategory::validate(d);
}

}  // namespace topos
