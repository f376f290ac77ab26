#include "topos/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "topos/error.hpp"

namespace topos {

namespace {

std::vector<int> first_occurrence(const std::vector<int>& raw) {
  std::map<int, int> renumber;
  std::vector<int> out;
  out.reserve(raw.size());
  for (int v : raw) out.push_back(renumber.emplace(v, static_cast<int>(renumber.size())).first->second);
  return out;
}

// Elements of y(c) numbered globally, object by object, with precomposition
// successors for the congruence closure.
struct RepresentableIndex {
  std::vector<std::size_t> offset;              // per object
  std::vector<ObjectId> fiber;                  // per element
  std::vector<std::vector<int>> successors;     // per element: u o g for every g into its source

  RepresentableIndex(const FiniteCategory& cat, ObjectId c) {
    const auto objects = cat.object_count();
    offset.assign(objects + 1, 0);
    for (std::size_t d = 0; d < objects; ++d)
      offset[d + 1] = offset[d] + cat.hom(static_cast<ObjectId>(d), c).size();
    fiber.resize(offset[objects]);
    successors.resize(offset[objects]);
    for (std::size_t d = 0; d < objects; ++d) {
      const auto dom = static_cast<ObjectId>(d);
      for (std::size_t i = 0; i < cat.hom(dom, c).size(); ++i) fiber[offset[d] + i] = dom;
    }
    for (std::size_t g = 0; g < cat.morphism_count(); ++g) {
      const auto& mg = cat.morphism(static_cast<MorphismId>(g));
      const auto hom = cat.hom(mg.target, c);
      for (std::size_t i = 0; i < hom.size(); ++i) {
        const auto ug = cat.compose(hom[i], static_cast<MorphismId>(g));
        successors[offset[mg.target] + i].push_back(
            static_cast<int>(offset[mg.source] + cat.hom_position(ug)));
      }
    }
  }

  std::size_t size() const { return fiber.size(); }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Merges a and b, then closes under right-compatibility.
void close_merge(UnionFind& uf, const RepresentableIndex& idx, int a, int b) {
  std::vector<std::pair<int, int>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    const auto& sx = idx.successors[x];
    const auto& sy = idx.successors[y];
    for (std::size_t k = 0; k < sx.size(); ++k) work.emplace_back(sx[k], sy[k]);
  }
}

std::vector<int> global_labels(UnionFind& uf, const RepresentableIndex& idx) {
  std::vector<int> roots(idx.size());
  for (std::size_t e = 0; e < idx.size(); ++e) roots[e] = uf.find(static_cast<int>(e));
  return roots;
}

RepCongruence from_global(ObjectId base, const RepresentableIndex& idx, const std::vector<int>& roots) {
  std::vector<std::vector<int>> labels(idx.offset.size() - 1);
  for (std::size_t d = 0; d + 1 < idx.offset.size(); ++d)
    labels[d].assign(roots.begin() + static_cast<std::ptrdiff_t>(idx.offset[d]),
                     roots.begin() + static_cast<std::ptrdiff_t>(idx.offset[d + 1]));
  return canonical_congruence(base, std::move(labels));
}

void check_shape(const FiniteCategory& cat, ObjectId base, const std::vector<std::vector<int>>& labels) {
  if (!cat.has_object(base)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(base));
  if (labels.size() != cat.object_count())
    throw Error(ErrorCode::MalformedInput, "congruence does not cover every object");
  for (std::size_t d = 0; d < labels.size(); ++d)
    if (labels[d].size() != cat.hom(static_cast<ObjectId>(d), base).size())
      throw Error(ErrorCode::MalformedInput, "congruence fiber at '" + cat.object_name(static_cast<ObjectId>(d)) +
                                                 "' has the wrong size");
}

}  // namespace

RepCongruence canonical_congruence(ObjectId base, std::vector<std::vector<int>> labels) {
  RepCongruence q;
  q.base_ = base;
  q.labels_.reserve(labels.size());
  for (auto& fiber : labels) q.labels_.push_back(first_occurrence(fiber));
  return q;
}

RepCongruence RepCongruence::from_labels(const FiniteCategory& cat, ObjectId base,
                                         std::vector<std::vector<int>> labels) {
  check_shape(cat, base, labels);
  auto q = canonical_congruence(base, std::move(labels));
  // u ~ v implies u o g ~ v o g
  for (std::size_t g = 0; g < cat.morphism_count(); ++g) {
    const auto& mg = cat.morphism(static_cast<MorphismId>(g));
    const auto hom = cat.hom(mg.target, base);
    std::map<int, int> image_of_block;
    for (std::size_t i = 0; i < hom.size(); ++i) {
      const auto ug = cat.compose(hom[i], static_cast<MorphismId>(g));
      const int image = q.labels_[mg.source][cat.hom_position(ug)];
      auto [it, fresh] = image_of_block.emplace(q.labels_[mg.target][i], image);
      if (!fresh && it->second != image)
        throw Error(ErrorCode::MalformedInput,
                    "partition is not right-compatible under '" + mg.name + "'");
    }
  }
  return q;
}

RepCongruence RepCongruence::from_blocks(const FiniteCategory& cat, ObjectId base,
                                         const std::vector<std::vector<MorphismId>>& blocks) {
  if (!cat.has_object(base)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(base));
  std::vector<std::vector<int>> labels(cat.object_count());
  int next = 0;
  for (std::size_t d = 0; d < labels.size(); ++d) {
    labels[d].assign(cat.hom(static_cast<ObjectId>(d), base).size(), -1);
  }
  for (const auto& block : blocks) {
    const int label = next++;
    for (MorphismId u : block) {
      if (cat.target(u) != base)
        throw Error(ErrorCode::MalformedInput, "'" + cat.morphism(u).name + "' is not in y(" +
                                                   cat.object_name(base) + ")");
      auto& slot = labels[cat.source(u)][cat.hom_position(u)];
      if (slot >= 0) throw Error(ErrorCode::MalformedInput, "'" + cat.morphism(u).name + "' listed twice");
      slot = label;
    }
  }
  for (auto& fiber : labels)
    for (auto& l : fiber)
      if (l < 0) l = next++;
  // A block spanning two objects is meaningless: partitions live per fiber.
  for (const auto& block : blocks)
    for (MorphismId u : block)
      if (cat.source(u) != cat.source(block.front()))
        throw Error(ErrorCode::MalformedInput, "block mixes morphisms with different sources");
  return from_labels(cat, base, std::move(labels));
}

std::vector<std::vector<std::vector<MorphismId>>> RepCongruence::blocks(const FiniteCategory& cat) const {
  std::vector<std::vector<std::vector<MorphismId>>> out(labels_.size());
  for (std::size_t d = 0; d < labels_.size(); ++d) {
    const auto hom = cat.hom(static_cast<ObjectId>(d), base_);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      const auto l = static_cast<std::size_t>(labels_[d][i]);
      if (out[d].size() <= l) out[d].resize(l + 1);
      out[d][l].push_back(hom[i]);
    }
  }
  return out;
}

std::size_t RepCongruence::block_count(ObjectId c) const {
  const auto& fiber = labels_.at(c);
  return fiber.empty() ? 0 : static_cast<std::size_t>(*std::max_element(fiber.begin(), fiber.end())) + 1;
}

std::size_t RepCongruence::total_blocks() const {
  std::size_t total = 0;
  for (std::size_t d = 0; d < labels_.size(); ++d) total += block_count(static_cast<ObjectId>(d));
  return total;
}

bool RepCongruence::related(const FiniteCategory& cat, MorphismId u, MorphismId v) const {
  if (cat.target(u) != base_ || cat.target(v) != base_ || cat.source(u) != cat.source(v))
    throw Error(ErrorCode::ObjectMismatch, "morphisms are not in the same fiber of y(" +
                                               cat.object_name(base_) + ")");
  const auto& fiber = labels_[cat.source(u)];
  return fiber[cat.hom_position(u)] == fiber[cat.hom_position(v)];
}

bool RepCongruence::is_total() const {
  for (const auto& fiber : labels_)
    for (int l : fiber)
      if (l != 0) return false;
  return true;
}

bool RepCongruence::is_discrete() const {
  for (const auto& fiber : labels_)
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (fiber[i] != static_cast<int>(i)) return false;
  return true;
}

RepCongruence total_congruence(const FiniteCategory& cat, ObjectId c) {
  std::vector<std::vector<int>> labels(cat.object_count());
  for (std::size_t d = 0; d < labels.size(); ++d) labels[d].assign(cat.hom(static_cast<ObjectId>(d), c).size(), 0);
  return canonical_congruence(c, std::move(labels));
}

RepCongruence discrete_congruence(const FiniteCategory& cat, ObjectId c) {
  std::vector<std::vector<int>> labels(cat.object_count());
  for (std::size_t d = 0; d < labels.size(); ++d) {
    labels[d].resize(cat.hom(static_cast<ObjectId>(d), c).size());
    std::iota(labels[d].begin(), labels[d].end(), 0);
  }
  return canonical_congruence(c, std::move(labels));
}

RepCongruence element_kernel(const Presheaf& xs, ObjectId c, Element x) {
  const auto& cat = xs.site();
  if (!xs.contains(c, x)) throw Error(ErrorCode::ElementNotInCarrier, "element " + std::to_string(x));
  std::vector<std::vector<int>> labels(cat.object_count());
  for (std::size_t d = 0; d < labels.size(); ++d)
    for (MorphismId u : cat.hom(static_cast<ObjectId>(d), c)) labels[d].push_back(xs.act(x, u));
  return canonical_congruence(c, std::move(labels));
}

RepCongruence image_quotient(const PresheafMorphism& m) {
  const auto& site = m.source().site_ptr();
  for (std::size_t c = 0; c < site->object_count(); ++c) {
    if (!(m.source() == representable(site, static_cast<ObjectId>(c)))) continue;
    return canonical_congruence(static_cast<ObjectId>(c), m.components());
  }
  throw Error(ErrorCode::NonRepresentableSource, "source of the morphism is not a representable presheaf");
}

std::vector<RepCongruence> enumerate_quotient_objects(const FiniteCategory& cat, ObjectId c, std::size_t cap) {
  if (!cat.has_object(c)) throw Error(ErrorCode::UnknownObject, "object id " + std::to_string(c));
  const RepresentableIndex idx(cat, c);
  if (idx.size() > cap) throw BudgetExceeded("representable y(" + cat.object_name(c) + ")", idx.size(), cap);

  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  {
    UnionFind uf(idx.size());
    auto roots = global_labels(uf, idx);
    seen.insert(roots);
    queue.push_back(std::move(roots));
  }
  while (!queue.empty()) {
    const auto roots = std::move(queue.front());
    queue.pop_front();
    // Try merging every pair of distinct blocks in the same fiber.
    std::vector<int> reps;
    for (std::size_t e = 0; e < idx.size(); ++e)
      if (roots[e] == static_cast<int>(e)) reps.push_back(static_cast<int>(e));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        if (idx.fiber[reps[i]] != idx.fiber[reps[j]]) continue;
        UnionFind uf(idx.size());
        uf.parent = roots;
        close_merge(uf, idx, reps[i], reps[j]);
        auto next = global_labels(uf, idx);
        if (seen.insert(next).second) {
          if (seen.size() > cap) throw BudgetExceeded("quotient objects of y(" + cat.object_name(c) + ")", seen.size(), cap);
          queue.push_back(std::move(next));
        }
      }
  }

  std::vector<RepCongruence> out;
  out.reserve(seen.size());
  for (const auto& roots : seen) out.push_back(from_global(c, idx, roots));
  std::sort(out.begin(), out.end(), [](const RepCongruence& a, const RepCongruence& b) {
    const auto ba = a.total_blocks(), bb = b.total_blocks();
    return ba != bb ? ba < bb : a.labels() < b.labels();
  });
  return out;
}

RepCongruence meet(const RepCongruence& a, const RepCongruence& b) {
  if (a.base() != b.base() || a.labels().size() != b.labels().size())
    throw Error(ErrorCode::ObjectMismatch, "meet of congruences on different representables");
  std::vector<std::vector<int>> labels(a.labels().size());
  for (std::size_t d = 0; d < labels.size(); ++d) {
    const auto& la = a.labels()[d];
    const auto& lb = b.labels()[d];
    const auto width = static_cast<int>(la.size()) + 1;
    for (std::size_t i = 0; i < la.size(); ++i) labels[d].push_back(la[i] * width + lb[i]);
  }
  return canonical_congruence(a.base(), std::move(labels));
}

bool leq(const RepCongruence& a, const RepCongruence& b) {
  if (a.base() != b.base() || a.labels().size() != b.labels().size())
    throw Error(ErrorCode::ObjectMismatch, "comparing congruences on different representables");
  for (std::size_t d = 0; d < a.labels().size(); ++d) {
    std::map<int, int> image;
    const auto& la = a.labels()[d];
    const auto& lb = b.labels()[d];
    for (std::size_t i = 0; i < la.size(); ++i) {
      auto [it, fresh] = image.emplace(la[i], lb[i]);
      if (!fresh && it->second != lb[i]) return false;
    }
  }
  return true;
}

RepCongruence act(const FiniteCategory& cat, const RepCongruence& q, MorphismId f) {
  const auto& mf = cat.morphism(f);
  if (mf.target != q.base())
    throw Error(ErrorCode::ObjectMismatch, "'" + mf.name + "' does not end at the base of the congruence");
  std::vector<std::vector<int>> labels(cat.object_count());
  for (std::size_t d = 0; d < labels.size(); ++d)
    for (MorphismId u : cat.hom(static_cast<ObjectId>(d), mf.source)) {
      const auto fu = cat.compose(f, u);
      labels[d].push_back(q.labels()[d][cat.hom_position(fu)]);
    }
  return canonical_congruence(mf.source, std::move(labels));
}

Presheaf quotient_presheaf(const Site& site, const RepCongruence& q) {
  const auto& cat = *site;
  const auto blocks = q.blocks(cat);
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  for (std::size_t d = 0; d < carrier.size(); ++d)
    for (const auto& block : blocks[d]) {
      std::string name = "[";
      for (std::size_t k = 0; k < block.size(); ++k) name += (k ? "," : "") + cat.morphism(block[k]).name;
      carrier[d].push_back(name + "]");
    }
  std::vector<std::vector<Element>> action(cat.morphism_count());
  for (std::size_t g = 0; g < cat.morphism_count(); ++g) {
    const auto& mg = cat.morphism(static_cast<MorphismId>(g));
    for (const auto& block : blocks[mg.target]) {
      const auto ug = cat.compose(block.front(), static_cast<MorphismId>(g));
      action[g].push_back(q.labels()[mg.source][cat.hom_position(ug)]);
    }
  }
  return Presheaf(site, std::move(carrier), std::move(action), Presheaf::Trusted{});
}

Element quotient_generator(const FiniteCategory& cat, const RepCongruence& q) {
  const auto id = cat.identity(q.base());
  return q.labels()[q.base()][cat.hom_position(id)];
}

std::string describe(const FiniteCategory& cat, const RepCongruence& q) {
  const auto blocks = q.blocks(cat);
  std::string out;
  for (std::size_t d = 0; d < blocks.size(); ++d) {
    if (blocks[d].empty()) continue;
    if (!out.empty()) out += ' ';
    if (cat.object_count() > 1) out += cat.object_name(static_cast<ObjectId>(d)) + ":";
    for (const auto& block : blocks[d]) {
      out += '{';
      for (std::size_t k = 0; k < block.size(); ++k) out += (k ? "," : "") + cat.morphism(block[k]).name;
      out += '}';
    }
  }
  return out;
}

}  // namespace topos
