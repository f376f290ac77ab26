#include "topos/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "topos/error.hpp"

namespace topos {

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names, std::vector<std::vector<int>> table) {
  const auto n = names.size();
  if (n == 0) throw Error(ErrorCode::InvalidGroup, "a group has at least one element");
  if (std::set<std::string>(names.begin(), names.end()).size() != n)
    throw Error(ErrorCode::InvalidGroup, "duplicate element names");
  if (table.size() != n) throw Error(ErrorCode::InvalidGroup, "table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorCode::InvalidGroup, "table row has the wrong length");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorCode::InvalidGroup, "table entry out of range");
  }

  FiniteGroup g;
  g.names_ = std::move(names);
  g.table_ = std::move(table);

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
          throw Error(ErrorCode::InvalidGroup, "associativity fails at (" + g.names_[a] + "," + g.names_[b] +
                                                   "," + g.names_[c] + ")");

  int unit = -1;
  for (std::size_t e = 0; e < n && unit < 0; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = g.table_[e][x] == static_cast<int>(x) && g.table_[x][e] == static_cast<int>(x);
    if (ok) unit = static_cast<int>(e);
  }
  if (unit < 0) throw Error(ErrorCode::InvalidGroup, "no identity element");
  g.identity_ = unit;

  g.inverse_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (g.table_[a][b] == unit && g.table_[b][a] == unit) g.inverse_[a] = static_cast<int>(b);
    if (g.inverse_[a] < 0) throw Error(ErrorCode::InvalidGroup, "'" + g.names_[a] + "' has no inverse");
  }
  return g;
}

int FiniteGroup::element(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorCode::InvalidGroup, "no element named '" + std::string(name) + "'");
  return static_cast<int>(it - names_.begin());
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

FiniteGroup cyclic_group(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "0" : std::to_string(a));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table(std::move(names), std::move(table));
}

FiniteGroup dihedral_group(int n) {
  // index i + n*j for s^i t^j
  auto name = [](int i, int j) {
    std::string out;
    if (i == 1) out = "s";
    if (i > 1) out = "s" + std::to_string(i);
    if (j) out += "t";
    return out.empty() ? std::string("1") : out;
  };
  std::vector<std::string> names;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < n; ++i) names.push_back(name(i, j));
  const int order = 2 * n;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int i = a % n, j = a / n, k = b % n, l = b / n;
      // s^i t^j s^k t^l = s^(i + (-1)^j k) t^(j + l)
      const int rot = ((i + (j ? -k : k)) % n + n) % n;
      table[a][b] = rot + n * ((j + l) % 2);
    }
  return FiniteGroup::from_table(std::move(names), std::move(table));
}

FiniteGroup quaternion_group() {
  // Unit quaternions as (sign, basis) with basis 1, i, j, k.
  static constexpr int kBasis[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  const std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto index = [](int sign, int basis) { return 2 * basis + (sign < 0 ? 1 : 0); };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int sa = a % 2 ? -1 : 1, ba = a / 2, sb = b % 2 ? -1 : 1, bb = b / 2;
      const auto& prod = kBasis[ba][bb];
      table[a][b] = index(sa * sb * prod[0], prod[1]);
    }
  return FiniteGroup::from_table(names, std::move(table));
}

FiniteGroup symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::string> names;
  for (const auto& perm : perms) {
    std::string s;
    for (int v : perm) s += std::to_string(v + 1);
    names.push_back(s);
  }
  const auto order = perms.size();
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<int> composite(n);
      for (int x = 0; x < n; ++x) composite[x] = perms[b][perms[a][x]];
      table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), composite) - perms.begin());
    }
  return FiniteGroup::from_table(std::move(names), std::move(table));
}

FiniteGroup klein_four_group() {
  return FiniteGroup::from_table({"e", "a", "b", "c"},
                                 {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

bool Subgroup::contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h{std::move(members)};
  for (int a : h.members)
    if (a < 0 || static_cast<std::size_t>(a) >= g.order()) throw Error(ErrorCode::NotASubgroup, "element out of range");
  if (!h.contains(g.identity())) throw Error(ErrorCode::NotASubgroup, "identity missing");
  for (int a : h.members) {
    if (!h.contains(g.inverse(a))) throw Error(ErrorCode::NotASubgroup, "not closed under inverse at " + g.name(a));
    for (int b : h.members)
      if (!h.contains(g.mul(a, b)))
        throw Error(ErrorCode::NotASubgroup, "not closed under product at (" + g.name(a) + "," + g.name(b) + ")");
  }
  return h;
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<int>& generators) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> members{g.identity()};
  in[g.identity()] = 1;
  // In a finite group, closure under right multiplication by generators suffices.
  for (std::size_t k = 0; k < members.size(); ++k)
    for (int s : generators) {
      const int next = g.mul(members[k], s);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<std::string>& generators) {
  std::vector<int> ids;
  for (const auto& name : generators) ids.push_back(g.element(name));
  return generated_subgroup(g, ids);
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int by) {
  std::vector<int> members;
  for (int a : h.members) members.push_back(g.conjugate(a, by));
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> found;
  for (std::size_t a = 0; a < g.order(); ++a) found.insert(generated_subgroup(g, std::vector<int>{static_cast<int>(a)}));
  std::vector<Subgroup> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    const std::vector<Subgroup> all(found.begin(), found.end());
    for (const auto& h : frontier)
      for (const auto& k : all) {
        std::vector<int> gens = h.members;
        gens.insert(gens.end(), k.members.begin(), k.members.end());
        auto join = generated_subgroup(g, gens);
        if (found.insert(join).second) next.push_back(std::move(join));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.members < b.members;
  });
  return out;
}

Subgroup normalizer_direct(const FiniteGroup& g, const Subgroup& h) {
  make_subgroup(g, h.members);
  std::vector<int> members;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (conjugate(g, h, static_cast<int>(x)) == h) members.push_back(static_cast<int>(x));
  return Subgroup{std::move(members)};
}

bool is_dedekind(const FiniteGroup& g) {
  for (const auto& h : enumerate_subgroups(g))
    for (std::size_t x = 0; x < g.order(); ++x)
      if (!(conjugate(g, h, static_cast<int>(x)) == h)) return false;
  return true;
}

std::string subgroup_label(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> nontrivial;
  for (int a : h.members)
    if (a != g.identity()) nontrivial.push_back(a);
  auto render = [&](const std::vector<int>& gens) {
    std::string out = "<";
    for (std::size_t k = 0; k < gens.size(); ++k) out += (k ? "," : "") + g.name(gens[k]);
    return out + ">";
  };
  if (nontrivial.empty()) return "<>";
  // Smallest generating sets first, lexicographic in element order within a size.
  for (std::size_t size = 1; size <= std::min<std::size_t>(3, nontrivial.size()); ++size) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<int> gens;
      for (auto p : pick) gens.push_back(nontrivial[p]);
      if (generated_subgroup(g, gens) == h) return render(gens);
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == nontrivial.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return render(nontrivial);
}

FiniteCategory group_category(const FiniteGroup& g, std::string object_name) {
  return monoid_category(g.names(), g.table(), std::move(object_name));
}

}  // namespace topos
