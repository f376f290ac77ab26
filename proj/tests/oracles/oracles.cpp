#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>

namespace oracle {

using topos::words::Dfa;
using topos::words::State;
using topos::words::TransitionSystem;

std::vector<std::string> words_up_to(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

Membership std_regex_membership(std::string_view source) {
  std::string pattern;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const char c = source[i];
    if (c == '#') {
      pattern += source[i + 1] == 'e' ? "(?:)" : "(?:(?!)x)";
      ++i;
    } else if (c == '(') {
      pattern += "(?:";
    } else if (c == ')' || c == '|' || c == '*') {
      pattern += c;
    } else {
      if (!std::isalnum(static_cast<unsigned char>(c))) pattern += '\\';
      pattern += c;
    }
  }
  auto re = std::make_shared<std::regex>(pattern, std::regex::ECMAScript);
  return [re](std::string_view w) { return std::regex_match(w.begin(), w.end(), *re); };
}

Membership dfa_membership(const Dfa& d) {
  return [d](std::string_view w) {
    State s = 0;
    for (char c : w) s = d.system().step(s, static_cast<int>(d.alphabet().find(c)));
    return d.accepting(s);
  };
}

std::size_t residual_count(const Membership& member, std::string_view alphabet, std::size_t prefix_len,
                           std::size_t suffix_len) {
  const auto prefixes = words_up_to(alphabet, prefix_len);
  const auto suffixes = words_up_to(alphabet, suffix_len);
  std::set<std::vector<bool>> rows;
  for (const auto& u : prefixes) {
    std::vector<bool> row;
    for (const auto& v : suffixes) row.push_back(member(u + v));
    rows.insert(std::move(row));
  }
  return rows.size();
}

std::size_t syntactic_class_count(const Membership& member, std::string_view alphabet, std::size_t context_len) {
  const auto contexts = words_up_to(alphabet, context_len);
  std::set<std::vector<bool>> rows;
  auto row_of = [&](const std::string& u) {
    std::vector<bool> row;
    for (const auto& w : contexts)
      for (const auto& w2 : contexts) row.push_back(member(w + u + w2));
    return row;
  };
  std::vector<std::string> layer{""};
  rows.insert(row_of(""));
  while (!layer.empty()) {
    std::vector<std::string> next;
    for (const auto& u : layer)
      for (char c : alphabet)
        if (rows.insert(row_of(u + c)).second) next.push_back(u + c);
    layer = std::move(next);
  }
  return rows.size();
}

std::size_t word_function_count(const TransitionSystem& system) {
  std::set<std::vector<State>> seen;
  std::vector<State> identity(system.states);
  std::iota(identity.begin(), identity.end(), 0);
  seen.insert(identity);
  std::vector<std::vector<State>> layer{identity};
  while (true) {
    std::vector<std::vector<State>> next;
    const auto before = seen.size();
    for (const auto& f : layer)
      for (int a = 0; a < system.letters(); ++a) {
        std::vector<State> g(system.states);
        for (State s = 0; s < system.states; ++s) g[s] = system.step(f[s], a);
        next.push_back(g);
        seen.insert(std::move(g));
      }
    if (seen.size() == before) return seen.size();
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
}

namespace {

std::vector<State> reachable(const TransitionSystem& s, State start) {
  std::vector<char> seen(s.states, 0);
  std::vector<State> stack{start}, out;
  seen[start] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    out.push_back(q);
    for (int a = 0; a < s.letters(); ++a) {
      const State t = s.step(q, a);
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool pointed_isomorphic(const TransitionSystem& a, State start_a, const TransitionSystem& b, State start_b) {
  if (a.alphabet != b.alphabet) return false;
  auto order = reachable(a, start_a);
  const auto rb = reachable(b, start_b);
  if (order.size() != rb.size()) return false;
  std::stable_partition(order.begin(), order.end(), [&](State s) { return s == start_a; });

  std::vector<char> allowed(b.states, 0);
  for (State q : rb) allowed[q] = 1;
  std::vector<State> map(a.states, -1);
  std::vector<char> used(b.states, 0);

  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == order.size()) return true;
    const State p = order[i];
    for (State q = 0; q < b.states; ++q) {
      if (!allowed[q] || used[q]) continue;
      if (i == 0 && q != start_b) continue;
      map[p] = q;
      bool good = true;
      for (std::size_t j = 0; j <= i && good; ++j) {
        const State x = order[j];
        for (int c = 0; c < a.letters() && good; ++c) {
          const State y = a.step(x, c);
          if (map[y] >= 0 && map[y] != b.step(map[x], c)) good = false;
        }
      }
      if (good) {
        used[q] = 1;
        if (go(i + 1)) return true;
        used[q] = 0;
      }
      map[p] = -1;
    }
    return false;
  };
  return go(0);
}

TransitionSystem random_system(std::mt19937& rng, int states, std::string_view alphabet) {
  TransitionSystem s{std::string(alphabet), states, {}};
  std::uniform_int_distribution<int> pick(0, states - 1);
  for (int i = 0; i < states * static_cast<int>(alphabet.size()); ++i) s.delta.push_back(pick(rng));
  return s;
}

Dfa random_dfa(std::mt19937& rng, int states, std::string_view alphabet) {
  auto s = random_system(rng, states, alphabet);
  std::bernoulli_distribution coin(0.5);
  std::vector<char> accepting(states);
  for (auto& a : accepting) a = coin(rng) ? 1 : 0;
  return Dfa(std::move(s), 0, std::move(accepting));
}

Dfa random_minimal_dfa(std::mt19937& rng, int max_states, std::string_view alphabet) {
  std::uniform_int_distribution<int> size(1, max_states);
  return topos::words::minimize(random_dfa(rng, size(rng), alphabet));
}

TransitionSystem shuffled(std::mt19937& rng, const TransitionSystem& s, State start, State* new_start, int padding) {
  const int n = s.states + padding;
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  TransitionSystem out{s.alphabet, n, std::vector<State>(static_cast<std::size_t>(n) * s.alphabet.size())};
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int k = s.letters();
  for (State q = 0; q < n; ++q)
    for (int a = 0; a < k; ++a) {
      // Padding states may point anywhere; nothing points back to them.
      const State t = q < s.states ? perm[s.step(q, a)] : pick(rng);
      out.delta[static_cast<std::size_t>(perm[q]) * k + a] = t;
    }
  *new_start = perm[start];
  return out;
}

std::vector<topos::Subgroup> subgroups_by_subsets(const topos::FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<topos::Subgroup> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & (1u << g.identity()))) continue;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      if (mask & (1u << a))
        for (int b = 0; b < n && closed; ++b)
          if ((mask & (1u << b)) && !(mask & (1u << g.mul(a, b)))) closed = false;
    if (!closed) continue;
    topos::Subgroup h;
    for (int a = 0; a < n; ++a)
      if (mask & (1u << a)) h.members.push_back(a);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.order() != y.order() ? x.order() < y.order() : x.members < y.members;
  });
  return out;
}

namespace {

void set_partitions(int n, std::vector<int>& labels, int i, int used, std::vector<std::vector<int>>& out) {
  if (i == n) {
    out.push_back(labels);
    return;
  }
  for (int l = 0; l <= used; ++l) {
    labels[i] = l;
    set_partitions(n, labels, i + 1, std::max(used, l + 1), out);
  }
}

}  // namespace

std::vector<std::vector<std::vector<int>>> quotients_by_partitions(const topos::FiniteCategory& cat, topos::ObjectId c) {
  const auto objects = static_cast<int>(cat.object_count());
  std::vector<std::vector<std::vector<int>>> fiber_partitions(objects);
  for (int d = 0; d < objects; ++d) {
    const int size = static_cast<int>(cat.hom(d, c).size());
    std::vector<int> labels(size);
    set_partitions(size, labels, 0, 0, fiber_partitions[d]);
  }
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::size_t> choice(objects, 0);
  while (true) {
    std::vector<std::vector<int>> labels(objects);
    for (int d = 0; d < objects; ++d) labels[d] = fiber_partitions[d][choice[d]];
    bool compatible = true;
    for (topos::MorphismId g = 0; g < static_cast<int>(cat.morphism_count()) && compatible; ++g) {
      const int from = cat.source(g), to = cat.target(g);
      const auto homs = cat.hom(to, c);
      for (std::size_t i = 0; i < homs.size() && compatible; ++i)
        for (std::size_t j = 0; j < homs.size() && compatible; ++j)
          if (labels[to][i] == labels[to][j]) {
            const auto ui = cat.hom_position(cat.compose(homs[i], g));
            const auto uj = cat.hom_position(cat.compose(homs[j], g));
            if (labels[from][ui] != labels[from][uj]) compatible = false;
          }
    }
    if (compatible) out.push_back(std::move(labels));
    int d = 0;
    while (d < objects && ++choice[d] == fiber_partitions[d].size()) choice[d++] = 0;
    if (d == objects) break;
  }
  return out;
}

}  // namespace oracle
