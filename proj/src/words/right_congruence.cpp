#include "topos/words/right_congruence.hpp"

#include <map>
#include <utility>

#include "topos/error.hpp"

namespace topos::words {

RightCongruence RightCongruence::canonical(const TransitionSystem& system, State start) {
  if (start < 0 || start >= system.states) throw Error(ErrorCode::UnknownState, "state " + std::to_string(start));
  const int k = system.letters();
  std::vector<State> order(system.states, -1);
  std::vector<State> visit{start};
  order[start] = 0;
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (int a = 0; a < k; ++a) {
      const State t = system.step(visit[i], a);
      if (order[t] < 0) {
        order[t] = static_cast<State>(visit.size());
        visit.push_back(t);
      }
    }
  RightCongruence rc;
  rc.system_.alphabet = system.alphabet;
  rc.system_.states = static_cast<int>(visit.size());
  rc.system_.delta.reserve(visit.size() * k);
  for (State s : visit)
    for (int a = 0; a < k; ++a) rc.system_.delta.push_back(order[system.step(s, a)]);
  return rc;
}

RightCongruence RightCongruence::top(std::string_view alphabet) {
  check_alphabet(alphabet);
  TransitionSystem one{std::string(alphabet), 1, std::vector<State>(alphabet.size(), 0)};
  return canonical(one, 0);
}

std::vector<std::string> RightCongruence::representatives() const {
  std::vector<std::string> words(index());
  std::vector<char> seen(index(), 0);
  seen[0] = 1;
  std::vector<State> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int a = 0; a < system_.letters(); ++a) {
      const State t = step(queue[i], a);
      if (!seen[t]) {
        seen[t] = 1;
        words[t] = words[queue[i]] + alphabet()[a];
        queue.push_back(t);
      }
    }
  return words;
}

RightCongruence nerode_congruence(const Dfa& d) { return RightCongruence::canonical(minimize(d).system(), 0); }

RightCongruence state_congruence(const TransitionSystem& system, State q) { return RightCongruence::canonical(system, q); }
RightCongruence state_congruence(const Dfa& d, State q) { return state_congruence(d.system(), q); }
RightCongruence state_congruence(const RightCongruence& rc, State q) { return state_congruence(rc.system(), q); }

RightCongruence congruence_action(const RightCongruence& rc, std::string_view word) {
  return state_congruence(rc, rc.run(word));
}

std::vector<RightCongruence> orbit(const RightCongruence& rc) {
  std::vector<RightCongruence> out;
  std::map<RightCongruence, int> seen;
  for (State q = 0; q < rc.index(); ++q) {
    auto sc = state_congruence(rc, q);
    if (seen.emplace(sc, static_cast<int>(out.size())).second) out.push_back(std::move(sc));
  }
  return out;
}

namespace {

void require_same_alphabet(const RightCongruence& a, const RightCongruence& b) {
  if (a.alphabet() != b.alphabet())
    throw Error(ErrorCode::AlphabetMismatch, "'" + a.alphabet() + "' vs '" + b.alphabet() + "'");
}

// Reachable part of the pointed product, in BFS order; pairs[i] = (p, q).
std::vector<std::pair<State, State>> reachable_pairs(const RightCongruence& a, const RightCongruence& b,
                                                     std::vector<State>* delta) {
  const int k = static_cast<int>(a.alphabet().size());
  std::map<std::pair<State, State>, State> index{{{0, 0}, 0}};
  std::vector<std::pair<State, State>> pairs{{0, 0}};
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (int c = 0; c < k; ++c) {
      const std::pair<State, State> next{a.step(pairs[i].first, c), b.step(pairs[i].second, c)};
      auto [it, fresh] = index.emplace(next, static_cast<State>(pairs.size()));
      if (fresh) pairs.push_back(next);
      if (delta) delta->push_back(it->second);
    }
  return pairs;
}

}  // namespace

RightCongruence meet(const RightCongruence& a, const RightCongruence& b) {
  require_same_alphabet(a, b);
  TransitionSystem product{a.alphabet(), 0, {}};
  product.states = static_cast<int>(reachable_pairs(a, b, &product.delta).size());
  return RightCongruence::canonical(product, 0);
}

bool leq(const RightCongruence& a, const RightCongruence& b) {
  require_same_alphabet(a, b);
  const auto pairs = reachable_pairs(a, b, nullptr);
  return static_cast<int>(pairs.size()) == a.index();
}

std::optional<std::pair<std::string, std::string>> leq_counterexample(const RightCongruence& a,
                                                                      const RightCongruence& b) {
  require_same_alphabet(a, b);
  const int k = static_cast<int>(a.alphabet().size());
  std::map<std::pair<State, State>, std::string> word_of{{{0, 0}, ""}};
  std::vector<std::pair<State, State>> pairs{{0, 0}};
  std::vector<std::string> first_word(a.index());
  std::vector<State> partner(a.index(), -1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    const auto& w = word_of[pairs[i]];
    if (partner[p] < 0) {
      partner[p] = q;
      first_word[p] = w;
    } else if (partner[p] != q) {
      return std::make_pair(first_word[p], w);
    }
    for (int c = 0; c < k; ++c) {
      const std::pair<State, State> next{a.step(p, c), b.step(q, c)};
      if (word_of.emplace(next, w + a.alphabet()[c]).second) pairs.push_back(next);
    }
  }
  return std::nullopt;
}

RightCongruence words_normalization_operator(const RightCongruence& rc) {
  std::map<RightCongruence, State> classes;
  std::vector<State> class_of(rc.index());
  std::vector<State> representative;
  for (State q = 0; q < rc.index(); ++q) {
    auto [it, fresh] = classes.emplace(state_congruence(rc, q), static_cast<State>(representative.size()));
    if (fresh) representative.push_back(q);
    class_of[q] = it->second;
  }
  const int k = static_cast<int>(rc.alphabet().size());
  TransitionSystem quotient{rc.alphabet(), static_cast<int>(representative.size()), {}};
  for (State r : representative)
    for (int c = 0; c < k; ++c) quotient.delta.push_back(class_of[rc.step(r, c)]);
  return RightCongruence::canonical(quotient, class_of[rc.initial()]);
}

}  // namespace topos::words
