#include "topos/words/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "topos/error.hpp"

namespace topos::words {

int TransitionSystem::letter(char symbol) const {
  const auto i = alphabet.find(symbol);
  if (i == std::string::npos) throw Error(ErrorCode::SymbolOutsideAlphabet, "'" + std::string(1, symbol) + "'");
  return static_cast<int>(i);
}

State TransitionSystem::run(State s, std::string_view word) const {
  if (s < 0 || s >= states) throw Error(ErrorCode::UnknownState, "state " + std::to_string(s));
  for (char c : word) s = step(s, letter(c));
  return s;
}

void TransitionSystem::validate() const {
  check_alphabet(alphabet);
  if (states < 0) throw Error(ErrorCode::MalformedInput, "negative state count");
  if (delta.size() != static_cast<std::size_t>(states) * alphabet.size())
    throw Error(ErrorCode::MalformedInput, "transition function is not total");
  for (State t : delta)
    if (t < 0 || t >= states) throw Error(ErrorCode::UnknownState, "transition target " + std::to_string(t));
}

Dfa::Dfa(TransitionSystem system, State initial, std::vector<char> accepting) {
  system.validate();
  if (initial < 0 || initial >= system.states)
    throw Error(ErrorCode::UnknownState, "initial state " + std::to_string(initial));
  if (accepting.size() != static_cast<std::size_t>(system.states))
    throw Error(ErrorCode::MalformedInput, "accepting mask has the wrong size");

  const int k = system.letters();
  std::vector<State> order(system.states, -1);
  std::vector<State> visit{initial};
  order[initial] = 0;
  for (std::size_t i = 0; i < visit.size(); ++i)
    for (int a = 0; a < k; ++a) {
      const State t = system.step(visit[i], a);
      if (order[t] < 0) {
        order[t] = static_cast<State>(visit.size());
        visit.push_back(t);
      }
    }

  system_.alphabet = system.alphabet;
  system_.states = static_cast<int>(visit.size());
  system_.delta.resize(visit.size() * k);
  accepting_.resize(visit.size());
  for (std::size_t i = 0; i < visit.size(); ++i) {
    accepting_[i] = accepting[visit[i]] ? 1 : 0;
    for (int a = 0; a < k; ++a) system_.delta[i * k + a] = order[system.step(visit[i], a)];
  }
}

Dfa minimize(const Dfa& d) {
  const int n = d.states();
  const int k = d.system().letters();

  // Inverse transitions per letter.
  std::vector<std::vector<std::vector<State>>> inverse(k, std::vector<std::vector<State>>(n));
  for (State s = 0; s < n; ++s)
    for (int a = 0; a < k; ++a) inverse[a][d.step(s, a)].push_back(s);

  std::vector<int> block(n);
  std::vector<std::vector<State>> blocks;
  {
    std::vector<State> acc, rej;
    for (State s = 0; s < n; ++s) (d.accepting(s) ? acc : rej).push_back(s);
    for (auto* part : {&acc, &rej})
      if (!part->empty()) {
        for (State s : *part) block[s] = static_cast<int>(blocks.size());
        blocks.push_back(*part);
      }
  }

  std::deque<std::pair<int, int>> work;
  std::vector<std::vector<char>> queued(blocks.size() + n, std::vector<char>(k, 0));
  auto enqueue = [&](int b, int a) {
    if (static_cast<std::size_t>(b) >= queued.size()) queued.resize(b + 1, std::vector<char>(k, 0));
    if (!queued[b][a]) {
      queued[b][a] = 1;
      work.emplace_back(b, a);
    }
  };
  if (blocks.size() == 2) {
    const int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (int a = 0; a < k; ++a) enqueue(smaller, a);
  }

  std::vector<char> marked(n, 0);
  while (!work.empty()) {
    const auto [splitter, a] = work.front();
    work.pop_front();
    queued[splitter][a] = 0;

    std::vector<State> pre;
    for (State t : blocks[splitter])
      for (State s : inverse[a][t])
        if (!marked[s]) {
          marked[s] = 1;
          pre.push_back(s);
        }

    std::map<int, std::vector<State>> touched;
    for (State s : pre) touched[block[s]].push_back(s);
    for (auto& [b, inside] : touched) {
      if (inside.size() == blocks[b].size()) continue;
      std::vector<State> outside;
      for (State s : blocks[b])
        if (!marked[s]) outside.push_back(s);
      const int fresh = static_cast<int>(blocks.size());
      auto& small = inside.size() <= outside.size() ? inside : outside;
      auto& large = inside.size() <= outside.size() ? outside : inside;
      blocks[b] = large;
      blocks.push_back(small);
      for (State s : small) block[s] = fresh;
      for (int c = 0; c < k; ++c) enqueue(fresh, c);
    }
    for (State s : pre) marked[s] = 0;
  }

  TransitionSystem quotient{d.alphabet(), static_cast<int>(blocks.size()), {}};
  quotient.delta.resize(blocks.size() * k);
  std::vector<char> accepting(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const State rep = blocks[b].front();
    accepting[b] = d.accepting(rep) ? 1 : 0;
    for (int a = 0; a < k; ++a) quotient.delta[b * k + a] = block[d.step(rep, a)];
  }
  return Dfa(std::move(quotient), block[d.initial()], std::move(accepting));
}

namespace {

struct Nfa {
  struct Node {
    std::vector<int> epsilon;
    std::vector<std::pair<int, int>> moves;  // (letter, target)
  };
  std::vector<Node> nodes;

  int add() {
    nodes.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }
};

struct Fragment {
  int start;
  int accept;
};

Fragment thompson(Nfa& nfa, const Regex& r, std::string_view alphabet) {
  switch (r.kind) {
    case Regex::Kind::EmptySet: {
      return {nfa.add(), nfa.add()};
    }
    case Regex::Kind::EmptyWord: {
      Fragment f{nfa.add(), nfa.add()};
      nfa.nodes[f.start].epsilon.push_back(f.accept);
      return f;
    }
    case Regex::Kind::Symbol: {
      const auto letter = alphabet.find(r.symbol);
      if (letter == std::string_view::npos)
        throw Error(ErrorCode::SymbolOutsideAlphabet, "'" + std::string(1, r.symbol) + "'");
      Fragment f{nfa.add(), nfa.add()};
      nfa.nodes[f.start].moves.emplace_back(static_cast<int>(letter), f.accept);
      return f;
    }
    case Regex::Kind::Concat: {
      const auto a = thompson(nfa, r.children[0], alphabet);
      const auto b = thompson(nfa, r.children[1], alphabet);
      nfa.nodes[a.accept].epsilon.push_back(b.start);
      return {a.start, b.accept};
    }
    case Regex::Kind::Alt: {
      const auto a = thompson(nfa, r.children[0], alphabet);
      const auto b = thompson(nfa, r.children[1], alphabet);
      Fragment f{nfa.add(), nfa.add()};
      nfa.nodes[f.start].epsilon = {a.start, b.start};
      nfa.nodes[a.accept].epsilon.push_back(f.accept);
      nfa.nodes[b.accept].epsilon.push_back(f.accept);
      return f;
    }
    case Regex::Kind::Star: {
      const auto a = thompson(nfa, r.children[0], alphabet);
      Fragment f{nfa.add(), nfa.add()};
      nfa.nodes[f.start].epsilon = {a.start, f.accept};
      nfa.nodes[a.accept].epsilon = {a.start, f.accept};
      return f;
    }
  }
  throw Error(ErrorCode::MalformedInput, "unknown regex node");
}

std::vector<int> closure(const Nfa& nfa, std::vector<int> set) {
  std::vector<char> in(nfa.nodes.size(), 0);
  for (int s : set) in[s] = 1;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (int t : nfa.nodes[set[i]].epsilon)
      if (!in[t]) {
        in[t] = 1;
        set.push_back(t);
      }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

Dfa regex_to_min_dfa(const Regex& r, std::string_view alphabet) {
  check_alphabet(alphabet);
  Nfa nfa;
  const auto frag = thompson(nfa, r, alphabet);
  const int k = static_cast<int>(alphabet.size());

  std::map<std::vector<int>, State> index;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = index.emplace(set, static_cast<State>(subsets.size()));
    if (fresh) subsets.push_back(std::move(set));
    return it->second;
  };
  intern(closure(nfa, {frag.start}));

  TransitionSystem system{std::string(alphabet), 0, {}};
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (int a = 0; a < k; ++a) {
      std::vector<int> next;
      for (int s : subsets[i])
        for (const auto& [letter, t] : nfa.nodes[s].moves)
          if (letter == a) next.push_back(t);
      system.delta.push_back(intern(closure(nfa, std::move(next))));
    }
  system.states = static_cast<int>(subsets.size());

  std::vector<char> accepting(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    accepting[i] = std::binary_search(subsets[i].begin(), subsets[i].end(), frag.accept) ? 1 : 0;
  return minimize(Dfa(std::move(system), 0, std::move(accepting)));
}

Dfa compile_regex(std::string_view source, std::string_view alphabet) {
  return regex_to_min_dfa(parse_regex(source, alphabet), alphabet);
}

}  // namespace topos::words
