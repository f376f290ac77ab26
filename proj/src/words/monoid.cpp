#include "topos/words/monoid.hpp"

#include <map>

#include "topos/error.hpp"

namespace topos::words {

TransitionMonoid TransitionMonoid::of(const TransitionSystem& system, std::size_t cap) {
  TransitionMonoid m;
  m.alphabet_ = system.alphabet;
  const int k = system.letters();
  std::map<std::vector<State>, int> index;

  std::vector<State> identity(system.states);
  for (State s = 0; s < system.states; ++s) identity[s] = s;
  index.emplace(identity, 0);
  m.functions_.push_back(std::move(identity));
  m.witnesses_.push_back("");

  for (std::size_t i = 0; i < m.functions_.size(); ++i) {
    std::vector<int> row;
    for (int a = 0; a < k; ++a) {
      std::vector<State> next(system.states);
      for (State s = 0; s < system.states; ++s) next[s] = system.step(m.functions_[i][s], a);
      auto [it, fresh] = index.emplace(next, static_cast<int>(m.functions_.size()));
      if (fresh) {
        if (m.functions_.size() >= cap) throw BudgetExceeded("transition monoid", m.functions_.size() + 1, cap);
        m.functions_.push_back(std::move(next));
        m.witnesses_.push_back(m.witnesses_[i] + system.alphabet[a]);
      }
      row.push_back(it->second);
    }
    m.steps_.push_back(std::move(row));
  }

  const auto n = m.functions_.size();
  m.table_.assign(n, std::vector<int>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<State> ab(system.states);
      for (State s = 0; s < system.states; ++s) ab[s] = m.functions_[b][m.functions_[a][s]];
      m.table_[a][b] = index.at(ab);
    }
  return m;
}

RightCongruence TransitionMonoid::right_cayley() const {
  TransitionSystem cayley{alphabet_, static_cast<int>(order()), {}};
  for (const auto& row : steps_) cayley.delta.insert(cayley.delta.end(), row.begin(), row.end());
  return RightCongruence::canonical(cayley, 0);
}

Syntactic syntactic_congruence(const Dfa& d) {
  auto monoid = TransitionMonoid::of(minimize(d).system());
  auto congruence = monoid.right_cayley();
  return {std::move(monoid), std::move(congruence)};
}

OrbitMeet orbit_meet_check(const RightCongruence& rc_nerode) {
  const auto members = orbit(rc_nerode);
  OrbitMeet out{RightCongruence::top(rc_nerode.alphabet()), TransitionMonoid::of(rc_nerode.system()).right_cayley(),
                members.size(), false};
  for (const auto& rc : members) out.meet = meet(out.meet, rc);
  out.equal_to_syntactic = out.meet == out.syntactic;
  return out;
}

}  // namespace topos::words
