#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "topos/words/automaton.hpp"
#include "topos/words/right_congruence.hpp"

namespace topos::words {

/// Functions states -> states realized by words, each with its
/// shortlex-least witness. Element 0 is the identity (witness "").
class TransitionMonoid {
 public:
  /// Throws BudgetExceeded if more than `cap` functions appear.
  static TransitionMonoid of(const TransitionSystem& system, std::size_t cap = 100000);

  std::size_t order() const { return functions_.size(); }
  const std::vector<State>& function(int m) const { return functions_.at(m); }
  const std::string& witness(int m) const { return witnesses_.at(m); }
  /// Element realized by witness(a) followed by witness(b).
  int mul(int a, int b) const { return table_.at(a).at(b); }
  /// Element m . letter.
  int step(int m, int letter) const { return steps_.at(m).at(letter); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& alphabet() const { return alphabet_; }
  /// Right Cayley graph over the letters, pointed at the identity.
  RightCongruence right_cayley() const;

 private:
  std::string alphabet_;
  std::vector<std::vector<State>> functions_;
  std::vector<std::string> witnesses_;
  std::vector<std::vector<int>> steps_;
  std::vector<std::vector<int>> table_;
};

struct Syntactic {
  TransitionMonoid monoid;
  /// The two-sided congruence of L, viewed as a right congruence.
  RightCongruence congruence;
};

/// Syntactic monoid and congruence of L(d), read off the transition monoid
/// of the minimal automaton.
Syntactic syntactic_congruence(const Dfa& d);

struct OrbitMeet {
  RightCongruence meet;
  RightCongruence syntactic;
  std::size_t orbit_size = 0;
  bool equal_to_syntactic = false;
};

/// Folds meet over the orbit {rc * w} and compares the result with the
/// Cayley structure of the transition monoid of rc.
OrbitMeet orbit_meet_check(const RightCongruence& rc_nerode);

}  // namespace topos::words
