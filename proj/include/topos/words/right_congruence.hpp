#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "topos/words/automaton.hpp"

namespace topos::words {

/// A finite-index right congruence on Sigma*, stored as the accessible
/// pointed transition system Sigma* / ~ with states numbered by first visit
/// in a breadth-first, letter-ordered traversal from the class of the empty
/// word. Two values are equal iff the pointed systems are isomorphic.
class RightCongruence {
 public:
  /// Accessible part of `system` from `start`, canonically renumbered.
  static RightCongruence canonical(const TransitionSystem& system, State start);
  /// The total congruence: one class.
  static RightCongruence top(std::string_view alphabet);

  const std::string& alphabet() const { return system_.alphabet; }
  const TransitionSystem& system() const { return system_; }
  int index() const { return system_.states; }
  State initial() const { return 0; }
  State step(State s, int letter) const { return system_.step(s, letter); }
  /// Class of `word`.
  State run(std::string_view word) const { return system_.run(0, word); }
  bool related(std::string_view u, std::string_view v) const { return run(u) == run(v); }
  bool is_top() const { return index() == 1; }
  /// Shortlex-least word of every class, indexed by state.
  std::vector<std::string> representatives() const;

  auto operator<=>(const RightCongruence& other) const {
    if (auto c = system_.alphabet <=> other.system_.alphabet; c != 0) return c;
    if (auto c = system_.states <=> other.system_.states; c != 0) return c;
    return system_.delta <=> other.system_.delta;
  }
  bool operator==(const RightCongruence& other) const { return system_ == other.system_; }

 private:
  TransitionSystem system_;
};

/// Transition structure of the minimal automaton of L(d), acceptance
/// forgotten: u ~ v iff the residuals of L by u and v agree.
RightCongruence nerode_congruence(const Dfa& d);

/// u ~ v iff q.u = q.v: the accessible part from q, pointed at q.
/// Throws UnknownState.
RightCongruence state_congruence(const TransitionSystem& system, State q);
RightCongruence state_congruence(const Dfa& d, State q);
RightCongruence state_congruence(const RightCongruence& rc, State q);

/// rc * w, i.e. u ~ v iff wu rc wv. Throws SymbolOutsideAlphabet.
RightCongruence congruence_action(const RightCongruence& rc, std::string_view word);

/// Every rc * w, deduplicated, in order of first occurrence over the states.
std::vector<RightCongruence> orbit(const RightCongruence& rc);

/// Intersection of relations via the pointed product. Throws AlphabetMismatch.
RightCongruence meet(const RightCongruence& a, const RightCongruence& b);
/// a is contained in b as a relation. Throws AlphabetMismatch.
bool leq(const RightCongruence& a, const RightCongruence& b);

/// Shortlex-least words u, v with u a-related to v but not b-related, if
/// a is not contained in b. Throws AlphabetMismatch.
std::optional<std::pair<std::string, std::string>> leq_counterexample(const RightCongruence& a,
                                                                      const RightCongruence& b);

/// u ~ v iff rc * u = rc * v: states are identified when their pointed
/// accessible parts are isomorphic.
RightCongruence words_normalization_operator(const RightCongruence& rc);

}  // namespace topos::words
