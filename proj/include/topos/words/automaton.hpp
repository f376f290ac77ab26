#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "topos/words/regex.hpp"

namespace topos::words {

using State = int;

/// A Sigma-set with finitely many elements: a total transition function
/// on states, with letters indexed by their position in the alphabet.
struct TransitionSystem {
  std::string alphabet;
  int states = 0;
  std::vector<State> delta;  // delta[s * |alphabet| + a]

  int letters() const { return static_cast<int>(alphabet.size()); }
  State step(State s, int letter) const { return delta[static_cast<std::size_t>(s) * alphabet.size() + letter]; }
  /// Throws SymbolOutsideAlphabet or UnknownState.
  State run(State s, std::string_view word) const;
  int letter(char symbol) const;
  void validate() const;

  bool operator==(const TransitionSystem&) const = default;
};

/// Complete deterministic automaton whose states are all reachable.
class Dfa {
 public:
  /// Validates totality and trims unreachable states, renumbering the rest
  /// in breadth-first shortlex order.
  Dfa(TransitionSystem system, State initial, std::vector<char> accepting);

  const TransitionSystem& system() const { return system_; }
  const std::string& alphabet() const { return system_.alphabet; }
  int states() const { return system_.states; }
  State initial() const { return 0; }
  bool accepting(State s) const { return accepting_.at(s) != 0; }
  const std::vector<char>& accepting_mask() const { return accepting_; }
  State step(State s, int letter) const { return system_.step(s, letter); }
  State run(std::string_view word) const { return system_.run(0, word); }
  bool accepts(std::string_view word) const { return accepting(run(word)); }

  bool operator==(const Dfa&) const = default;

 private:
  TransitionSystem system_;
  std::vector<char> accepting_;
};

/// Hopcroft partition refinement followed by canonical renumbering.
Dfa minimize(const Dfa& d);

/// Thompson construction, subset construction with an explicit sink,
/// then minimize.
Dfa regex_to_min_dfa(const Regex& r, std::string_view alphabet);

/// Shorthand for parse_regex + regex_to_min_dfa.
Dfa compile_regex(std::string_view source, std::string_view alphabet);

}  // namespace topos::words
