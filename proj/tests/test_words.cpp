#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "topos/error.hpp"
#include "topos/fixtures.hpp"
#include "topos/words/monoid.hpp"
#include "topos/words/regex.hpp"
#include "topos/words/right_congruence.hpp"

using namespace topos;
using namespace topos::words;

TEST_CASE("regex parsing") {
  CHECK(to_string(parse_regex("(ab)*", "ab")) == "Star(Concat(a,b))");
  CHECK(to_string(parse_regex("a|b", "ab")) == "Alt(a,b)");
  CHECK(to_string(parse_regex("ab|#e*", "ab")) == "Alt(Concat(a,b),Star(#e))");
  CHECK(parse_regex("#0", "ab").kind == Regex::Kind::EmptySet);

  auto position_of = [](std::string_view src) -> long {
    try {
      parse_regex(src, "ab");
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("a(") == 1);
  CHECK(position_of("a)") == 1);
  CHECK(position_of("") == 0);
  CHECK(position_of("a||b") == 2);
  CHECK(position_of("*a") == 0);
  CHECK(position_of("()") == 1);
  CHECK(position_of("#x") == 1);

  try {
    parse_regex("abc", "ab");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymbolOutsideAlphabet);
  }
  CHECK_THROWS_AS(parse_regex("a", "aa"), Error);
}

TEST_CASE("regex compilation matches std::regex") {
  for (const auto& fx : bundled_regexes()) {
    CAPTURE(fx.regex);
    const auto d = compile_regex(fx.regex, fx.alphabet);
    const auto member = oracle::std_regex_membership(fx.regex);
    for (const auto& w : oracle::words_up_to(fx.alphabet, fx.alphabet.size() == 2 ? 8 : 5))
      CHECK(d.accepts(w) == member(w));
  }
}

TEST_CASE("minimal state counts") {
  CHECK(compile_regex("(ab)*", "ab").states() == 3);
  CHECK(compile_regex("a*", "ab").states() == 2);
  const auto empty = compile_regex("#0", "ab");
  CHECK(empty.states() == 1);
  CHECK_FALSE(empty.accepting(0));
  CHECK(compile_regex("#e", "").states() == 1);
  CHECK(compile_regex("#e", "").accepting(0));
  CHECK(compile_regex("#0", "").states() == 1);
}

TEST_CASE("Myhill-Nerode: index equals residual count") {
  for (const auto& fx : bundled_regexes()) {
    CAPTURE(fx.regex);
    const auto d = compile_regex(fx.regex, fx.alphabet);
    const auto n = static_cast<std::size_t>(d.states());
    const auto residuals = oracle::residual_count(oracle::std_regex_membership(fx.regex), fx.alphabet, 2 * n, n);
    CHECK(nerode_congruence(d).index() == d.states());
    CHECK(residuals == n);
  }
  CHECK(nerode_congruence(compile_regex("(ab)*", "ab")).index() == 3);
  CHECK(nerode_congruence(compile_regex("(a|b)*a", "ab")).index() == 2);
  CHECK(nerode_congruence(compile_regex("(a|b)*", "ab")).is_top());
}

TEST_CASE("minimization agrees with the residual oracle on random automata") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const bool binary = trial % 3 != 0;
    const auto raw = oracle::random_dfa(rng, binary ? 1 + trial % 7 : 1 + trial % 4, binary ? "ab" : "abc");
    const auto min = minimize(raw);
    const auto n = static_cast<std::size_t>(raw.states());
    CHECK(static_cast<std::size_t>(min.states()) ==
          oracle::residual_count(oracle::dfa_membership(raw), raw.alphabet(), n, n));
    for (const auto& w : oracle::words_up_to(raw.alphabet(), 5)) CHECK(min.accepts(w) == raw.accepts(w));
    CHECK(minimize(min) == min);
  }
}

TEST_CASE("state congruences") {
  const auto d = compile_regex("(ab)*", "ab");
  const auto rc = nerode_congruence(d);
  CHECK(state_congruence(rc, rc.initial()) == rc);
  const auto sink = d.run("b");
  CHECK(state_congruence(d, sink).is_top());
  CHECK(state_congruence(d, d.run("a")) == nerode_congruence(compile_regex("b(ab)*", "ab")));
  CHECK_THROWS_AS(state_congruence(rc, 17), Error);
}

TEST_CASE("congruence action") {
  const auto rc = nerode_congruence(compile_regex("(ab)*", "ab"));
  CHECK(congruence_action(rc, "") == rc);
  CHECK(congruence_action(rc, "a") == nerode_congruence(compile_regex("b(ab)*", "ab")));
  const auto top = RightCongruence::top("ab");
  CHECK(congruence_action(top, "abba") == top);
  CHECK_THROWS_AS(congruence_action(rc, "c"), Error);
}

TEST_CASE("lattice of right congruences") {
  const auto ends_a = nerode_congruence(compile_regex("(a|b)*a", "ab"));
  const auto ends_b = nerode_congruence(compile_regex("(a|b)*b", "ab"));
  CHECK(meet(ends_a, ends_a) == ends_a);
  CHECK(meet(ends_a, ends_b).index() == 3);
  CHECK(leq(meet(ends_a, ends_b), ends_a));
  CHECK(leq(ends_a, RightCongruence::top("ab")));
  CHECK_FALSE(leq(RightCongruence::top("ab"), ends_a));
  CHECK_THROWS_AS(meet(ends_a, RightCongruence::top("abc")), Error);

  const auto d = compile_regex("(ab)*", "ab");
  CHECK(leq(syntactic_congruence(d).congruence, nerode_congruence(d)));
}

TEST_CASE("syntactic monoids") {
  CHECK(syntactic_congruence(compile_regex("(ab)*", "ab")).monoid.order() == 6);
  CHECK(syntactic_congruence(compile_regex("(a|b)*a", "ab")).monoid.order() == 3);
  const auto all = syntactic_congruence(compile_regex("(a|b)*", "ab"));
  CHECK(all.monoid.order() == 1);
  CHECK(all.congruence.is_top());

  for (const auto& fx : bundled_regexes()) {
    CAPTURE(fx.regex);
    const auto d = compile_regex(fx.regex, fx.alphabet);
    const auto syn = syntactic_congruence(d);
    CHECK(syn.monoid.order() == oracle::word_function_count(d.system()));
    CHECK(syn.congruence.index() == static_cast<int>(syn.monoid.order()));
    if (d.states() <= 4)
      CHECK(syn.monoid.order() ==
            oracle::syntactic_class_count(oracle::std_regex_membership(fx.regex), fx.alphabet, d.states()));
    // Witnesses realize their functions and the table is consistent.
    for (std::size_t m = 0; m < syn.monoid.order(); ++m) {
      for (State s = 0; s < d.states(); ++s)
        CHECK(d.system().run(s, syn.monoid.witness(static_cast<int>(m)))
              == syn.monoid.function(static_cast<int>(m))[s]);
    }
  }
}

TEST_CASE("orbit meet equals the syntactic congruence") {
  for (const auto& fx : bundled_regexes()) {
    CAPTURE(fx.regex);
    const auto d = compile_regex(fx.regex, fx.alphabet);
    const auto result = orbit_meet_check(nerode_congruence(d));
    CHECK(result.equal_to_syntactic);
    CHECK(result.orbit_size <= static_cast<std::size_t>(d.states()));
    CHECK(result.syntactic == syntactic_congruence(d).congruence);
  }
  const auto ab = orbit_meet_check(nerode_congruence(compile_regex("(ab)*", "ab")));
  CHECK(ab.meet.index() == 6);
  const auto ea = orbit_meet_check(nerode_congruence(compile_regex("(a|b)*a", "ab")));
  CHECK(ea.orbit_size == 2);
  CHECK(ea.meet.index() == 3);
  CHECK(orbit_meet_check(RightCongruence::top("ab")).meet.is_top());
}

TEST_CASE("words normalization operator") {
  CHECK(words_normalization_operator(nerode_congruence(compile_regex("a(a|b)*", "ab"))).index() == 2);
  CHECK(words_normalization_operator(RightCongruence::top("ab")).is_top());
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rc = nerode_congruence(oracle::random_minimal_dfa(rng, 6, trial % 2 ? "ab" : "abc"));
    const auto n = words_normalization_operator(rc);
    CHECK(leq(rc, n));
    // u ~ v iff rc * u = rc * v, checked on short words.
    const auto words = oracle::words_up_to(rc.alphabet(), 3);
    for (const auto& u : words)
      for (const auto& v : words)
        CHECK(n.related(u, v) == (congruence_action(rc, u) == congruence_action(rc, v)));
  }
}

TEST_CASE("action and meet cohere") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = nerode_congruence(oracle::random_minimal_dfa(rng, 5, "ab"));
    const auto b = nerode_congruence(oracle::random_minimal_dfa(rng, 5, "ab"));
    for (const auto& w : oracle::words_up_to("ab", 3)) {
      CHECK(congruence_action(meet(a, b), w) == meet(congruence_action(a, w), congruence_action(b, w)));
      CHECK(congruence_action(a, w).index() <= a.index());
    }
  }
}

TEST_CASE("canonical form agrees with backtracking isomorphism") {
  std::mt19937 rng(13);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_system(rng, 1 + trial % 6, "ab");
    State start_b = 0;
    TransitionSystem b;
    if (trial % 2 == 0) {
      b = oracle::shuffled(rng, a, 0, &start_b, trial % 3);
    } else {
      b = oracle::random_system(rng, 1 + trial % 6, "ab");
    }
    const bool structural = RightCongruence::canonical(a, 0) == RightCongruence::canonical(b, start_b);
    const bool iso = oracle::pointed_isomorphic(a, 0, b, start_b);
    CHECK(structural == iso);
    positives += iso;
  }
  CHECK(positives >= 100);
}

TEST_CASE("cocone property for equivariant injections") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    // The injections into a disjoint union.
    const auto x = oracle::random_system(rng, 1 + trial % 5, "ab");
    const auto y = oracle::random_system(rng, 1 + trial % 4, "ab");
    TransitionSystem sum{"ab", x.states + y.states, {}};
    sum.delta = x.delta;
    for (State t : y.delta) sum.delta.push_back(t + x.states);
    for (State q = 0; q < x.states; ++q) CHECK(state_congruence(x, q) == state_congruence(sum, q));
    for (State q = 0; q < y.states; ++q) CHECK(state_congruence(y, q) == state_congruence(sum, q + x.states));
  }
}

TEST_CASE("empty alphabet") {
  const auto d = compile_regex("#e", "");
  CHECK(nerode_congruence(d).is_top());
  CHECK(syntactic_congruence(d).monoid.order() == 1);
  CHECK(orbit_meet_check(nerode_congruence(d)).equal_to_syntactic);
}
