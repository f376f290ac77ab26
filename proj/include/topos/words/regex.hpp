#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace topos::words {

/// Abstract syntax of a regular expression over single-character symbols.
struct Regex {
  enum class Kind { EmptySet, EmptyWord, Symbol, Concat, Alt, Star };

  Kind kind = Kind::EmptySet;
  char symbol = 0;
  std::vector<Regex> children;

  static Regex empty_set() { return {Kind::EmptySet, 0, {}}; }
  static Regex empty_word() { return {Kind::EmptyWord, 0, {}}; }
  static Regex sym(char c) { return {Kind::Symbol, c, {}}; }
  static Regex concat(Regex a, Regex b);
  static Regex alt(Regex a, Regex b);
  static Regex star(Regex a);

  bool operator==(const Regex&) const = default;
};

/// Grammar (lowest precedence first):
///   alt    := concat ('|' concat)*
///   concat := postfix postfix*
///   postfix:= atom '*'*
///   atom   := symbol | '#e' | '#0' | '(' alt ')'
/// Throws SyntaxError with the index of the first offending character, or
/// Error(SymbolOutsideAlphabet).
Regex parse_regex(std::string_view source, std::string_view alphabet);

/// Fully parenthesized rendering, e.g. "Star(Concat(a,b))".
std::string to_string(const Regex& r);

/// Throws MalformedInput on repeated symbols or reserved characters.
void check_alphabet(std::string_view alphabet);

}  // namespace topos::words
