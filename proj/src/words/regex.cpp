#include "topos/words/regex.hpp"

#include "topos/error.hpp"

namespace topos::words {

Regex Regex::concat(Regex a, Regex b) {
  Regex r{Kind::Concat, 0, {}};
  r.children.push_back(std::move(a));
  r.children.push_back(std::move(b));
  return r;
}

Regex Regex::alt(Regex a, Regex b) {
  Regex r{Kind::Alt, 0, {}};
  r.children.push_back(std::move(a));
  r.children.push_back(std::move(b));
  return r;
}

Regex Regex::star(Regex a) {
  Regex r{Kind::Star, 0, {}};
  r.children.push_back(std::move(a));
  return r;
}

namespace {

constexpr std::string_view kReserved = "|*()#";

class Parser {
 public:
  Parser(std::string_view src, std::string_view alphabet) : src_(src), alphabet_(alphabet) {}

  Regex parse() {
    prescan_parentheses();
    Regex r = alternation();
    if (pos_ < src_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return r;
  }

 private:
  void prescan_parentheses() const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] == '(') open.push_back(i);
      if (src_[i] == ')') {
        if (open.empty()) throw SyntaxError(i, "unmatched ')'");
        open.pop_back();
      }
    }
    if (!open.empty()) throw SyntaxError(open.back(), "unmatched '('");
  }

  bool at_atom_start() const {
    if (pos_ >= src_.size()) return false;
    const char c = src_[pos_];
    return c != '|' && c != ')' && c != '*';
  }

  Regex alternation() {
    Regex r = concatenation();
    while (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      r = Regex::alt(std::move(r), concatenation());
    }
    return r;
  }

  Regex concatenation() {
    if (!at_atom_start()) throw SyntaxError(pos_, "expected an expression");
    Regex r = postfix();
    while (at_atom_start()) r = Regex::concat(std::move(r), postfix());
    return r;
  }

  Regex postfix() {
    Regex r = atom();
    while (pos_ < src_.size() && src_[pos_] == '*') {
      ++pos_;
      r = Regex::star(std::move(r));
    }
    return r;
  }

  Regex atom() {
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Regex inner = alternation();
      if (pos_ >= src_.size() || src_[pos_] != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '#') {
      if (pos_ + 1 >= src_.size()) throw SyntaxError(pos_, "'#' must be followed by 'e' or '0'");
      const char k = src_[pos_ + 1];
      if (k != 'e' && k != '0') throw SyntaxError(pos_ + 1, "unknown escape '#" + std::string(1, k) + "'");
      pos_ += 2;
      return k == 'e' ? Regex::empty_word() : Regex::empty_set();
    }
    if (alphabet_.find(c) == std::string_view::npos)
      throw Error(ErrorCode::SymbolOutsideAlphabet,
                  "'" + std::string(1, c) + "' at index " + std::to_string(pos_));
    ++pos_;
    return Regex::sym(c);
  }

  std::string_view src_;
  std::string_view alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

void check_alphabet(std::string_view alphabet) {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (kReserved.find(alphabet[i]) != std::string_view::npos)
      throw Error(ErrorCode::MalformedInput, "reserved character '" + std::string(1, alphabet[i]) + "' in alphabet");
    if (alphabet.find(alphabet[i]) != i)
      throw Error(ErrorCode::MalformedInput, "repeated symbol '" + std::string(1, alphabet[i]) + "' in alphabet");
  }
}

Regex parse_regex(std::string_view source, std::string_view alphabet) {
  check_alphabet(alphabet);
  return Parser(source, alphabet).parse();
}

std::string to_string(const Regex& r) {
  switch (r.kind) {
    case Regex::Kind::EmptySet: return "#0";
    case Regex::Kind::EmptyWord: return "#e";
    case Regex::Kind::Symbol: return std::string(1, r.symbol);
    case Regex::Kind::Concat: return "Concat(" + to_string(r.children[0]) + "," + to_string(r.children[1]) + ")";
    case Regex::Kind::Alt: return "Alt(" + to_string(r.children[0]) + "," + to_string(r.children[1]) + ")";
    case Regex::Kind::Star: return "Star(" + to_string(r.children[0]) + ")";
  }
  return {};
}

}  // namespace topos::words
