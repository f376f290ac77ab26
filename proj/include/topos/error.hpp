#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topos {

enum class ErrorCode {
  AssociativityViolation,
  IdentityViolation,
  IllTypedComposite,
  MalformedCategory,
  UnknownObject,
  UnknownMorphism,
  ElementNotInCarrier,
  NotFunctorial,
  NotNatural,
  NonRepresentableSource,
  BudgetExceeded,
  NotParallel,
  SiteMismatch,
  ObjectMismatch,
  InvalidGroup,
  NotASubgroup,
  NotACongruenceOfSubgroupForm,
  NotSubpresheaf,
  MissingTop,
  NotMeetClosed,
  NotUpwardClosed,
  SyntaxError,
  SymbolOutsideAlphabet,
  UnknownState,
  AlphabetMismatch,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// One failed category law, naming the morphisms involved.
struct CategoryViolation {
  ErrorCode law;
  std::vector<std::string> morphisms;
  std::string detail;
};

class CategoryError : public Error {
 public:
  explicit CategoryError(std::vector<CategoryViolation> violations);

  const std::vector<CategoryViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<CategoryViolation> violations_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string_view what, std::size_t size, std::size_t cap)
      : Error(ErrorCode::BudgetExceeded,
              std::string(what) + " reached size " + std::to_string(size) + " (budget " +
                  std::to_string(cap) + ")"),
        size_(size),
        cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, "at index " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace topos
