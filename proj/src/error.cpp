#include "topos/error.hpp"

namespace topos {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AssociativityViolation: return "AssociativityViolation";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::IllTypedComposite: return "IllTypedComposite";
    case ErrorCode::MalformedCategory: return "MalformedCategory";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownMorphism: return "UnknownMorphism";
    case ErrorCode::ElementNotInCarrier: return "ElementNotInCarrier";
    case ErrorCode::NotFunctorial: return "NotFunctorial";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NonRepresentableSource: return "NonRepresentableSource";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::SiteMismatch: return "SiteMismatch";
    case ErrorCode::ObjectMismatch: return "ObjectMismatch";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotACongruenceOfSubgroupForm: return "NotACongruenceOfSubgroupForm";
    case ErrorCode::NotSubpresheaf: return "NotSubpresheaf";
    case ErrorCode::MissingTop: return "MissingTop";
    case ErrorCode::NotMeetClosed: return "NotMeetClosed";
    case ErrorCode::NotUpwardClosed: return "NotUpwardClosed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SymbolOutsideAlphabet: return "SymbolOutsideAlphabet";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<CategoryViolation>& violations) {
  std::string out = std::to_string(violations.size()) + " violation(s)";
  for (const auto& v : violations) {
    out += "; ";
    out += to_string(v.law);
    out += " [";
    for (std::size_t i = 0; i < v.morphisms.size(); ++i) {
      if (i) out += ", ";
      out += v.morphisms[i];
    }
    out += "]";
    if (!v.detail.empty()) out += " " + v.detail;
  }
  return out;
}

ErrorCode first_law(const std::vector<CategoryViolation>& violations) {
  return violations.empty() ? ErrorCode::MalformedCategory : violations.front().law;
}

}  // namespace

CategoryError::CategoryError(std::vector<CategoryViolation> violations)
    : Error(first_law(violations), summarize(violations)), violations_(std::move(violations)) {}

}  // namespace topos
