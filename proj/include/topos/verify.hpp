#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topos/category.hpp"
#include "topos/certificate.hpp"

namespace topos {

struct VerifyOptions {
  /// Extra fixtures: *.category.json, *.group.json, *.dfa.json,
  /// *.regex.json and *.filter.json files.
  std::optional<std::filesystem::path> fixtures;
  std::size_t budget = kDefaultBudget;
};

/// "all", "lsc", "normalize", "filters" or "words".
const std::vector<std::string>& suite_names();

/// Runs the named suite on the bundled fixtures and any user fixtures.
/// Throws MalformedInput for an unknown suite or a malformed fixture and
/// BudgetExceeded when a site is too large.
Certificate run_suite(std::string_view suite, const VerifyOptions& options = {});

}  // namespace topos
