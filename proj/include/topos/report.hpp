#pragma once

#include <string>

#include "topos/certificate.hpp"
#include "topos/group.hpp"
#include "topos/io.hpp"
#include "topos/lsc.hpp"
#include "topos/words/automaton.hpp"

namespace topos {

inline constexpr int kReportSchemaVersion = 1;

struct Report {
  std::string kind;
  io::json payload = io::json::object();
  Certificate verdicts;
};

/// {schema_version, kind, payload, verdicts: [{check, pass, witness}]}.
io::json to_json(const Report& report);
std::string render_machine(const Report& report);
std::string render_human(const Report& report);

/// Xi with blocks, the action table, xi_Xi, meets and order.
Report lsc_report(const LocalStateClassifier& lsc);

/// Subgroup lattice, normalization arrows, Dedekind verdict and the
/// comparison with brute-force normalizers.
Report group_report(const FiniteGroup& g, std::size_t budget = kDefaultBudget);

/// Minimal DFA, Nerode index, syntactic monoid with witnesses, orbit meet
/// and normalization image.
Report words_report(const words::Dfa& d, const std::string& source = {});

}  // namespace topos
