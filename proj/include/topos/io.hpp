#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "topos/category.hpp"
#include "topos/filters.hpp"
#include "topos/group.hpp"
#include "topos/presheaf.hpp"
#include "topos/words/automaton.hpp"

namespace topos::io {

using json = nlohmann::json;

/// Reads and parses a JSON document; MalformedInput on I/O or syntax errors.
json read_json_file(const std::filesystem::path& path);

/// {objects, morphisms: [{name, src, dst}], identities: {obj: morphism},
///  composition: [{g, f, result}]}. Unknown fields are rejected.
CategoryDescription category_from_json(const json& doc);
json category_to_json(const FiniteCategory& cat);

/// {sets: {obj: [element]}, actions: {morphism: {element: element}}}.
Presheaf presheaf_from_json(const json& doc, const Site& site);
json presheaf_to_json(const Presheaf& x);

/// {elements: [name], table: [[entry]], names?: [display name]}. Table
/// entries are element names or indices; row a, column b holds a*b.
FiniteGroup group_from_json(const json& doc);
json group_to_json(const FiniteGroup& g);

/// {alphabet: "ab" or ["a","b"], states: [name] or count, initial,
///  accepting: [state], transitions: [[state, symbol, state]]}.
words::Dfa dfa_from_json(const json& doc);
json dfa_to_json(const words::Dfa& d);

/// {selection: {obj: [index into Xi(obj) or quotient name]}}, plus an
/// optional `category` path and `expect` ("filter" or "non-filter") that the
/// caller interprets.
XiSubset filter_from_json(const json& doc, const LocalStateClassifier& lsc);

}  // namespace topos::io
