#include "topos/io.hpp"

#include <fstream>
#include <map>
#include <set>

#include "topos/error.hpp"

namespace topos::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

void require_object(const json& doc, const std::string& what) {
  if (!doc.is_object()) malformed(what + " must be an object");
}

void allow_fields(const json& doc, std::initializer_list<const char*> fields, const std::string& what) {
  require_object(doc, what);
  const std::set<std::string> allowed(fields.begin(), fields.end());
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key)) malformed("unknown field '" + key + "' in " + what);
}

const json& field(const json& doc, const char* name, const std::string& what) {
  auto it = doc.find(name);
  if (it == doc.end()) malformed("missing field '" + std::string(name) + "' in " + what);
  return *it;
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) malformed(what + " must be a string");
  return v.get<std::string>();
}

template <class F>
void each(const json& v, const std::string& what, F&& f) {
  if (!v.is_array()) malformed(what + " must be a list");
  for (const auto& item : v) f(item);
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed("'" + path.string() + "': " + e.what());
  }
}

CategoryDescription category_from_json(const json& doc) {
  allow_fields(doc, {"objects", "morphisms", "identities", "composition"}, "category");
  CategoryDescription d;
  each(field(doc, "objects", "category"), "objects", [&](const json& o) { d.objects.push_back(text(o, "object")); });
  each(field(doc, "morphisms", "category"), "morphisms", [&](const json& m) {
    allow_fields(m, {"name", "src", "dst"}, "morphism");
    d.morphisms.push_back({text(field(m, "name", "morphism"), "name"), text(field(m, "src", "morphism"), "src"),
                           text(field(m, "dst", "morphism"), "dst")});
  });
  const auto& ids = field(doc, "identities", "category");
  require_object(ids, "identities");
  for (const auto& [obj, id] : ids.items()) d.identities[obj] = text(id, "identity");
  each(field(doc, "composition", "category"), "composition", [&](const json& c) {
    allow_fields(c, {"g", "f", "result"}, "composite");
    d.composition.push_back({text(field(c, "g", "composite"), "g"), text(field(c, "f", "composite"), "f"),
                             text(field(c, "result", "composite"), "result")});
  });
  return d;
}

json category_to_json(const FiniteCategory& cat) {
  const auto d = cat.describe();
  json doc;
  doc["objects"] = d.objects;
  doc["morphisms"] = json::array();
  for (const auto& m : d.morphisms) doc["morphisms"].push_back({{"name", m.name}, {"src", m.src}, {"dst", m.dst}});
  doc["identities"] = d.identities;
  doc["composition"] = json::array();
  for (const auto& c : d.composition) doc["composition"].push_back({{"g", c.g}, {"f", c.f}, {"result", c.result}});
  return doc;
}

Presheaf presheaf_from_json(const json& doc, const Site& site) {
  allow_fields(doc, {"sets", "actions"}, "presheaf");
  const auto& cat = *site;
  std::vector<std::vector<std::string>> carrier(cat.object_count());
  const auto& sets = field(doc, "sets", "presheaf");
  require_object(sets, "sets");
  for (const auto& [obj, elems] : sets.items()) {
    if (!std::count(cat.object_names().begin(), cat.object_names().end(), obj)) malformed("unknown object '" + obj + "'");
    each(elems, "set of " + obj, [&](const json& e) { carrier[cat.object(obj)].push_back(text(e, "element")); });
  }
  std::vector<std::vector<Element>> action(cat.morphism_count());
  const auto& actions = field(doc, "actions", "presheaf");
  require_object(actions, "actions");
  std::set<std::string> seen;
  for (const auto& [name, table] : actions.items()) {
    MorphismId f;
    try {
      f = cat.morphism(std::string_view(name));
    } catch (const Error&) {
      malformed("unknown morphism '" + name + "'");
    }
    seen.insert(name);
    require_object(table, "action of " + name);
    const auto& mf = cat.morphism(f);
    const auto& from = carrier[mf.target];
    const auto& to = carrier[mf.source];
    action[f].assign(from.size(), -1);
    for (const auto& [x, y] : table.items()) {
      auto xi = std::find(from.begin(), from.end(), x);
      auto yi = std::find(to.begin(), to.end(), text(y, "action value"));
      if (xi == from.end() || yi == to.end()) malformed("action of '" + name + "' mentions an unknown element");
      action[f][xi - from.begin()] = static_cast<Element>(yi - to.begin());
    }
    if (std::count(action[f].begin(), action[f].end(), -1)) malformed("action of '" + name + "' is not total");
  }
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mf = cat.morphism(static_cast<MorphismId>(f));
    if (seen.count(mf.name)) continue;
    if (mf.source == mf.target && cat.identity(mf.source) == static_cast<MorphismId>(f)) {
      for (std::size_t x = 0; x < carrier[mf.source].size(); ++x) action[f].push_back(static_cast<Element>(x));
      continue;
    }
    malformed("missing action of '" + mf.name + "'");
  }
  return Presheaf(site, std::move(carrier), std::move(action));
}

json presheaf_to_json(const Presheaf& x) {
  const auto& cat = x.site();
  json doc;
  doc["sets"] = json::object();
  for (std::size_t c = 0; c < cat.object_count(); ++c)
    doc["sets"][cat.object_name(static_cast<ObjectId>(c))] = x.elements(static_cast<ObjectId>(c));
  doc["actions"] = json::object();
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto& mf = cat.morphism(static_cast<MorphismId>(f));
    json table = json::object();
    for (std::size_t e = 0; e < x.size(mf.target); ++e)
      table[x.name(mf.target, static_cast<Element>(e))] =
          x.name(mf.source, x.act(static_cast<Element>(e), static_cast<MorphismId>(f)));
    doc["actions"][mf.name] = table;
  }
  return doc;
}

FiniteGroup group_from_json(const json& doc) {
  allow_fields(doc, {"elements", "table", "names"}, "group");
  std::vector<std::string> elements;
  each(field(doc, "elements", "group"), "elements", [&](const json& e) { elements.push_back(text(e, "element")); });
  auto lookup = [&](const json& v) -> int {
    if (v.is_number_integer()) {
      const auto i = v.get<long long>();
      if (i < 0 || i >= static_cast<long long>(elements.size())) malformed("table index out of range");
      return static_cast<int>(i);
    }
    const auto name = text(v, "table entry");
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end()) malformed("table mentions unknown element '" + name + "'");
    return static_cast<int>(it - elements.begin());
  };
  std::vector<std::vector<int>> table;
  each(field(doc, "table", "group"), "table", [&](const json& row) {
    table.emplace_back();
    each(row, "table row", [&](const json& v) { table.back().push_back(lookup(v)); });
  });
  auto names = elements;
  if (auto it = doc.find("names"); it != doc.end()) {
    names.clear();
    each(*it, "names", [&](const json& n) { names.push_back(text(n, "name")); });
    if (names.size() != elements.size()) malformed("'names' must have one entry per element");
  }
  return FiniteGroup::from_table(std::move(names), std::move(table));
}

json group_to_json(const FiniteGroup& g) {
  json doc;
  doc["elements"] = g.names();
  doc["table"] = json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.name(g.mul(static_cast<int>(a), static_cast<int>(b))));
    doc["table"].push_back(row);
  }
  return doc;
}

words::Dfa dfa_from_json(const json& doc) {
  allow_fields(doc, {"alphabet", "states", "initial", "accepting", "transitions"}, "dfa");
  std::string alphabet;
  const auto& a = field(doc, "alphabet", "dfa");
  if (a.is_string()) {
    alphabet = a.get<std::string>();
  } else {
    each(a, "alphabet", [&](const json& s) {
      const auto sym = text(s, "symbol");
      if (sym.size() != 1) malformed("alphabet symbols are single characters");
      alphabet += sym;
    });
  }
  words::check_alphabet(alphabet);

  std::vector<std::string> states;
  const auto& s = field(doc, "states", "dfa");
  if (s.is_number_integer()) {
    const auto n = s.get<long long>();
    if (n <= 0 || n > 1000000) malformed("state count out of range");
    for (long long i = 0; i < n; ++i) states.push_back(std::to_string(i));
  } else {
    each(s, "states", [&](const json& v) { states.push_back(v.is_string() ? v.get<std::string>() : v.dump()); });
  }
  if (states.empty()) malformed("a DFA has at least one state");
  if (std::set<std::string>(states.begin(), states.end()).size() != states.size()) malformed("duplicate state names");
  auto state = [&](const json& v) -> words::State {
    const auto name = v.is_string() ? v.get<std::string>() : v.dump();
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw Error(ErrorCode::UnknownState, "'" + name + "'");
    return static_cast<words::State>(it - states.begin());
  };

  const auto k = alphabet.size();
  words::TransitionSystem system{alphabet, static_cast<int>(states.size()),
                                 std::vector<words::State>(states.size() * k, -1)};
  each(field(doc, "transitions", "dfa"), "transitions", [&](const json& t) {
    if (!t.is_array() || t.size() != 3) malformed("a transition is [state, symbol, state]");
    const auto from = state(t[0]);
    const auto sym = text(t[1], "symbol");
    if (sym.size() != 1 || alphabet.find(sym[0]) == std::string::npos)
      throw Error(ErrorCode::SymbolOutsideAlphabet, "'" + sym + "'");
    auto& slot = system.delta[static_cast<std::size_t>(from) * k + alphabet.find(sym[0])];
    const auto to = state(t[2]);
    if (slot >= 0 && slot != to) malformed("nondeterministic transition from '" + states[from] + "' on '" + sym + "'");
    slot = to;
  });
  for (std::size_t i = 0; i < system.delta.size(); ++i)
    if (system.delta[i] < 0)
      malformed("no transition from '" + states[i / k] + "' on '" + std::string(1, alphabet[i % k]) + "'");

  std::vector<char> accepting(states.size(), 0);
  each(field(doc, "accepting", "dfa"), "accepting", [&](const json& v) { accepting[state(v)] = 1; });
  return words::Dfa(std::move(system), state(field(doc, "initial", "dfa")), std::move(accepting));
}

json dfa_to_json(const words::Dfa& d) {
  json doc;
  doc["alphabet"] = d.alphabet();
  doc["states"] = d.states();
  doc["initial"] = d.initial();
  doc["accepting"] = json::array();
  doc["transitions"] = json::array();
  for (words::State s = 0; s < d.states(); ++s) {
    if (d.accepting(s)) doc["accepting"].push_back(s);
    for (int a = 0; a < d.system().letters(); ++a)
      doc["transitions"].push_back({s, std::string(1, d.alphabet()[a]), d.step(s, a)});
  }
  return doc;
}

XiSubset filter_from_json(const json& doc, const LocalStateClassifier& lsc) {
  allow_fields(doc, {"category", "selection", "expect"}, "filter");
  const auto& cat = lsc.site();
  std::vector<std::vector<Element>> indices(cat.object_count());
  const auto& sel = field(doc, "selection", "filter");
  require_object(sel, "selection");
  for (const auto& [obj, list] : sel.items()) {
    if (!std::count(cat.object_names().begin(), cat.object_names().end(), obj)) malformed("unknown object '" + obj + "'");
    each(list, "selection of " + obj, [&](const json& v) {
      const auto c = cat.object(obj);
      if (v.is_number_integer()) {
        indices[c].push_back(v.get<Element>());
        return;
      }
      if (!v.is_string()) malformed("selection entries are indices or quotient names");
      for (Element q = 0; q < static_cast<Element>(lsc.size(c)); ++q)
        if (lsc.xi().name(c, q) == v.get<std::string>()) {
          indices[c].push_back(q);
          return;
        }
      malformed("no quotient named '" + v.get<std::string>() + "' at " + obj);
    });
  }
  return XiSubset(lsc, indices);
}

}  // namespace topos::io
