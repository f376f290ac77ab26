#include "topos/verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "topos/error.hpp"
#include "topos/filters.hpp"
#include "topos/fixtures.hpp"
#include "topos/io.hpp"
#include "topos/normalize.hpp"
#include "topos/words/monoid.hpp"
#include "topos/words/right_congruence.hpp"

namespace topos {

namespace {

namespace fs = std::filesystem;

constexpr unsigned kRandomDfaSeed = 20240917;
constexpr int kRandomDfaCount = 20;
constexpr int kRandomDfaMaxStates = 6;
constexpr std::size_t kCoconeFamilyLimit = 12;

std::string xi_name(const LocalStateClassifier& lsc, ObjectId c, Element q) {
  return lsc.site().object_name(c) + ":" + lsc.xi().name(c, q);
}

// ---------------------------------------------------------------- lsc

Certificate lsc_checks(const LocalStateClassifier& lsc) {
  Certificate cert;
  const auto& cat = lsc.site();
  const auto objects = static_cast<ObjectId>(cat.object_count());

  std::string laws;
  for (ObjectId c = 0; c < objects && laws.empty(); ++c) {
    const auto n = static_cast<Element>(lsc.size(c));
    for (Element a = 0; a < n && laws.empty(); ++a) {
      if (lsc.meet(c, a, a) != a) laws = xi_name(lsc, c, a) + " ^ itself";
      if (lsc.meet(c, a, lsc.top(c)) != a) laws = xi_name(lsc, c, a) + " ^ top";
      for (Element b = 0; b < n && laws.empty(); ++b) {
        const auto ab = lsc.meet(c, a, b);
        if (ab != lsc.meet(c, b, a)) laws = "commutativity at " + xi_name(lsc, c, a) + ", " + lsc.xi().name(c, b);
        if (lsc.leq(c, a, b) != (ab == a)) laws = "order vs meet at " + xi_name(lsc, c, a) + ", " + lsc.xi().name(c, b);
        if (n <= 16)
          for (Element d = 0; d < n && laws.empty(); ++d)
            if (lsc.meet(c, ab, d) != lsc.meet(c, a, lsc.meet(c, b, d)))
              laws = "associativity at " + xi_name(lsc, c, a);
      }
    }
  }
  cert.add("semilattice laws", laws.empty(), laws);

  std::string action;
  for (MorphismId f = 0; f < static_cast<MorphismId>(cat.morphism_count()) && action.empty(); ++f) {
    const auto c = cat.target(f), d = cat.source(f);
    const auto n = static_cast<Element>(lsc.size(c));
    for (Element a = 0; a < n && action.empty(); ++a)
      for (Element b = 0; b < n && action.empty(); ++b) {
        if (lsc.act(lsc.meet(c, a, b), f) != lsc.meet(d, lsc.act(a, f), lsc.act(b, f)))
          action = "meet not preserved by " + cat.morphism(f).name;
        if (lsc.leq(c, a, b) && !lsc.leq(d, lsc.act(a, f), lsc.act(b, f)))
          action = "order not preserved by " + cat.morphism(f).name;
      }
  }
  cert.add("action preserves meets and order", action.empty(), action);

  std::string surj;
  std::vector<Presheaf> family;
  for (ObjectId c = 0; c < objects && surj.empty(); ++c)
    for (Element q = 0; q < static_cast<Element>(lsc.size(c)); ++q) {
      const auto& cong = lsc.congruence(c, q);
      auto quotient = quotient_presheaf(lsc.site_ptr(), cong);
      if (xi_component(lsc, quotient)(c, quotient_generator(cat, cong)) != q) {
        surj = xi_name(lsc, c, q);
        break;
      }
      family.push_back(std::move(quotient));
    }
  cert.add("joint surjectivity: xi([id]) in y(c)/q is q", surj.empty(), surj);

  if (family.size() <= kCoconeFamilyLimit) {
    std::string cocone;
    std::size_t monos = 0;
    for (const auto& x : family)
      for (const auto& y : family)
        for (const auto& m : enumerate_morphisms(x, y, 16, true)) {
          ++monos;
          if (compose(xi_component(lsc, y), m) != xi_component(lsc, x) && cocone.empty())
            cocone = "mono between quotients of representables";
        }
    cert.add("cocone naturality over " + std::to_string(monos) + " monos", cocone.empty(), cocone);
  }
  cert.append(verify_semilattice_compat(lsc, {}));
  if (family.size() >= 2 && family.size() <= kCoconeFamilyLimit) {
    const std::vector<Presheaf> pair{family.front(), family.back()};
    cert.append(verify_semilattice_compat(lsc, pair));
  }
  return cert;
}

Certificate lsc_suite(std::size_t budget) {
  Certificate cert;
  for (const auto& [name, site] : bundled_sites()) {
    const auto lsc = LocalStateClassifier::build(site, budget);
    cert.append(lsc_checks(lsc), "lsc/" + name + ": ");
  }

  const auto graph = LocalStateClassifier::build(make_site(parallel_arrows_category()), budget);
  const auto v = graph.site().object("V"), e = graph.site().object("E");
  cert.add("lsc/graph: Xi(V) = 1, Xi(E) = 2", graph.size(v) == 1 && graph.size(e) == 2,
           "sizes " + std::to_string(graph.size(v)) + ", " + std::to_string(graph.size(e)));

  const auto idem = LocalStateClassifier::build(make_site(idempotent_monoid_category()), budget);
  const auto fixed = idem.top(0);
  const Element not_fixed = fixed == 0 ? 1 : 0;
  const bool moves = idem.size(0) == 2 && idem.act(not_fixed, idem.site().morphism("x")) == fixed;
  cert.add("lsc/idempotent: [not fixed] . x = [fixed]", moves, "x-action on Xi: " + idem.xi().name(0, not_fixed));

  for (const auto& [name, site] : bundled_sites()) {
    if (name != "chain2" && name != "chain3" && name != "diamond") continue;
    const auto lsc = LocalStateClassifier::build(site, budget);
    std::string witness;
    for (ObjectId c = 0; c < static_cast<ObjectId>(site->object_count()); ++c)
      if (lsc.size(c) != 1) witness = site->object_name(c) + " has " + std::to_string(lsc.size(c)) + " elements";
    cert.add("lsc/" + name + ": Xi is terminal", witness.empty(), witness);
  }
  return cert;
}

// ---------------------------------------------------------------- normalize

std::string subgroup_text(const FiniteGroup& g, const Subgroup& h) { return subgroup_label(g, h); }

Certificate group_checks(const FiniteGroup& g, std::size_t budget) {
  Certificate cert;
  const auto site = make_site(group_category(g));
  const auto lsc = LocalStateClassifier::build(site, budget);
  const SubgroupCongruenceBijection bij(g, site);
  const auto n = normalization_operator(lsc);
  const auto subgroups = enumerate_subgroups(g);

  cert.add("subgroups correspond to quotient objects", subgroups.size() == lsc.size(0),
           std::to_string(subgroups.size()) + " subgroups, " + std::to_string(lsc.size(0)) + " quotients");
  std::string oracle, roundtrip;
  for (const auto& h : subgroups) {
    const auto q = bij.forward(h);
    if (bij.backward(q) != h && roundtrip.empty()) roundtrip = subgroup_text(g, h);
    const auto image = bij.backward(lsc.congruence(0, n(0, lsc.index_of(q))));
    const auto direct = normalizer_direct(g, h);
    if (image != direct && oracle.empty())
      oracle = subgroup_text(g, h) + " -> " + subgroup_text(g, image) + ", brute force " + subgroup_text(g, direct);
  }
  cert.add("forward/backward roundtrip", roundtrip.empty(), roundtrip);
  cert.add("xi_Xi o forward = brute-force normalizer", oracle.empty(), oracle);
  const bool dedekind = is_dedekind(g);
  const bool top = is_top_operator(lsc, n);
  cert.add("xi_Xi constantly top iff Dedekind", dedekind == top, std::string("Dedekind: ") + (dedekind ? "yes" : "no"));
  cert.add("xi_Xi constantly top iff every congruence is action-invariant",
           top == all_congruences_action_invariant(lsc), "mismatch");
  return cert;
}

Certificate d4_checks(std::size_t budget) {
  Certificate cert;
  const auto g = dihedral_group(4);
  const auto site = make_site(group_category(g));
  const auto lsc = LocalStateClassifier::build(site, budget);
  const SubgroupCongruenceBijection bij(g, site);
  const auto n = normalization_operator(lsc);
  auto gen = [&](std::vector<std::string> names) { return generated_subgroup(g, names); };
  auto image = [&](const Subgroup& h) { return bij.backward(lsc.congruence(0, n(0, lsc.index_of(bij.forward(h))))); };

  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> table{
      {{"t"}, {"t", "s2"}},  {{"s2t"}, {"t", "s2"}}, {{"st"}, {"st", "s2"}},    {{"s3t"}, {"st", "s2"}},
      {{"s"}, {"s", "t"}},   {{"s2"}, {"s", "t"}},   {{"t", "s2"}, {"s", "t"}}, {{"st", "s2"}, {"s", "t"}},
      {{}, {"s", "t"}},      {{"s", "t"}, {"s", "t"}}};
  std::string witness;
  std::set<Subgroup> covered;
  for (const auto& [from, to] : table) {
    covered.insert(gen(from));
    if (image(gen(from)) != gen(to) && witness.empty())
      witness = subgroup_label(g, gen(from)) + " -> " + subgroup_label(g, image(gen(from)));
  }
  if (covered.size() != 10 || lsc.size(0) != 10) witness += " (subgroup count " + std::to_string(lsc.size(0)) + ")";
  cert.add("D4 normalization table", witness.empty(), witness);

  const auto idem = find_non_idempotence(lsc, n);
  cert.add("D4 non-idempotence witness", idem.has_value(),
           "none found");
  const auto tau = lsc.index_of(bij.forward(gen({"t"})));
  cert.add("D4: xi(xi(<t>)) = top != xi(<t>)", n(0, n(0, tau)) == lsc.top(0) && n(0, tau) != lsc.top(0),
           subgroup_label(g, image(gen({"t"}))));
  const auto mono = find_non_monotonicity(lsc, n);
  cert.add("D4 non-monotonicity witness", mono.has_value(), "none found");
  return cert;
}

Certificate normalize_suite(std::size_t budget) {
  Certificate cert;
  for (const auto& [name, site] : bundled_sites())
    cert.append(check_normalization_lemma(LocalStateClassifier::build(site, budget)), "normalize/" + name + ": ");
  for (const auto& [name, g] : bundled_groups()) cert.append(group_checks(g, budget), "normalize/" + name + ": ");
  cert.append(d4_checks(budget), "normalize/");

  const auto graph = LocalStateClassifier::build(make_site(parallel_arrows_category()), budget);
  const auto gn = normalization_operator(graph);
  const auto e = graph.site().object("E");
  cert.add("normalize/graph: both edge congruences go to [loop]", gn(e, 0) == graph.top(e) && gn(e, 1) == graph.top(e),
           "images " + graph.xi().name(e, gn(e, 0)) + ", " + graph.xi().name(e, gn(e, 1)));
  for (const auto& [name, site] : bundled_sites()) {
    if (name != "idempotent" && name != "chain2" && name != "chain3" && name != "diamond") continue;
    const auto lsc = LocalStateClassifier::build(site, budget);
    cert.add("normalize/" + name + ": xi_Xi is the identity", is_identity_operator(normalization_operator(lsc)),
             "some q is moved");
  }
  for (const auto& [name, g] : bundled_groups()) {
    if (name != "Q8" && !g.is_abelian()) continue;
    const auto lsc = LocalStateClassifier::build(make_site(group_category(g)), budget);
    cert.add("normalize/" + name + ": xi_Xi constantly top", is_top_operator(lsc, normalization_operator(lsc)),
             "some subgroup is not normal");
  }
  return cert;
}

// ---------------------------------------------------------------- filters

std::vector<Presheaf> standard_samples(const LocalStateClassifier& lsc) {
  std::vector<Presheaf> samples{lsc.xi(), terminal(lsc.site_ptr())};
  for (ObjectId c = 0; c < static_cast<ObjectId>(lsc.site().object_count()); ++c)
    samples.push_back(representable(lsc.site_ptr(), c));
  return samples;
}

Certificate theorem_checks(const LocalStateClassifier& lsc, const XiSubset& selection) {
  Certificate cert;
  const auto violation = check_filter(lsc, selection);
  cert.add("selection is an internal filter", !violation, violation ? std::string(to_string(violation->clause)) + ": " + violation->witness : "");
  cert.append(verify_main_theorem(lsc, selection, standard_samples(lsc)));
  return cert;
}

// Passes when the selection is rejected and the theorem fails at clause (a).
Certificate non_filter_checks(const LocalStateClassifier& lsc, const XiSubset& selection) {
  Certificate cert;
  const auto violation = check_filter(lsc, selection);
  cert.add("rejected as a filter (expected)", violation.has_value(), "accepted as a filter");
  const auto theorem = verify_main_theorem(lsc, selection, standard_samples(lsc));
  const auto* a = theorem.find("a: F in E_F");
  cert.add("clause (a) fails (expected)", a && !a->pass, a ? "clause (a) passed" : "clause (a) missing");
  return cert;
}

Certificate filters_suite(std::size_t budget) {
  Certificate cert;
  {
    const auto lsc = LocalStateClassifier::build(make_site(idempotent_monoid_category()), budget);
    cert.append(theorem_checks(lsc, top_filter(lsc)), "filters/idempotent+top: ");
  }
  {
    const auto g = dihedral_group(4);
    const auto site = make_site(group_category(g));
    const auto lsc = LocalStateClassifier::build(site, budget);
    const SubgroupCongruenceBijection bij(g, site);
    const auto s2 = lsc.index_of(bij.forward(generated_subgroup(g, std::vector<std::string>{"s2"})));
    const auto filter = filter_generated_by(lsc, XiSubset(lsc, {{s2}}));
    cert.append(theorem_checks(lsc, filter), "filters/D4+<s2>: ");
    const auto s = lsc.index_of(bij.forward(generated_subgroup(g, std::vector<std::string>{"s"})));
    const auto gen = filter_generated_by(lsc, XiSubset(lsc, {{s}})).subset().at(0);
    cert.add("filters/D4: <s> generates {<s>, D4}",
             gen.size() == 2 && std::count(gen.begin(), gen.end(), s) && std::count(gen.begin(), gen.end(), lsc.top(0)),
             std::to_string(gen.size()) + " elements");
  }
  {
    const auto lsc = LocalStateClassifier::build(make_site(parallel_arrows_category()), budget);
    cert.append(theorem_checks(lsc, top_filter(lsc)), "filters/graph+top: ");

    const auto v = lsc.site().object("V"), e = lsc.site().object("E");
    const Element not_loop = lsc.top(e) == 0 ? 1 : 0;
    std::vector<std::vector<Element>> sel(2);
    sel[v] = {0};
    sel[e] = {not_loop};
    const XiSubset non_filter(lsc, sel);
    const auto violation = check_filter(lsc, non_filter);
    cert.add("filters/graph: {[not loop]} + Xi(V) is rejected as not upward closed",
             violation && violation->clause == ErrorCode::NotUpwardClosed,
             violation ? std::string(to_string(violation->clause)) : "accepted as a filter");
    const auto theorem = verify_main_theorem(lsc, non_filter, standard_samples(lsc));
    const auto* a = theorem.find("a: F in E_F");
    const auto expected = lsc.xi().name(e, not_loop);
    cert.add("filters/graph: the non-filter fails clause (a) at " + expected + " (expected failure)",
             a && !a->pass && a->witness.find(expected) != std::string::npos,
             a ? (a->pass ? "clause (a) passed" : a->witness) : "clause (a) missing");
    std::vector<std::vector<Element>> seed(2);
    seed[e] = {not_loop};
    cert.add("filters/graph: [not loop] generates all of Xi",
             filter_generated_by(lsc, XiSubset(lsc, seed)).subset() == whole_filter(lsc).subset(), "smaller filter");
  }
  return cert;
}

// ---------------------------------------------------------------- words

std::size_t bounded_residual_count(const words::Dfa& d, std::size_t len) {
  std::vector<std::string> ws{""};
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (ws[i].size() < len)
      for (char c : d.alphabet()) ws.push_back(ws[i] + c);
  std::set<std::vector<bool>> rows;
  for (const auto& u : ws) {
    std::vector<bool> row;
    for (const auto& v : ws) row.push_back(d.accepts(u + v));
    rows.insert(std::move(row));
  }
  return rows.size();
}

Certificate dfa_checks(const words::Dfa& raw) {
  using namespace words;
  Certificate cert;
  const auto min = minimize(raw);
  const auto nerode = nerode_congruence(min);
  const auto len = static_cast<std::size_t>(std::max(raw.states() - 1, 0));
  const auto residuals = bounded_residual_count(raw, len);
  cert.add("Nerode index = minimal states = residual count",
           nerode.index() == min.states() && residuals == static_cast<std::size_t>(min.states()),
           std::to_string(nerode.index()) + ", " + std::to_string(min.states()) + ", " + std::to_string(residuals));
  const auto syn = syntactic_congruence(min);
  const auto orbit = orbit_meet_check(nerode);
  cert.add("orbit meet = syntactic congruence", orbit.equal_to_syntactic && orbit.syntactic == syn.congruence,
           "indices " + std::to_string(orbit.meet.index()) + ", " + std::to_string(syn.congruence.index()));
  const auto refine = leq_counterexample(syn.congruence, nerode);
  cert.add("syntactic <= Nerode", !refine, refine ? refine->first + " / " + refine->second : "");
  const auto lemma = leq_counterexample(nerode, words_normalization_operator(nerode));
  cert.add("rc <= xi_Xi(rc)", !lemma, lemma ? lemma->first + " / " + lemma->second : "");
  return cert;
}

words::Dfa random_minimal_dfa(std::mt19937& rng) {
  std::uniform_int_distribution<int> size(1, kRandomDfaMaxStates);
  const int n = size(rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::bernoulli_distribution coin(0.5);
  words::TransitionSystem s{"ab", n, {}};
  for (int i = 0; i < 2 * n; ++i) s.delta.push_back(pick(rng));
  std::vector<char> accepting(n);
  for (auto& a : accepting) a = coin(rng);
  return words::minimize(words::Dfa(std::move(s), 0, std::move(accepting)));
}

Certificate words_suite() {
  Certificate cert;
  for (const auto& fx : bundled_regexes()) cert.append(dfa_checks(words::compile_regex(fx.regex, fx.alphabet)), "words/" + fx.regex + ": ");
  std::mt19937 rng(kRandomDfaSeed);
  for (int i = 0; i < kRandomDfaCount; ++i) cert.append(dfa_checks(random_minimal_dfa(rng)), "words/random" + std::to_string(i) + ": ");

  const auto ab = words::syntactic_congruence(words::compile_regex("(ab)*", "ab")).monoid.order();
  cert.add("words: (ab)* has a syntactic monoid of order 6", ab == 6, std::to_string(ab));
  const auto ea = words::syntactic_congruence(words::compile_regex("(a|b)*a", "ab")).monoid.order();
  cert.add("words: (a|b)*a has a syntactic monoid of order 3", ea == 3, std::to_string(ea));
  const auto norm = words::words_normalization_operator(words::nerode_congruence(words::compile_regex("a(a|b)*", "ab")));
  cert.add("words: xi_Xi(nerode(a(a|b)*)) has index 2", norm.index() == 2, std::to_string(norm.index()));
  return cert;
}

// ---------------------------------------------------------------- user fixtures

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class F>
auto with_file(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedInput, path.filename().string() + ": " + e.what());
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, path.filename().string() + ": " + e.what());
  }
}

Certificate user_fixtures(const fs::path& dir, std::string_view suite, std::size_t budget) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::MalformedInput, "fixture directory '" + dir.string() + "' not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  auto wants = [&](std::string_view s) { return suite == "all" || suite == s; };
  Certificate cert;
  for (const auto& path : files) {
    const auto name = path.filename().string();
    const auto label = "fixture/" + name + ": ";
    if (has_suffix(name, ".category.json") && (wants("lsc") || wants("normalize"))) {
      const auto lsc = with_file(path, [&] {
        const auto cat = FiniteCategory::validate(io::category_from_json(io::read_json_file(path)));
        return LocalStateClassifier::build(make_site(cat), budget);
      });
      if (wants("lsc")) cert.append(lsc_checks(lsc), label);
      if (wants("normalize")) cert.append(check_normalization_lemma(lsc), label);
    } else if (has_suffix(name, ".group.json") && wants("normalize")) {
      const auto g = with_file(path, [&] { return io::group_from_json(io::read_json_file(path)); });
      cert.append(group_checks(g, budget), label);
    } else if (has_suffix(name, ".dfa.json") && wants("words")) {
      const auto d = with_file(path, [&] { return io::dfa_from_json(io::read_json_file(path)); });
      cert.append(dfa_checks(d), label);
    } else if (has_suffix(name, ".regex.json") && wants("words")) {
      const auto d = with_file(path, [&] {
        const auto doc = io::read_json_file(path);
        if (!doc.is_object() || doc.size() != 2 || !doc.contains("regex") || !doc.contains("alphabet"))
          throw Error(ErrorCode::MalformedInput, "expected exactly {regex, alphabet}");
        return words::compile_regex(doc.at("regex").get<std::string>(), doc.at("alphabet").get<std::string>());
      });
      cert.append(dfa_checks(d), label);
    } else if (has_suffix(name, ".filter.json") && wants("filters")) {
      with_file(path, [&] {
        const auto doc = io::read_json_file(path);
        if (!doc.is_object() || !doc.contains("category"))
          throw Error(ErrorCode::MalformedInput, "filter fixture needs a 'category' path");
        const auto cat_path = dir / doc.at("category").get<std::string>();
        const auto cat = FiniteCategory::validate(io::category_from_json(io::read_json_file(cat_path)));
        const auto lsc = LocalStateClassifier::build(make_site(cat), budget);
        const auto selection = io::filter_from_json(doc, lsc);
        const auto expect = doc.value("expect", std::string("filter"));
        if (expect == "filter") {
          cert.append(theorem_checks(lsc, selection), label);
        } else if (expect == "non-filter") {
          cert.append(non_filter_checks(lsc, selection), label);
        } else {
          throw Error(ErrorCode::MalformedInput, "expect must be 'filter' or 'non-filter'");
        }
        return 0;
      });
    }
  }
  return cert;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "lsc", "normalize", "filters", "words"};
  return names;
}

Certificate run_suite(std::string_view suite, const VerifyOptions& options) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error(ErrorCode::MalformedInput, "unknown suite '" + std::string(suite) + "'");
  Certificate cert;
  // User fixtures are parsed first so malformed input is reported before any work.
  Certificate user;
  if (options.fixtures) user = user_fixtures(*options.fixtures, suite, options.budget);
  const bool all = suite == "all";
  if (all || suite == "lsc") cert.append(lsc_suite(options.budget));
  if (all || suite == "normalize") cert.append(normalize_suite(options.budget));
  if (all || suite == "filters") cert.append(filters_suite(options.budget));
  if (all || suite == "words") cert.append(words_suite());
  cert.append(user);
  return cert;
}

}  // namespace topos
