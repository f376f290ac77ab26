#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "topos/error.hpp"
#include "topos/filters.hpp"
#include "topos/fixtures.hpp"
#include "topos/group.hpp"
#include "topos/io.hpp"
#include "topos/lsc.hpp"
#include "topos/report.hpp"
#include "topos/verify.hpp"
#include "topos/words/automaton.hpp"

namespace {

using topos::io::json;

enum Exit { kPass = 0, kCheckFailure = 1, kInputError = 2, kBudget = 3 };

struct Settings {
  std::size_t budget = topos::kDefaultBudget;
  std::string format = "human";
};

int emit(const topos::Report& report, const Settings& settings) {
  std::cout << (settings.format == "machine" ? topos::render_machine(report) : topos::render_human(report));
  return report.verdicts.passed() ? kPass : kCheckFailure;
}

int fail(int code, const std::string& message, const Settings& settings) {
  if (settings.format == "machine") {
    std::cerr << json{{"schema_version", topos::kReportSchemaVersion}, {"error", message}, {"exit_code", code}}.dump(2)
              << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return code;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw topos::Error(topos::ErrorCode::MalformedInput, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

std::vector<std::string> names_at(const topos::XiSubset& s, const topos::LocalStateClassifier& lsc,
                                  topos::ObjectId c) {
  std::vector<std::string> out;
  for (auto q : s.at(c)) out.push_back(lsc.xi().name(c, q));
  return out;
}

json selection_json(const topos::XiSubset& s, const topos::LocalStateClassifier& lsc) {
  json sel = json::object();
  for (topos::ObjectId c = 0; c < static_cast<topos::ObjectId>(lsc.site().object_count()); ++c)
    sel[lsc.site().object_name(c)] = names_at(s, lsc, c);
  return sel;
}

int export_fixtures(const std::filesystem::path& dir, const Settings& settings) {
  std::filesystem::create_directories(dir);
  const auto groups = topos::bundled_groups();
  for (const auto& [name, site] : topos::bundled_sites()) {
    const bool is_group = std::any_of(groups.begin(), groups.end(), [&](const auto& g) { return g.name == name; });
    if (!is_group) write_json(dir / (name + ".category.json"), topos::io::category_to_json(*site));
  }
  for (const auto& [name, g] : groups) write_json(dir / (name + ".group.json"), topos::io::group_to_json(g));
  for (const auto& fx : topos::bundled_regexes())
    write_json(dir / (fx.name + ".regex.json"), json{{"regex", fx.regex}, {"alphabet", fx.alphabet}});
  write_json(dir / "ab_star.dfa.json", topos::io::dfa_to_json(topos::words::compile_regex("(ab)*", "ab")));
  write_json(dir / "ends_in_a.dfa.json", topos::io::dfa_to_json(topos::words::compile_regex("(a|b)*a", "ab")));

  const auto graph = topos::LocalStateClassifier::build(topos::make_site(topos::parallel_arrows_category()), settings.budget);
  write_json(dir / "graph_top.filter.json",
             json{{"category", "graph.category.json"}, {"selection", selection_json(topos::top_filter(graph), graph)}});
  const auto e = graph.site().object("E");
  const topos::Element not_loop = graph.top(e) == 0 ? 1 : 0;
  write_json(dir / "graph_not_loop.filter.json",
             json{{"category", "graph.category.json"},
                  {"expect", "non-filter"},
                  {"selection", {{"V", {graph.xi().name(graph.site().object("V"), 0)}},
                                 {"E", {graph.xi().name(e, not_loop)}}}}});
  const auto idem = topos::LocalStateClassifier::build(topos::make_site(topos::idempotent_monoid_category()), settings.budget);
  write_json(dir / "idempotent_top.filter.json",
             json{{"category", "idempotent.category.json"}, {"selection", selection_json(topos::top_filter(idem), idem)}});
  std::cout << "wrote fixtures to " << dir.string() << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local state classifiers of finite presheaf topoi"};
  app.require_subcommand(1);
  Settings settings;
  if (const char* env = std::getenv("TOPOS_LSC_BUDGET")) {
    const std::string text = env;
    std::size_t used = 0;
    try {
      settings.budget = std::stoul(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || settings.budget == 0)
      return fail(kInputError, "TOPOS_LSC_BUDGET must be a positive integer, got '" + text + "'", settings);
  }
  app.add_option("--budget", settings.budget, "Enumeration cap on the elements of y(c) (env TOPOS_LSC_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", settings.format, "Output format")->check(CLI::IsMember({"human", "machine"}));

  std::string path;
  auto* lsc = app.add_subcommand("lsc", "Compute Xi, its action and xi_Xi for a category file");
  lsc->add_option("file", path, "Category JSON file")->required();

  auto* group = app.add_subcommand("group", "Subgroup lattice and normalization for a group file");
  group->add_option("file", path, "Group JSON file")->required();

  std::string regex, dfa_path, alphabet;
  auto* words = app.add_subcommand("words", "Right congruences and syntactic monoid of a regular language");
  auto* regex_opt = words->add_option("--regex", regex, "Regular expression (| * ( ) #e #0)");
  auto* dfa_opt = words->add_option("--dfa", dfa_path, "DFA JSON file");
  regex_opt->excludes(dfa_opt);
  words->add_option("--alphabet", alphabet, "Alphabet symbols");

  std::string suite = "all";
  std::optional<std::string> fixtures;
  auto* verify = app.add_subcommand("verify", "Run invariant suites on bundled and user fixtures");
  verify->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember(topos::suite_names()));
  verify->add_option("--fixtures", fixtures, "Directory of extra fixtures");

  auto* exporter = app.add_subcommand("export-fixtures", "Write the bundled fixtures as JSON files");
  exporter->add_option("dir", path, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (lsc->parsed()) {
      const auto cat = topos::FiniteCategory::validate(topos::io::category_from_json(topos::io::read_json_file(path)));
      return emit(topos::lsc_report(topos::LocalStateClassifier::build(topos::make_site(cat), settings.budget)), settings);
    }
    if (group->parsed()) {
      return emit(topos::group_report(topos::io::group_from_json(topos::io::read_json_file(path)), settings.budget),
                  settings);
    }
    if (words->parsed()) {
      if (regex_opt->count() == 0 && dfa_opt->count() == 0)
        return fail(kInputError, "words needs --regex or --dfa", settings);
      if (regex_opt->count()) {
        if (words->get_option("--alphabet")->count() == 0)
          return fail(kInputError, "--regex needs --alphabet", settings);
        return emit(topos::words_report(topos::words::compile_regex(regex, alphabet), regex), settings);
      }
      const auto d = topos::io::dfa_from_json(topos::io::read_json_file(dfa_path));
      if (words->get_option("--alphabet")->count() && alphabet != d.alphabet())
        throw topos::Error(topos::ErrorCode::AlphabetMismatch,
                           "--alphabet '" + alphabet + "' but the DFA uses '" + d.alphabet() + "'");
      return emit(topos::words_report(d, dfa_path), settings);
    }
    if (verify->parsed()) {
      topos::VerifyOptions options;
      options.budget = settings.budget;
      if (fixtures) options.fixtures = *fixtures;
      topos::Report report{"verify", json{{"suite", suite}}, topos::run_suite(suite, options)};
      std::size_t failed = 0;
      for (const auto& v : report.verdicts.verdicts) failed += v.pass ? 0 : 1;
      report.payload["checks"] = report.verdicts.verdicts.size();
      report.payload["failed"] = failed;
      return emit(report, settings);
    }
    return export_fixtures(path, settings);
  } catch (const topos::BudgetExceeded& e) {
    return fail(kBudget, e.what(), settings);
  } catch (const topos::Error& e) {
    return fail(kInputError, e.what(), settings);
  } catch (const json::exception& e) {
    return fail(kInputError, std::string("malformed input: ") + e.what(), settings);
  } catch (const std::exception& e) {
    return fail(kInputError, e.what(), settings);
  }
}
