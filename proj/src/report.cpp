#include "topos/report.hpp"

#include <sstream>

#include "topos/normalize.hpp"
#include "topos/words/monoid.hpp"
#include "topos/words/right_congruence.hpp"

namespace topos {

using io::json;

namespace {

std::string show_word(const std::string& w) { return w.empty() ? "#e" : w; }

void render_value(std::ostringstream& out, const json& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) {
      if (item.is_structured() && !item.empty() &&
          !(item.is_array() && std::all_of(item.begin(), item.end(), [](const json& x) { return x.is_primitive(); }))) {
        out << pad << key << ":\n";
        render_value(out, item, indent + 2);
      } else {
        out << pad << key << ": " << item.dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (item.is_object()) {
        out << pad << "-\n";
        render_value(out, item, indent + 2);
      } else {
        out << pad << "- " << item.dump() << "\n";
      }
    }
  } else {
    out << pad << v.dump() << "\n";
  }
}

}  // namespace

json to_json(const Report& report) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["kind"] = report.kind;
  doc["payload"] = report.payload;
  doc["verdicts"] = json::array();
  for (const auto& v : report.verdicts.verdicts)
    doc["verdicts"].push_back({{"check", v.check}, {"pass", v.pass}, {"witness", v.witness}});
  return doc;
}

std::string render_machine(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string render_human(const Report& report) {
  std::ostringstream out;
  out << "== " << report.kind << " ==\n";
  render_value(out, report.payload, 0);
  if (!report.verdicts.verdicts.empty()) out << "verdicts:\n";
  for (const auto& v : report.verdicts.verdicts) {
    out << "  " << (v.pass ? "PASS " : "FAIL ") << v.check;
    if (!v.witness.empty()) out << "  [" << v.witness << "]";
    out << "\n";
  }
  return out.str();
}

Report lsc_report(const LocalStateClassifier& lsc) {
  Report r{"lsc", json::object(), {}};
  const auto& cat = lsc.site();
  const auto& xi = lsc.xi();
  const auto normalizer = normalization_operator(lsc);

  json objects = json::object();
  json meets = json::object();
  json order = json::object();
  json norm = json::object();
  json top = json::object();
  for (std::size_t c = 0; c < cat.object_count(); ++c) {
    const auto obj = static_cast<ObjectId>(c);
    const auto& name = cat.object_name(obj);
    json list = json::array();
    for (std::size_t q = 0; q < lsc.size(obj); ++q) {
      const auto blocks = lsc.congruence(obj, static_cast<Element>(q)).blocks(cat);
      json per = json::object();
      for (std::size_t d = 0; d < blocks.size(); ++d) {
        json bl = json::array();
        for (const auto& block : blocks[d]) {
          json names = json::array();
          for (MorphismId m : block) names.push_back(cat.morphism(m).name);
          bl.push_back(names);
        }
        per[cat.object_name(static_cast<ObjectId>(d))] = bl;
      }
      list.push_back({{"index", q}, {"name", xi.name(obj, static_cast<Element>(q))}, {"blocks", per}});
    }
    objects[name] = list;
    top[name] = lsc.top(obj);

    json mt = json::array(), lt = json::array(), nm = json::array();
    for (std::size_t a = 0; a < lsc.size(obj); ++a) {
      json mrow = json::array();
      std::string lrow;
      for (std::size_t b = 0; b < lsc.size(obj); ++b) {
        mrow.push_back(lsc.meet(obj, static_cast<Element>(a), static_cast<Element>(b)));
        lrow += lsc.leq(obj, static_cast<Element>(a), static_cast<Element>(b)) ? '1' : '0';
      }
      mt.push_back(mrow);
      lt.push_back(lrow);
      nm.push_back(normalizer(obj, static_cast<Element>(a)));
    }
    meets[name] = mt;
    order[name] = lt;
    norm[name] = nm;
  }

  json action = json::object();
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    const auto span = xi.action(static_cast<MorphismId>(f));
    action[cat.morphism(static_cast<MorphismId>(f)).name] = std::vector<Element>(span.begin(), span.end());
  }

  r.payload["xi"] = objects;
  r.payload["top"] = top;
  r.payload["action"] = action;
  r.payload["normalization"] = norm;
  r.payload["meet"] = meets;
  r.payload["leq"] = order;
  r.payload["normalization_is_identity"] = is_identity_operator(normalizer);
  r.payload["normalization_is_top"] = is_top_operator(lsc, normalizer);

  r.verdicts.append(check_normalization_lemma(lsc));
  r.verdicts.append(verify_semilattice_compat(lsc, {}));
  std::string witness;
  for (std::size_t c = 0; c < cat.object_count() && witness.empty(); ++c)
    for (std::size_t q = 0; q < lsc.size(static_cast<ObjectId>(c)); ++q) {
      const auto& cong = lsc.congruence(static_cast<ObjectId>(c), static_cast<Element>(q));
      const auto quotient = quotient_presheaf(lsc.site_ptr(), cong);
      if (xi_component(lsc, quotient)(static_cast<ObjectId>(c), quotient_generator(cat, cong)) != static_cast<Element>(q)) {
        witness = xi.name(static_cast<ObjectId>(c), static_cast<Element>(q));
        break;
      }
    }
  r.verdicts.add("joint surjectivity: xi([id]) in y(c)/q is q", witness.empty(), witness);
  return r;
}

Report group_report(const FiniteGroup& g, std::size_t budget) {
  Report r{"group", json::object(), {}};
  const auto site = make_site(group_category(g));
  const auto lsc = LocalStateClassifier::build(site, budget);
  const SubgroupCongruenceBijection bij(g, site);
  const auto normalizer = normalization_operator(lsc);
  const auto subgroups = enumerate_subgroups(g);

  std::vector<std::string> labels;
  for (const auto& h : subgroups) labels.push_back(subgroup_label(g, h));
  auto label_of = [&](const Subgroup& h) {
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      if (subgroups[i] == h) return labels[i];
    return std::string("?");
  };

  json subs = json::array();
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    json members = json::array();
    for (int a : subgroups[i].members) members.push_back(g.name(a));
    subs.push_back({{"label", labels[i]},
                    {"order", subgroups[i].order()},
                    {"members", members},
                    {"normal", normalizer_direct(g, subgroups[i]).order() == g.order()}});
  }

  auto contains = [](const Subgroup& a, const Subgroup& b) {
    return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
  };
  json edges = json::array();
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    for (std::size_t j = 0; j < subgroups.size(); ++j) {
      if (i == j || !contains(subgroups[i], subgroups[j])) continue;
      bool covering = true;
      for (std::size_t k = 0; k < subgroups.size() && covering; ++k)
        if (k != i && k != j && contains(subgroups[i], subgroups[k]) && contains(subgroups[k], subgroups[j]))
          covering = false;
      if (covering) edges.push_back({labels[i], labels[j]});
    }

  json arrows = json::array();
  std::string mismatch;
  for (const auto& h : subgroups) {
    const auto image = bij.backward(lsc.congruence(0, normalizer(0, lsc.index_of(bij.forward(h)))));
    arrows.push_back({{"from", label_of(h)}, {"to", label_of(image)}});
    const auto direct = normalizer_direct(g, h);
    if (image != direct && mismatch.empty())
      mismatch = label_of(h) + ": xi_Xi gives " + label_of(image) + ", brute force gives " + label_of(direct);
  }

  const bool dedekind = is_dedekind(g);
  const bool top = is_top_operator(lsc, normalizer);
  r.payload["order"] = g.order();
  r.payload["elements"] = g.names();
  r.payload["subgroup_count"] = subgroups.size();
  r.payload["subgroups"] = subs;
  r.payload["lattice_edges"] = edges;
  r.payload["normalization_arrows"] = arrows;
  r.payload["dedekind"] = dedekind;
  r.payload["normalization_is_top"] = top;

  auto describe_witness = [&](const std::optional<XiWitness>& w) -> json {
    if (!w) return nullptr;
    return {{"first", label_of(bij.backward(lsc.congruence(0, w->first)))},
            {"second", label_of(bij.backward(lsc.congruence(0, w->second)))}};
  };
  r.payload["non_idempotence"] = describe_witness(find_non_idempotence(lsc, normalizer));
  r.payload["non_monotonicity"] = describe_witness(find_non_monotonicity(lsc, normalizer));

  r.verdicts.add("xi_Xi agrees with brute-force normalizers", mismatch.empty(), mismatch);
  r.verdicts.add("subgroups match quotient objects of y(*)", subgroups.size() == lsc.size(0),
                 subgroups.size() == lsc.size(0) ? "" : std::to_string(subgroups.size()) + " vs " + std::to_string(lsc.size(0)));
  r.verdicts.append(check_normalization_lemma(lsc));
  r.verdicts.add("Dedekind iff xi_Xi is constantly top", dedekind == top,
                 dedekind == top ? "" : std::string("dedekind=") + (dedekind ? "yes" : "no"));
  return r;
}

Report words_report(const words::Dfa& d, const std::string& source) {
  using namespace words;
  Report r{"words", json::object(), {}};
  const auto min = minimize(d);
  const auto nerode = nerode_congruence(min);
  const auto syn = syntactic_congruence(min);
  const auto orbit = orbit_meet_check(nerode);
  const auto normalized = words_normalization_operator(nerode);

  if (!source.empty()) r.payload["regex"] = source;
  r.payload["alphabet"] = min.alphabet();
  r.payload["minimal_dfa"] = io::dfa_to_json(min);
  r.payload["nerode_index"] = nerode.index();
  json reps = json::array();
  for (const auto& w : nerode.representatives()) reps.push_back(show_word(w));
  r.payload["nerode_representatives"] = reps;

  json witnesses = json::array();
  for (std::size_t m = 0; m < syn.monoid.order(); ++m) witnesses.push_back(show_word(syn.monoid.witness(static_cast<int>(m))));
  r.payload["syntactic_monoid"] = {{"order", syn.monoid.order()}, {"elements", witnesses}, {"table", syn.monoid.table()}};
  r.payload["orbit_size"] = orbit.orbit_size;
  r.payload["orbit_meet_index"] = orbit.meet.index();
  r.payload["normalization_index"] = normalized.index();

  r.verdicts.add("Myhill-Nerode: Nerode index equals minimal state count", nerode.index() == min.states(),
                 nerode.index() == min.states() ? "" : std::to_string(nerode.index()) + " vs " + std::to_string(min.states()));
  r.verdicts.add("orbit meet of the Nerode congruence equals the syntactic congruence", orbit.equal_to_syntactic,
                 orbit.equal_to_syntactic ? "" : "indices " + std::to_string(orbit.meet.index()) + " and " +
                                                     std::to_string(orbit.syntactic.index()));
  auto order_verdict = [&](const std::string& check, const RightCongruence& a, const RightCongruence& b) {
    const auto cex = leq_counterexample(a, b);
    r.verdicts.add(check, !cex, cex ? show_word(cex->first) + " and " + show_word(cex->second) + " are separated" : "");
  };
  order_verdict("syntactic congruence refines the Nerode congruence", syn.congruence, nerode);
  order_verdict("normalization lemma: rc <= xi_Xi(rc)", nerode, normalized);
  return r;
}

}  // namespace topos
