#include "finrep/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "finrep/error.hpp"

namespace finrep {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json atom_names(const RaSpec& spec, const std::vector<AtomId>& atoms) {
  Json out = Json::array();
  for (auto a : atoms) out.push_back(spec.atom_name(a));
  return out;
}

}  // namespace

ColoredPartition parse_partition(std::string_view text, const GroupSpec& group, const RaSpec& spec) {
  std::vector<ElementSet> sets(spec.diversity_count(), ElementSet(group));
  ElementSet seen(group);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'atom element'");
    }
    const auto atom_name = line.substr(0, space);
    const auto elem_text = trim(line.substr(space));
    const auto atom = spec.find_atom(atom_name);
    if (!atom) throw ParseError("line " + std::to_string(line_no) + ": unknown atom '" + std::string(atom_name) + "'");
    if (atom->is_identity()) {
      throw ParseError("line " + std::to_string(line_no) + ": the identity atom cannot be assigned elements");
    }
    Element e;
    try {
      e = group.parse_element(elem_text);
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
    }
    if (e.index == 0) {
      throw StructuralError(StructuralError::Kind::ZeroAssigned, "line " + std::to_string(line_no) +
                                                                     ": the group zero cannot be assigned to an atom");
    }
    if (seen.contains(e)) {
      throw StructuralError(StructuralError::Kind::Overlap,
                            "line " + std::to_string(line_no) + ": element " + group.format(e) + " assigned twice");
    }
    seen.insert(e);
    sets[atom->index - 1].insert(e);
  }
  return ColoredPartition(group, std::move(sets));
}

std::string format_partition(const ColoredPartition& part, const RaSpec& spec) {
  std::ostringstream out;
  out << "# group " << part.group().describe() << ", algebra " << spec.name() << "\n";
  for (auto atom : spec.diversity_atoms()) {
    part.set(atom).for_each([&](Element e) { out << spec.atom_name(atom) << ' ' << part.group().format(e) << "\n"; });
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json to_json(const RaSpec& spec) {
  Json out;
  out["name"] = spec.name();
  Json atoms = Json::array({"1'"});
  for (auto a : spec.diversity_atoms()) atoms.push_back(spec.atom_name(a));
  out["atoms"] = atoms;
  Json allowed = Json::array();
  for (const auto& c : spec.allowed_cycles()) allowed.push_back(spec.cycle_label(c));
  Json forbidden = Json::array();
  for (const auto& c : spec.forbidden_cycles()) forbidden.push_back(spec.cycle_label(c));
  out["allowed_cycles"] = allowed;
  out["forbidden_cycles"] = forbidden;
  Json profiles = Json::array();
  const auto div = spec.diversity_atoms();
  for (std::size_t a = 0; a < div.size(); ++a) {
    for (std::size_t b = a; b < div.size(); ++b) {
      const auto p = spec.required_sumset_profile(div[a], div[b]);
      profiles.push_back({{"j", spec.atom_name(div[a])},
                          {"k", spec.atom_name(div[b])},
                          {"atoms", atom_names(spec, p.atoms)},
                          {"include_zero", p.include_zero}});
    }
  }
  out["sumset_profiles"] = profiles;
  return out;
}

Json to_json(const VerificationReport& report, const RaSpec& spec, const GroupSpec* group) {
  const bool sumset = report.method == VerificationReport::Method::Sumset;
  auto point = [&](std::uint32_t p) -> Json {
    if (group != nullptr) return group->format(Element{p});
    return p;
  };
  Json out;
  out["verdict"] = report.accepted ? "accept" : "reject";
  out["method"] = sumset ? "sumset" : "bruteforce";
  out["algebra"] = spec.name();
  if (group != nullptr) out["group"] = group->describe();
  out["violation_count"] = report.violation_count;
  out["missing_witness_count"] = report.missing_count;
  out["forbidden_realized_count"] = report.forbidden_count;
  out["empty_atom_count"] = report.empty_atom_count;
  out["stopped_early"] = report.stopped_early;
  if (sumset) {
    Json pairs = Json::array();
    for (const auto& p : report.pairs) {
      pairs.push_back({{"j", spec.atom_name(p.j)},
                       {"k", spec.atom_name(p.k)},
                       {"expected", atom_names(spec, p.expected.atoms)},
                       {"include_zero", p.expected.include_zero},
                       {"actual_size", p.actual_size},
                       {"zero_present", p.zero_present},
                       {"realized", atom_names(spec, p.realized)},
                       {"matches", p.matches}});
    }
    out["pairs"] = pairs;
  } else {
    Json cycles = Json::array();
    for (const auto& c : report.cycles) {
      cycles.push_back({{"cycle", spec.cycle_label(c.cycle[0], c.cycle[1], c.cycle[2])},
                        {"allowed", c.allowed},
                        {"edges_checked", c.edges_checked},
                        {"failures", c.failures}});
    }
    out["cycles"] = cycles;
  }
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json j;
    j["kind"] = to_string(v.kind);
    if (v.kind == ViolationKind::EmptyAtom) {
      j["atom"] = spec.atom_name(v.cycle[0]);
    } else {
      j["cycle"] = Json::array({spec.atom_name(v.cycle[0]), spec.atom_name(v.cycle[1]), spec.atom_name(v.cycle[2])});
      if (sumset) {
        j["element"] = point(v.points.at(0));
      } else {
        Json pts = Json::array();
        for (auto p : v.points) pts.push_back(point(p));
        j[v.points.size() == 2 ? "edge" : "triangle"] = pts;
      }
    }
    violations.push_back(j);
  }
  out["violations"] = violations;
  return out;
}

Json to_json(const CosetScheme& scheme) {
  Json out;
  out["p"] = scheme.p();
  out["m"] = scheme.m();
  out["g"] = scheme.generator();
  out["coset_size"] = (scheme.p() - 1) / scheme.m();
  out["symmetric"] = scheme.symmetric();
  Json cosets = Json::array();
  for (const auto& x : scheme.cosets()) {
    Json members = Json::array();
    x.for_each([&](Element e) { members.push_back(e.index); });
    cosets.push_back(members);
  }
  out["cosets"] = cosets;
  auto triples = [](const std::vector<CosetTriple>& ts) {
    Json arr = Json::array();
    for (const auto& t : ts) arr.push_back(Json::array({t[0], t[1], t[2]}));
    return arr;
  };
  if (scheme.symmetric()) {
    out["allowed"] = triples(scheme.allowed_multisets());
    out["forbidden"] = triples(scheme.forbidden_multisets());
  } else {
    out["cycle_structure"] = triples(scheme.cycle_structure());
  }
  return out;
}

Json to_json(const BoundResult& bound) {
  return Json{{"n", bound.n},
              {"universe_size", bound.binomial.str()},
              {"log_bound", bound.log_bound},
              {"below_one", bound.below_one}};
}

Json to_json(const McReport& report) {
  Json out;
  out["n"] = report.n;
  out["points"] = report.points;
  out["trials"] = report.trials;
  out["seed"] = report.seed;
  out["accepted"] = report.accepted;
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json failures = Json::object();
    for (const auto& [label, count] : r.failures_by_cycle) failures[label] = count;
    records.push_back({{"trial", r.index},
                       {"seed", r.seed},
                       {"verdict", r.accepted ? "accept" : "reject"},
                       {"missing_witness", r.missing},
                       {"forbidden_realized", r.forbidden},
                       {"empty_atoms", r.empty_atoms},
                       {"failures_by_cycle", failures}});
  }
  out["records"] = records;
  return out;
}

Json to_json(const PrecheckResult& r) {
  return Json{{"k", r.k},
              {"t", r.t},
              {"x_size", r.x_size},
              {"c_size", r.c_size},
              {"x_plus_x_is_g", r.x_plus_x_is_g},
              {"x_plus_c_is_g_minus_zero", r.x_plus_c_is_nonzero},
              {"c_plus_c_is_g_minus_c", r.c_plus_c_is_complement},
              {"passed", r.passed()}};
}

Json to_json(const FixtureReport& r) {
  const GroupSpec g = GroupSpec::elementary2(r.k);
  const RaSpec spec = builtin_52_65();
  Json out;
  out["verdict"] = r.passed() ? "accept" : "reject";
  out["k"] = r.k;
  out["t"] = r.t;
  out["listed"] = r.listed;
  Json bad = Json::array();
  for (auto e : r.bad_weight) bad.push_back(g.format(e));
  out["weights"] = {{"ok", r.weights_ok}, {"bad", bad}};
  out["closure"] = {{"ok", r.closure_ok}, {"span_order", r.span_order}};
  if (r.sumsets) {
    out["sumsets"] = to_json(*r.sumsets, spec, &g);
  } else {
    out["sumsets"] = nullptr;
  }
  Json classes;
  classes["ok"] = r.classes_ok;
  classes["count"] = r.class_count;
  Json sizes = Json::array();
  for (auto s : r.class_sizes) sizes.push_back(s);
  classes["sizes"] = sizes;
  if (r.transitivity_witness) {
    const auto& w = *r.transitivity_witness;
    classes["witness"] = Json::array({g.format(Element{w[0]}), g.format(Element{w[1]}), g.format(Element{w[2]})});
  }
  out["b_classes"] = classes;
  return out;
}

Json to_json(const SearchOutcome& o) {
  const GroupSpec g = GroupSpec::elementary2(o.k);
  Json out;
  out["verdict"] = o.success() ? "accept" : "reject";
  out["k"] = o.k;
  out["t"] = o.t;
  out["target_order"] = o.target_order;
  out["order"] = o.order;
  Json basis = Json::array();
  for (auto e : o.basis) basis.push_back(g.format(e));
  out["basis"] = basis;
  Json hist = Json::object();
  for (const auto& [order, count] : o.stats.order_histogram) hist[std::to_string(order)] = count;
  out["stats"] = {{"restarts_run", o.stats.restarts_run},
                  {"best_restart", o.stats.best_restart},
                  {"stop_reason", o.stats.stop_reason},
                  {"order_histogram", hist}};
  out["report"] = to_json(o.report, builtin_52_65(), &g);
  return out;
}

}  // namespace finrep
