// finrep: construct and verify finite representations of 52_65 and 59_65.
//
// Exit codes: 0 accept/success, 1 reject, 2 usage or structural error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "finrep/algebra.hpp"
#include "finrep/comer.hpp"
#include "finrep/error.hpp"
#include "finrep/gf2_search.hpp"
#include "finrep/io.hpp"
#include "finrep/johnson.hpp"
#include "finrep/verify.hpp"

namespace {

using namespace finrep;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct Globals {
  std::string format = "table";
};

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string atoms_list(const RaSpec& spec, const std::vector<AtomId>& atoms) {
  std::string s = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i != 0) s += ",";
    s += spec.atom_name(atoms[i]);
  }
  return s + "}";
}

void print_report_table(const VerificationReport& r, const RaSpec& spec, const GroupSpec* group) {
  const bool sumset = r.method == VerificationReport::Method::Sumset;
  std::cout << (sumset ? "sumset" : "brute-force") << " verification against " << spec.name() << ": "
            << (r.accepted ? "ACCEPT" : "REJECT") << "\n";
  if (sumset) {
    for (const auto& p : r.pairs) {
      std::cout << "  " << spec.atom_name(p.j) << "+" << spec.atom_name(p.k) << "  expected "
                << atoms_list(spec, p.expected.atoms) << (p.expected.include_zero ? " + 0" : "") << "  realized "
                << atoms_list(spec, p.realized) << (p.zero_present ? " + 0" : "") << "  |sum|=" << p.actual_size
                << (p.matches ? "  ok" : "  MISMATCH") << "\n";
    }
  } else {
    for (const auto& c : r.cycles) {
      if (c.edges_checked == 0 && c.failures == 0) continue;
      std::cout << "  " << spec.cycle_label(c.cycle[0], c.cycle[1], c.cycle[2]) << (c.allowed ? " allowed  " : " forbidden")
                << "  edges " << c.edges_checked << "  failures " << c.failures << "\n";
    }
  }
  std::cout << "  violations: " << r.violation_count << " (missing " << r.missing_count << ", forbidden "
            << r.forbidden_count << ", empty atoms " << r.empty_atom_count << ")"
            << (r.stopped_early ? ", stopped at first" : "") << "\n";
  for (const auto& v : r.violations) {
    std::cout << "    " << to_string(v.kind);
    if (v.kind == ViolationKind::EmptyAtom) {
      std::cout << " " << spec.atom_name(v.cycle[0]) << "\n";
      continue;
    }
    std::cout << " " << spec.cycle_label(v.cycle[0], v.cycle[1], v.cycle[2]) << " at";
    for (auto p : v.points) std::cout << " " << (group != nullptr ? group->format(Element{p}) : std::to_string(p));
    std::cout << "\n";
  }
}

RaSpec load_algebra(const std::string& name, const std::string& spec_path) {
  if (!spec_path.empty()) return parse_spec(read_file(spec_path));
  return builtin_algebra(name);
}

std::uint64_t effective_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------

int cmd_show_algebra(const Globals& g, const std::string& name, const std::string& spec_path) {
  const RaSpec spec = load_algebra(name, spec_path);
  if (g.format == "json") {
    emit_json(to_json(spec));
    return kExitAccept;
  }
  std::cout << "algebra " << spec.name() << "\natoms: 1'";
  for (auto a : spec.diversity_atoms()) std::cout << " " << spec.atom_name(a);
  std::cout << "\nallowed cycles:  ";
  for (const auto& c : spec.allowed_cycles()) std::cout << " " << spec.cycle_label(c);
  std::cout << "\nforbidden cycles:";
  for (const auto& c : spec.forbidden_cycles()) std::cout << " " << spec.cycle_label(c);
  std::cout << "\nrequired sumsets:\n";
  const auto div = spec.diversity_atoms();
  for (std::size_t a = 0; a < div.size(); ++a) {
    for (std::size_t b = a; b < div.size(); ++b) {
      const auto p = spec.required_sumset_profile(div[a], div[b]);
      std::cout << "  " << spec.atom_name(div[a]) << "+" << spec.atom_name(div[b]) << " = "
                << atoms_list(spec, p.atoms) << (p.include_zero ? " + 0" : "") << "\n";
    }
  }
  return kExitAccept;
}

struct VerifyArgs {
  std::string algebra = "52_65";
  std::string spec_path;
  std::string group;
  std::string partition;
  bool bruteforce = false;
  bool full_scan = false;
  std::size_t max_violations = 100;
  unsigned threads = 1;
};

int cmd_verify_group_rep(const Globals& g, const VerifyArgs& a) {
  const RaSpec spec = load_algebra(a.algebra, a.spec_path);
  const GroupSpec group = parse_group(a.group);
  const ColoredPartition part = parse_partition(read_file(a.partition), group, spec);
  VerifyOptions opts;
  opts.early_exit = !a.full_scan;
  opts.max_violations = a.max_violations;
  opts.threads = a.threads;

  const VerificationReport sums = verify_sumsets(spec, part, opts);
  std::optional<VerificationReport> brute;
  if (a.bruteforce) brute = verify_bruteforce(spec, cayley_coloring(part), opts);
  const bool accepted = sums.accepted && (!brute || brute->accepted);

  if (g.format == "json") {
    Json out;
    out["verdict"] = accepted ? "accept" : "reject";
    out["sumset"] = to_json(sums, spec, &group);
    if (brute) out["bruteforce"] = to_json(*brute, spec, &group);
    emit_json(out);
  } else {
    print_report_table(sums, spec, &group);
    if (brute) print_report_table(*brute, spec, &group);
    std::cout << "verdict: " << (accepted ? "accept" : "reject") << "\n";
  }
  return accepted ? kExitAccept : kExitReject;
}

void print_scheme_table(const CosetScheme& s) {
  std::cout << "p = " << s.p() << ", m = " << s.m() << ", g = " << s.generator() << ", |X_i| = " << (s.p() - 1) / s.m()
            << ", symmetric = " << (s.symmetric() ? "yes" : "no") << "\n";
  auto print = [](const char* label, const std::vector<CosetTriple>& ts) {
    std::cout << label << " (" << ts.size() << "):";
    for (const auto& t : ts) std::cout << " [" << t[0] << "," << t[1] << "," << t[2] << "]";
    std::cout << "\n";
  };
  if (s.symmetric()) {
    print("forbidden", s.forbidden_multisets());
    print("allowed", s.allowed_multisets());
  } else {
    print("cycle structure (ordered, X_i in X_j + X_k)", s.cycle_structure());
  }
}

int cmd_comer(const Globals& g, std::uint64_t p, unsigned m, std::optional<std::uint64_t> gen, bool require_symmetric,
              std::uint64_t sweep_max) {
  if (sweep_max == 0) {
    const CosetScheme s = build_scheme(p, m, gen, require_symmetric);
    if (g.format == "json") {
      emit_json(to_json(s));
    } else {
      print_scheme_table(s);
    }
    return kExitAccept;
  }
  Json rows = Json::array();
  for (std::uint64_t q = 3; q <= sweep_max; ++q) {
    if (!is_prime(q) || (q - 1) % m != 0) continue;
    const CosetScheme s = build_scheme(q, m);
    if (require_symmetric && !s.symmetric()) continue;
    if (g.format == "json") {
      Json j = to_json(s);
      j.erase("cosets");
      rows.push_back(j);
    } else {
      print_scheme_table(s);
    }
  }
  if (g.format == "json") emit_json(Json{{"m", m}, {"schemes", rows}});
  return kExitAccept;
}

int cmd_build_59(const Globals& g, std::uint64_t p, const std::string& out_path, bool bruteforce) {
  const CosetScheme scheme = build_scheme(p, 8, std::nullopt, true);
  const ColoredPartition part = build_59_65_partition(scheme);
  const RaSpec spec = builtin_59_65();
  const GroupSpec& group = part.group();

  const auto& A = part.set(spec.atom("a"));
  const auto& B = part.set(spec.atom("b"));
  const auto& C = part.set(spec.atom("c"));
  const ElementSet all = ElementSet::full(group);
  ElementSet units = all;
  units.erase(Element{0});
  ElementSet zero_a = A;
  zero_a.insert(Element{0});
  const std::vector<std::pair<std::string, bool>> identities = {
      {"A+A = Z/p", sumset(A, A) == all},     {"A+B = (Z/p)^x", sumset(A, B) == units},
      {"A+C = (Z/p)^x", sumset(A, C) == units}, {"B+B = {0} u A", sumset(B, B) == zero_a},
      {"B+C = A u C", sumset(B, C) == (A | C)}, {"C+C = Z/p", sumset(C, C) == all},
  };
  bool identities_ok = true;
  for (const auto& [_, ok] : identities) identities_ok = identities_ok && ok;

  const VerificationReport sums = verify_sumsets(spec, part);
  std::optional<VerificationReport> brute;
  if (bruteforce) brute = verify_bruteforce(spec, cayley_coloring(part));
  const bool accepted = identities_ok && sums.accepted && (!brute || brute->accepted);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + out_path);
    out << format_partition(part, spec);
  }

  if (g.format == "json") {
    Json j;
    j["verdict"] = accepted ? "accept" : "reject";
    j["p"] = p;
    j["g"] = scheme.generator();
    Json ids = Json::object();
    for (const auto& [label, ok] : identities) ids[label] = ok;
    j["identities"] = ids;
    j["sumset"] = to_json(sums, spec, &group);
    if (brute) j["bruteforce"] = to_json(*brute, spec, &group);
    emit_json(j);
  } else {
    std::cout << "59_65 over Z/" << p << " with A = X1..X5, B = X0, C = X6 u X7 (g = " << scheme.generator() << ")\n";
    for (const auto& [label, ok] : identities) std::cout << "  " << std::left << std::setw(16) << label << (ok ? "holds" : "FAILS") << "\n";
    print_report_table(sums, spec, &group);
    if (brute) print_report_table(*brute, spec, &group);
    if (!out_path.empty()) std::cout << "partition written to " << out_path << "\n";
    std::cout << "verdict: " << (accepted ? "accept" : "reject") << "\n";
  }
  return accepted ? kExitAccept : kExitReject;
}

int cmd_johnson_bound(const Globals& g, unsigned max_n) {
  if (max_n < 3) throw Error("--max-n must be at least 3");
  const unsigned minimal = minimal_sufficient_n();
  if (g.format == "json") {
    Json rows = Json::array();
    for (unsigned n = 3; n <= max_n; ++n) rows.push_back(to_json(probability_bound(n)));
    emit_json(Json{{"rows", rows}, {"minimal_sufficient_n", minimal}});
    return kExitAccept;
  }
  std::cout << std::setw(4) << "n" << std::setw(26) << "C(3n-4,n)" << std::setw(16) << "log bound" << "  below_one\n";
  for (unsigned n = 3; n <= max_n; ++n) {
    const BoundResult b = probability_bound(n);
    std::ostringstream lb;
    lb << std::fixed << std::setprecision(6) << b.log_bound;
    std::cout << std::setw(4) << n << std::setw(26) << b.binomial.str() << std::setw(16) << lb.str() << "  "
              << (b.below_one ? "yes" : "no") << "\n";
  }
  std::cout << "smallest sufficient n: " << minimal << "\n";
  return kExitAccept;
}

int cmd_johnson_mc(const Globals& g, unsigned n, std::uint64_t trials, std::optional<std::uint64_t> seed_opt,
                   std::uint64_t size_guard, unsigned threads) {
  const std::uint64_t seed = effective_seed(seed_opt);
  McOptions opts;
  opts.size_guard = size_guard;
  opts.threads = threads;
  const McReport report = mc_trial(n, trials, seed, opts);
  if (g.format == "json") {
    emit_json(to_json(report));
    return kExitAccept;
  }
  std::cout << "n = " << report.n << ", points = " << report.points << ", trials = " << report.trials
            << ", seed = " << report.seed << "\n";
  for (const auto& r : report.records) {
    std::cout << "  trial " << r.index << ": " << (r.accepted ? "accept" : "reject") << "  missing " << r.missing
              << "  forbidden " << r.forbidden;
    for (const auto& [label, count] : r.failures_by_cycle) std::cout << "  " << label << ":" << count;
    std::cout << "\n";
  }
  std::cout << "accepted " << report.accepted << " of " << report.trials << "\n";
  return kExitAccept;
}

struct SearchArgs {
  unsigned k = 10;
  std::optional<unsigned> t;
  std::optional<std::uint32_t> target;
  std::optional<std::uint64_t> seed;
  std::uint64_t restarts = 100;
  double time_budget = 0;
  unsigned backtrack = 0;
  std::string init_fixture;
  std::string order = "weight";
  unsigned threads = 1;
};

int cmd_search_gf2(const Globals& g, const SearchArgs& a) {
  SearchConfig cfg;
  cfg.k = a.k;
  cfg.t = a.t;
  cfg.target_order = a.target;
  cfg.seed = effective_seed(a.seed);
  cfg.restart_budget = a.restarts;
  cfg.time_budget = a.time_budget;
  cfg.backtrack = a.backtrack;
  cfg.threads = a.threads;
  cfg.order = a.order == "random" ? SearchConfig::CandidateOrder::Random : SearchConfig::CandidateOrder::WeightAscending;
  if (!a.init_fixture.empty()) {
    unsigned k = 0;
    cfg.initial_basis = parse_fixture(read_file(a.init_fixture), &k);
    if (k != a.k) throw ParseError("initial fixture has length " + std::to_string(k) + ", expected " + std::to_string(a.k));
  }
  const SearchOutcome o = search(cfg);
  const PrecheckResult pre = precheck(o.k, o.t);
  if (g.format == "json") {
    Json j = to_json(o);
    j["seed"] = cfg.seed;
    j["precheck"] = to_json(pre);
    emit_json(j);
  } else {
    const GroupSpec group = GroupSpec::elementary2(o.k);
    std::cout << "k = " << o.k << ", t = " << o.t << ", seed = " << cfg.seed << ", target |H| = " << o.target_order
              << "\n";
    std::cout << "precheck: X+X=G " << pre.x_plus_x_is_g << ", X+C=G\\0 " << pre.x_plus_c_is_nonzero << ", C+C=G\\C "
              << pre.c_plus_c_is_complement << "\n";
    std::cout << "best |H| = " << o.order << " after " << o.stats.restarts_run << " restarts (best restart "
              << o.stats.best_restart << ", stop: " << o.stats.stop_reason << ")\nbasis:";
    for (auto e : o.basis) std::cout << " " << group.format(e);
    std::cout << "\n";
    print_report_table(o.report, builtin_52_65(), &group);
    std::cout << "verdict: " << (o.success() ? "accept" : "reject") << "\n";
  }
  return o.success() ? kExitAccept : kExitReject;
}

int cmd_validate_fixture(const Globals& g, const std::string& path, std::optional<unsigned> t) {
  unsigned k = 0;
  const auto elements = parse_fixture(read_file(path), &k);
  const FixtureReport r = validate_fixture(k, elements, t);
  if (g.format == "json") {
    emit_json(to_json(r));
  } else {
    const GroupSpec group = GroupSpec::elementary2(k);
    std::cout << "fixture " << path << ": " << r.listed << " elements of (Z/2)^" << k << ", t = " << r.t << "\n";
    std::cout << "  weights in [1," << r.t << "]: " << (r.weights_ok ? "yes" : "no");
    for (auto e : r.bad_weight) std::cout << " " << group.format(e);
    std::cout << "\n  closure: span order " << r.span_order << (r.closure_ok ? ", list + 0 is a subgroup" : ", NOT closed")
              << "\n";
    if (r.sumsets) {
      print_report_table(*r.sumsets, builtin_52_65(), &group);
    } else {
      std::cout << "  sumset check skipped (weight check failed)\n";
    }
    std::cout << "  b-classes: " << r.class_count << (r.classes_ok ? " equal classes" : " (not as required)");
    if (!r.class_sizes.empty()) std::cout << " of size " << r.class_sizes.front();
    std::cout << "\nverdict: " << (r.passed() ? "accept" : "reject") << "\n";
  }
  return r.passed() ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite representations of the relation algebras 52_65 and 59_65"};
  app.require_subcommand(1);
  Globals globals;
  if (const char* env = std::getenv("FINREP_FORMAT")) globals.format = env;
  app.add_option("--format", globals.format, "Output format (env FINREP_FORMAT)")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  std::function<int()> action;

  std::string algebra = "52_65";
  std::string spec_path;
  auto* show = app.add_subcommand("show-algebra", "Print an algebra's cycles and required sumsets");
  show->add_option("--algebra", algebra, "Builtin algebra (52_65 or 59_65)")->capture_default_str();
  show->add_option("--spec", spec_path, "Spec file instead of a builtin")->check(CLI::ExistingFile);
  show->callback([&] { action = [&] { return cmd_show_algebra(globals, algebra, spec_path); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-group-rep", "Verify a group partition file against an algebra");
  verify->add_option("--algebra", va.algebra, "Builtin algebra")->capture_default_str();
  verify->add_option("--spec", va.spec_path, "Spec file instead of a builtin")->check(CLI::ExistingFile);
  verify->add_option("--group", va.group, "z:N, 2^K or N1xN2x...")->required();
  verify->add_option("--partition", va.partition, "Partition file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--bruteforce", va.bruteforce, "Also run the brute-force witness check");
  verify->add_flag("--full-scan", va.full_scan, "Count every violation instead of stopping at the first");
  verify->add_option("--max-violations", va.max_violations, "Violations kept in the report")->capture_default_str();
  verify->add_option("--threads", va.threads, "Brute-force worker threads")->capture_default_str();
  verify->callback([&] { action = [&] { return cmd_verify_group_rep(globals, va); }; });

  std::uint64_t p = 113;
  unsigned m = 8;
  std::optional<std::uint64_t> gen;
  bool require_symmetric = false;
  std::uint64_t sweep_max = 0;
  auto* comer = app.add_subcommand("comer", "Cycle structure of the cyclotomic coset scheme over Z/p");
  comer->add_option("--p", p, "Prime modulus")->capture_default_str();
  comer->add_option("--m", m, "Number of cosets")->capture_default_str();
  comer->add_option("--g", gen, "Primitive root (default: smallest)");
  comer->add_flag("--symmetric", require_symmetric, "Reject schemes with asymmetric cosets");
  comer->add_option("--sweep-max", sweep_max, "Report every prime p <= N with m | p-1 instead");
  comer->callback([&] { action = [&] { return cmd_comer(globals, p, m, gen, require_symmetric, sweep_max); }; });

  std::uint64_t p59 = 113;
  std::string out59;
  bool brute59 = false;
  auto* build59 = app.add_subcommand("build-59", "Build and verify the 59_65 partition of Z/p");
  build59->add_option("--p", p59, "Prime modulus")->capture_default_str();
  build59->add_option("--out", out59, "Write the partition file here");
  build59->add_flag("--bruteforce", brute59, "Also run the brute-force witness check");
  build59->callback([&] { action = [&] { return cmd_build_59(globals, p59, out59, brute59); }; });

  unsigned max_n = 20;
  auto* jbound = app.add_subcommand("johnson-bound", "Tabulate the probability bound by n");
  jbound->add_option("--max-n", max_n, "Largest n to tabulate")->capture_default_str();
  jbound->callback([&] { action = [&] { return cmd_johnson_bound(globals, max_n); }; });

  unsigned mc_n = 5;
  std::uint64_t mc_trials = 5;
  std::optional<std::uint64_t> mc_seed;
  std::uint64_t size_guard = 10000;
  unsigned mc_threads = 1;
  auto* jmc = app.add_subcommand("johnson-mc", "Sample equitable partitions and verify them");
  jmc->add_option("--n", mc_n, "Subset size")->required();
  jmc->add_option("--trials", mc_trials, "Number of trials")->capture_default_str();
  jmc->add_option("--seed", mc_seed, "Seed (random and echoed when omitted)");
  jmc->add_option("--size-guard", size_guard, "Largest universe accepted (cost grows as N^3)")->capture_default_str();
  jmc->add_option("--threads", mc_threads, "Verifier threads")->capture_default_str();
  jmc->callback([&] { action = [&] { return cmd_johnson_mc(globals, mc_n, mc_trials, mc_seed, size_guard, mc_threads); }; });

  SearchArgs sa;
  auto* sgf2 = app.add_subcommand("search-gf2", "Randomized search for the subgroup H in (Z/2)^k");
  sgf2->add_option("--k", sa.k, "Dimension")->required();
  sgf2->add_option("--t", sa.t, "Weight threshold (default floor(2(k-1)/3))");
  sgf2->add_option("--target-order", sa.target, "Stop at this |H| (default 2^t)");
  sgf2->add_option("--seed", sa.seed, "Seed (random and echoed when omitted)");
  sgf2->add_option("--restarts", sa.restarts, "Restart budget")->capture_default_str();
  sgf2->add_option("--time-budget", sa.time_budget, "Seconds; 0 for none")->capture_default_str();
  sgf2->add_option("--backtrack", sa.backtrack, "Discrepancies allowed per restart")->capture_default_str();
  sgf2->add_option("--order", sa.order, "Candidate order: weight (ascending, ties shuffled) or random")
      ->check(CLI::IsMember({"weight", "random"}))
      ->capture_default_str();
  sgf2->add_option("--init-fixture", sa.init_fixture, "Extend these vectors first")->check(CLI::ExistingFile);
  sgf2->add_option("--threads", sa.threads, "Parallel restarts")->capture_default_str();
  sgf2->callback([&] { action = [&] { return cmd_search_gf2(globals, sa); }; });

  std::string fixture_path;
  std::optional<unsigned> fixture_t;
  auto* vfix = app.add_subcommand("validate-fixture", "Check a listed subgroup H of (Z/2)^k");
  vfix->add_option("path", fixture_path, "Fixture file")->required()->check(CLI::ExistingFile);
  vfix->add_option("--t", fixture_t, "Weight threshold (default floor(2(k-1)/3))");
  vfix->callback([&] { action = [&] { return cmd_validate_fixture(globals, fixture_path, fixture_t); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    return action();
  } catch (const StructuralError& e) {
    std::cerr << "structural error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
