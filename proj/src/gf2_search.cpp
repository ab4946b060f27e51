#include "finrep/gf2_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "finrep/error.hpp"
#include "finrep/rng.hpp"

namespace finrep {

unsigned default_threshold(unsigned k) { return k == 0 ? 0 : 2 * (k - 1) / 3; }

namespace {

void check_kt(unsigned k, unsigned t) {
  if (k < 2 || k > 20) throw Error("dimension k must be in [2, 20], got " + std::to_string(k));
  if (t < 1 || t >= k) throw Error("threshold t must satisfy 1 <= t < k, got t = " + std::to_string(t));
}

}  // namespace

PrecheckResult precheck(unsigned k, unsigned t) {
  check_kt(k, t);
  PrecheckResult r;
  r.k = k;
  r.t = t;
  const GroupSpec g = GroupSpec::elementary2(k);
  const ElementSet x = weight_classes(k, 1, t);
  const ElementSet c = weight_classes(k, t + 1, k);
  r.x_size = x.size();
  r.c_size = c.size();
  ElementSet nonzero = ElementSet::full(g);
  nonzero.erase(Element{0});
  r.x_plus_x_is_g = sumset(x, x) == ElementSet::full(g);
  r.x_plus_c_is_nonzero = sumset(x, c) == nonzero;
  r.c_plus_c_is_complement = sumset(c, c) == c.complement();
  return r;
}

BasisState::BasisState(unsigned k, unsigned t)
    : k_(k), t_(t), span_(ElementSet::singleton(GroupSpec::elementary2(k), Element{0})), members_{0} {
  check_kt(k, t);
}

ExtendResult extend_basis(const BasisState& state, Element v) {
  if (!state.span_.group().contains(v) || !state.in_x(v)) {
    throw Error("vector " + (state.span_.group().contains(v) ? state.span_.group().format(v) : std::to_string(v.index)) +
                " is not in X (weights 1.." + std::to_string(state.t_) + ")");
  }
  ExtendResult result;
  if (state.span_.test(v.index)) {
    result.rejection = ExtendResult::Rejection::InSpan;
    return result;
  }
  for (auto h : state.members_) {
    if (!state.in_x(Element{h ^ v.index})) {
      result.rejection = ExtendResult::Rejection::WeightViolation;
      result.offending = Element{h};
      return result;
    }
  }
  BasisState next = state;
  next.basis_.push_back(v);
  const std::size_t before = state.members_.size();
  for (std::size_t i = 0; i < before; ++i) {
    const std::uint32_t e = state.members_[i] ^ v.index;
    next.members_.push_back(e);
    next.span_.insert(Element{e});
  }
  result.state = std::move(next);
  return result;
}

std::vector<Element> canonical_basis(std::span<const Element> vectors) {
  // Pivot = highest set bit.
  std::vector<std::uint32_t> rows;
  for (auto v : vectors) {
    std::uint32_t x = v.index;
    for (auto r : rows) {
      const std::uint32_t pivot = 1U << (31 - __builtin_clz(r));
      if (x & pivot) x ^= r;
    }
    if (x == 0) continue;
    for (auto& r : rows) {
      const std::uint32_t pivot = 1U << (31 - __builtin_clz(x));
      if (r & pivot) r ^= x;
    }
    rows.push_back(x);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<Element> out;
  for (auto r : rows) out.push_back(Element{r});
  return out;
}

ColoredPartition subgroup_partition(unsigned k, unsigned t, const ElementSet& h) {
  check_kt(k, t);
  ElementSet x = weight_classes(k, 1, t);
  ElementSet c = weight_classes(k, t + 1, k);
  ElementSet b = h;
  b.erase(Element{0});
  if (!b.is_subset_of(x)) {
    throw StructuralError(StructuralError::Kind::Overlap, "subgroup element " + h.group().format(*(b - x).first()) +
                                                              " has weight outside 1.." + std::to_string(t));
  }
  ElementSet a = x - b;
  return ColoredPartition(h.group(), {std::move(a), std::move(b), std::move(c)});
}

// ---------------------------------------------------------------------------
// Fixtures

std::vector<Element> parse_fixture(std::string_view text, unsigned* k_out) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string current;
    for (char ch : line) {
      if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(ch);
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  if (tokens.empty()) throw ParseError("fixture lists no elements");
  const std::size_t k = tokens.front().size();
  if (k == 0 || k > 20) throw ParseError("fixture bitstrings must have length 1..20");
  const GroupSpec g = GroupSpec::elementary2(static_cast<unsigned>(k));
  std::vector<Element> out;
  std::set<std::uint32_t> seen;
  for (const auto& tok : tokens) {
    const Element e = g.parse_element(tok);
    if (!seen.insert(e.index).second) throw ParseError("duplicate fixture element " + tok);
    out.push_back(e);
  }
  if (k_out != nullptr) *k_out = static_cast<unsigned>(k);
  return out;
}

FixtureReport validate_fixture(unsigned k, std::span<const Element> elements, std::optional<unsigned> t) {
  FixtureReport r;
  r.k = k;
  r.t = t ? *t : default_threshold(k);
  check_kt(k, r.t);
  r.listed = elements.size();
  const GroupSpec g = GroupSpec::elementary2(k);

  ElementSet h = ElementSet::singleton(g, Element{0});
  for (auto e : elements) {
    if (!g.contains(e)) throw Error("fixture element out of range");
    if (h.contains(e)) throw Error("duplicate or zero fixture element " + g.format(e));
    h.insert(e);
    const unsigned w = hamming_weight(e);
    if (w < 1 || w > r.t) r.bad_weight.push_back(e);
  }
  r.weights_ok = r.bad_weight.empty();

  const Subgroup closure = span(g, elements);
  r.span_order = static_cast<std::uint32_t>(closure.elements.size());
  r.closure_ok = closure.elements == h;

  if (r.weights_ok) {
    const ColoredPartition part = subgroup_partition(k, r.t, h);
    r.sumsets = verify_sumsets(builtin_52_65(), part);
    const EquivalenceResult eq = equivalence_classes(cayley_coloring(part), AtomId{2});
    r.transitivity_witness = eq.witness;
    r.class_count = eq.classes.size();
    for (const auto& c : eq.classes) r.class_sizes.push_back(c.size());
    r.classes_ok = eq.ok() && g.order() % h.size() == 0 && r.class_count == g.order() / h.size() &&
                   std::all_of(r.class_sizes.begin(), r.class_sizes.end(), [&](auto s) { return s == h.size(); });
  }
  return r;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct RestartResult {
  std::uint64_t index = 0;
  std::vector<Element> basis;  // canonical
  std::uint32_t order = 0;
  bool accepted = false;
  bool success = false;
};

class RestartRunner {
 public:
  RestartRunner(const SearchConfig& config, unsigned t, std::uint32_t target, const std::vector<Element>& x_by_weight,
                const RaSpec& spec)
      : config_(config), t_(t), target_(target), x_by_weight_(x_by_weight), spec_(spec) {}

  RestartResult run(std::uint64_t index) {
    std::mt19937_64 rng(derive_seed(config_.seed, index));
    candidates_ = x_by_weight_;
    if (config_.order == SearchConfig::CandidateOrder::Random) {
      shuffle(std::span<Element>(candidates_), rng);
    }
    // Shuffle within each weight band, keeping bands in ascending order.
    for (std::size_t lo = 0; config_.order == SearchConfig::CandidateOrder::WeightAscending && lo < candidates_.size();) {
      std::size_t hi = lo;
      while (hi < candidates_.size() && hamming_weight(candidates_[hi]) == hamming_weight(candidates_[lo])) ++hi;
      shuffle(std::span<Element>(candidates_.data() + lo, hi - lo), rng);
      lo = hi;
    }

    BasisState start(config_.k, t_);
    for (auto v : config_.initial_basis) {
      if (start.span().contains(v)) continue;
      auto ext = extend_basis(start, v);
      if (!ext.accepted()) {
        throw Error("initial basis vector " + start.span().group().format(v) + " cannot extend the subgroup");
      }
      start = std::move(*ext.state);
    }

    nodes_ = 0;
    best_.reset();
    best_report_.reset();
    const bool success = dfs(start, 0, config_.backtrack);

    RestartResult out;
    out.index = index;
    out.basis = canonical_basis(best_->basis());
    out.order = best_->order();
    if (best_report_) {
      out.accepted = best_report_->accepted;
    } else {
      out.accepted = verify_sumsets(spec_, subgroup_partition(config_.k, t_, best_->span())).accepted;
    }
    out.success = success;
    return out;
  }

 private:
  // Returns true once a subgroup of the target order gives an accepting report.
  bool dfs(const BasisState& state, std::size_t pos, unsigned discrepancies) {
    ++nodes_;
    if (!best_ || state.order() > best_->order()) {
      best_ = state;
      best_report_.reset();
    }
    if (state.order() >= target_) {
      VerificationReport report = verify_sumsets(spec_, subgroup_partition(config_.k, t_, state.span()));
      if (report.accepted) {
        best_ = state;
        best_report_ = std::move(report);
        return true;
      }
      if (best_->order() == state.order() && !best_report_) best_report_ = std::move(report);
      return false;
    }
    if (nodes_ > config_.node_limit) return false;
    for (std::size_t idx = pos; idx < candidates_.size(); ++idx) {
      const Element v = candidates_[idx];
      if (state.span().test(v.index)) continue;
      auto ext = extend_basis(state, v);
      if (!ext.accepted()) continue;
      if (dfs(*ext.state, idx + 1, discrepancies)) return true;
      if (discrepancies == 0 || nodes_ > config_.node_limit) return false;
      --discrepancies;
    }
    return false;
  }

  const SearchConfig& config_;
  unsigned t_;
  std::uint32_t target_;
  const std::vector<Element>& x_by_weight_;
  const RaSpec& spec_;
  std::vector<Element> candidates_;
  std::uint64_t nodes_ = 0;
  std::optional<BasisState> best_;
  std::optional<VerificationReport> best_report_;
};

// Max order, then accepting, then lexicographically least canonical basis,
// then lowest restart index.
bool better(const RestartResult& a, const RestartResult& b) {
  if (a.order != b.order) return a.order > b.order;
  if (a.accepted != b.accepted) return a.accepted;
  if (a.basis != b.basis) return a.basis < b.basis;
  return a.index < b.index;
}

}  // namespace

SearchOutcome search(const SearchConfig& config) {
  const unsigned t = config.t ? *config.t : default_threshold(config.k);
  check_kt(config.k, t);
  const std::uint32_t target = config.target_order ? *config.target_order : (std::uint32_t{1} << t);
  if (target == 0 || (target & (target - 1)) != 0 || target > (std::uint32_t{1} << config.k)) {
    throw Error("target order must be a power of two no larger than 2^k");
  }
  if (config.restart_budget == 0) throw Error("restart budget must be positive");
  const PrecheckResult pre = precheck(config.k, t);
  if (!pre.passed()) {
    throw Error("precheck failed for k = " + std::to_string(config.k) + ", t = " + std::to_string(t));
  }

  std::vector<Element> x_by_weight = weight_classes(config.k, 1, t).elements();
  std::stable_sort(x_by_weight.begin(), x_by_weight.end(),
                   [](Element a, Element b) { return hamming_weight(a) < hamming_weight(b); });
  const RaSpec spec = builtin_52_65();

  const auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (config.time_budget <= 0) return false;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    return elapsed.count() >= config.time_budget;
  };

  std::vector<std::optional<RestartResult>> results(config.restart_budget > 1'000'000 ? 0 : config.restart_budget);
  if (results.empty()) throw Error("restart budget too large");
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_success{config.restart_budget};
  std::atomic<bool> timed_out{false};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    RestartRunner runner(config, t, target, x_by_weight, spec);
    try {
      for (std::uint64_t r = next++; r < config.restart_budget; r = next++) {
        if (r > first_success.load()) break;
        if (out_of_time()) {
          timed_out = true;
          break;
        }
        results[r] = runner.run(r);
        if (results[r]->success) {
          std::uint64_t cur = first_success.load();
          while (r < cur && !first_success.compare_exchange_weak(cur, r)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      first_success = 0;
    }
  };

  const unsigned threads = std::max(1U, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  SearchOutcome outcome;
  outcome.k = config.k;
  outcome.t = t;
  outcome.target_order = target;
  const std::uint64_t last =
      first_success.load() < config.restart_budget ? first_success.load() : config.restart_budget - 1;
  const RestartResult* best = nullptr;
  for (std::uint64_t r = 0; r <= last; ++r) {
    if (!results[r]) continue;  // skipped on timeout
    ++outcome.stats.restarts_run;
    ++outcome.stats.order_histogram[results[r]->order];
    if (best == nullptr || better(*results[r], *best)) best = &*results[r];
  }
  if (best == nullptr) {
    // The clock ran out before the first restart finished; run it anyway.
    RestartRunner runner(config, t, target, x_by_weight, spec);
    results[0] = runner.run(0);
    best = &*results[0];
    outcome.stats.restarts_run = 1;
    ++outcome.stats.order_histogram[best->order];
  }
  outcome.basis = best->basis;
  outcome.order = best->order;
  const ElementSet h = span(GroupSpec::elementary2(config.k), best->basis).elements;
  outcome.report = verify_sumsets(spec, subgroup_partition(config.k, t, h));
  outcome.stats.best_restart = best->index;
  if (outcome.success()) {
    outcome.stats.stop_reason = "target";
  } else if (timed_out) {
    outcome.stats.stop_reason = "time";
  } else {
    outcome.stats.stop_reason = "restarts";
  }
  outcome.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return outcome;
}

}  // namespace finrep
