#pragma once

// 52_65 over (Z/2)^k: with X = weights 1..t and C = weights t+1..k, look for a
// subgroup H ⊆ X ∪ {0} and color B = H \ {0}, A = X \ B.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finrep/group.hpp"
#include "finrep/verify.hpp"

namespace finrep {

/// floor(2(k-1)/3); gives t = 6 for k = 10.
unsigned default_threshold(unsigned k);

struct PrecheckResult {
  unsigned k = 0;
  unsigned t = 0;
  std::size_t x_size = 0;
  std::size_t c_size = 0;
  bool x_plus_x_is_g = false;            // X + X = G
  bool x_plus_c_is_nonzero = false;      // X + C = G \ {0}
  bool c_plus_c_is_complement = false;   // C + C = G \ C

  bool passed() const { return x_plus_x_is_g && x_plus_c_is_nonzero && c_plus_c_is_complement; }
};

PrecheckResult precheck(unsigned k, unsigned t);

struct ExtendResult;

/// Linearly independent vectors whose span has every nonzero element in X.
class BasisState {
 public:
  BasisState(unsigned k, unsigned t);

  unsigned k() const { return k_; }
  unsigned t() const { return t_; }
  const std::vector<Element>& basis() const { return basis_; }
  const ElementSet& span() const { return span_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(span_.size()); }

  bool in_x(Element v) const {
    const unsigned w = hamming_weight(v);
    return w >= 1 && w <= t_;
  }

 private:
  friend ExtendResult extend_basis(const BasisState& state, Element v);

  unsigned k_;
  unsigned t_;
  std::vector<Element> basis_;
  ElementSet span_;
  std::vector<std::uint32_t> members_;
};

struct ExtendResult {
  enum class Rejection { None, InSpan, WeightViolation };

  std::optional<BasisState> state;
  Rejection rejection = Rejection::None;
  /// For WeightViolation: a span element h with h + v outside X.
  std::optional<Element> offending;

  bool accepted() const { return state.has_value(); }
};

/// Throws Error when v is not in X.
ExtendResult extend_basis(const BasisState& state, Element v);

/// Reduced row echelon basis of span(vectors); one canonical basis per subgroup.
std::vector<Element> canonical_basis(std::span<const Element> vectors);

/// B = H \ {0}, A = X \ B, C = weights t+1..k. Throws StructuralError if H
/// is not inside X ∪ {0}.
ColoredPartition subgroup_partition(unsigned k, unsigned t, const ElementSet& h);

// ---------------------------------------------------------------------------
// Fixture validation

/// One bitstring per line; '#' comments; blank lines and trailing commas
/// are ignored. Throws ParseError on malformed or duplicate entries.
std::vector<Element> parse_fixture(std::string_view text, unsigned* k_out = nullptr);

struct FixtureReport {
  unsigned k = 0;
  unsigned t = 0;
  std::size_t listed = 0;
  bool weights_ok = false;
  std::vector<Element> bad_weight;
  bool closure_ok = false;
  std::uint32_t span_order = 0;
  /// Absent when the weight check failed (the partition would overlap C).
  std::optional<VerificationReport> sumsets;
  bool classes_ok = false;
  std::size_t class_count = 0;
  std::vector<std::size_t> class_sizes;
  std::optional<std::array<std::uint32_t, 3>> transitivity_witness;

  bool passed() const { return weights_ok && closure_ok && sumsets && sumsets->accepted && classes_ok; }
};

/// Weights in [1, t]; with 0 the list is a subgroup; verify_sumsets(52_65)
/// accepts the induced partition; b ∪ 1' splits the points into 2^k / |H|
/// classes of size |H|.
FixtureReport validate_fixture(unsigned k, std::span<const Element> elements, std::optional<unsigned> t = std::nullopt);

// ---------------------------------------------------------------------------
// Randomized search

struct SearchConfig {
  unsigned k = 10;
  std::optional<unsigned> t;             // default_threshold(k)
  std::optional<std::uint32_t> target_order;  // default 2^t
  std::uint64_t seed = 0;
  std::uint64_t restart_budget = 100;
  /// Wall-clock limit in seconds, checked between restarts; 0 = none.
  /// Runs cut short by the clock are not reproducible.
  double time_budget = 0;
  /// Discrepancies per restart: how many acceptable candidates the search
  /// may skip and later revisit. 0 is pure greedy.
  unsigned backtrack = 0;
  /// WeightAscending tries low-weight vectors first (shuffled within each
  /// weight); Random shuffles all of X.
  enum class CandidateOrder { WeightAscending, Random };
  CandidateOrder order = CandidateOrder::WeightAscending;
  /// Node cap per restart for the backtracking search.
  std::uint64_t node_limit = 200000;
  /// Extended first, in order; elements already in the span are skipped.
  std::vector<Element> initial_basis;
  unsigned threads = 1;
};

struct SearchStats {
  std::uint64_t restarts_run = 0;
  std::uint64_t best_restart = 0;
  std::string stop_reason;  // "target", "restarts" or "time"
  std::map<std::uint32_t, std::uint64_t> order_histogram;
  double elapsed_seconds = 0;
};

struct SearchOutcome {
  unsigned k = 0;
  unsigned t = 0;
  std::uint32_t target_order = 0;
  std::vector<Element> basis;  // canonical
  std::uint32_t order = 0;
  VerificationReport report;
  SearchStats stats;

  bool success() const { return order >= target_order && report.accepted; }
};

SearchOutcome search(const SearchConfig& config);

}  // namespace finrep
