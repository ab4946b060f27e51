#pragma once

// Cyclotomic coset schemes over Z/p: the atoms are the cosets X_0..X_{m-1}
// of the index-m subgroup of (Z/p)^x, and (i, j, k) is a cycle exactly when
// X_i is contained in X_j + X_k.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "finrep/group.hpp"
#include "finrep/verify.hpp"

namespace finrep {

using CosetTriple = std::array<unsigned, 3>;

class CosetScheme {
 public:
  std::uint64_t p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint64_t generator() const { return g_; }
  const GroupSpec& group() const { return cosets_.front().group(); }
  const std::vector<ElementSet>& cosets() const { return cosets_; }
  /// -X_i = X_i for every i, which holds iff m divides (p-1)/2.
  bool symmetric() const { return symmetric_; }

  /// Index of the coset containing a nonzero x.
  unsigned coset_index(Element x) const;

  /// X_i ⊆ X_j + X_k, ordered.
  bool has_cycle(unsigned i, unsigned j, unsigned k) const { return cycles_[(i * m_ + j) * m_ + k]; }

  /// Ordered triples (i, j, k) with X_i ⊆ X_j + X_k, lexicographic.
  std::vector<CosetTriple> cycle_structure() const;

  // Canonical multisets i <= j <= k. Only meaningful for symmetric schemes;
  // throw Error otherwise.
  std::vector<CosetTriple> allowed_multisets() const;
  std::vector<CosetTriple> forbidden_multisets() const;

 private:
  friend CosetScheme build_scheme(std::uint64_t, unsigned, std::optional<std::uint64_t>, bool);

  std::uint64_t p_ = 0;
  unsigned m_ = 0;
  std::uint64_t g_ = 0;
  bool symmetric_ = false;
  std::vector<ElementSet> cosets_;
  std::vector<unsigned> coset_of_;
  std::vector<bool> cycles_;
};

/// Builds the coset scheme for (p, m, g), g defaulting to the smallest
/// primitive root. Throws Error if m does not divide p - 1, g is not a
/// primitive root, or `require_symmetric` is set and the cosets are not
/// symmetric.
CosetScheme build_scheme(std::uint64_t p, unsigned m, std::optional<std::uint64_t> g = std::nullopt,
                         bool require_symmetric = false);

/// A = X1 ∪ ... ∪ X5, B = X0, C = X6 ∪ X7. Needs a symmetric scheme with m = 8.
ColoredPartition build_59_65_partition(const CosetScheme& scheme);

}  // namespace finrep
