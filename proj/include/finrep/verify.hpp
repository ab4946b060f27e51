#pragma once

// Two independent ways of checking a candidate representation:
//   * verify_sumsets: Cayley colorings of an abelian group, via sumset identities.
//   * verify_bruteforce: any finite symmetric edge coloring, by searching for
//     a witness z for every edge and every cycle.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "finrep/algebra.hpp"
#include "finrep/group.hpp"

namespace finrep {

/// Assignment of each diversity atom to a subset of G \ {0}.
class ColoredPartition {
 public:
  /// sets[d] is the image of diversity atom d + 1. Throws StructuralError
  /// unless the sets are symmetric, avoid 0 and partition G \ {0}.
  ColoredPartition(GroupSpec group, std::vector<ElementSet> sets);

  const GroupSpec& group() const { return group_; }
  std::size_t diversity_count() const { return sets_.size(); }
  const ElementSet& set(AtomId atom) const;
  /// The atom whose set contains x; the identity for 0.
  AtomId atom_of(Element x) const;

 private:
  GroupSpec group_;
  std::vector<ElementSet> sets_;
  std::vector<std::uint8_t> atom_of_;
};

/// Total symmetric coloring of the pairs of points [0, N).
class EdgeColoring {
 public:
  /// Builds from color(x, y) evaluated for x < y, mirrored below the
  /// diagonal. Throws StructuralError if an off-diagonal color is the
  /// identity or >= atom_count.
  template <class F>
  static EdgeColoring from_function(std::uint32_t points, std::size_t atom_count, F&& color) {
    std::vector<std::uint8_t> colors(static_cast<std::size_t>(points) * points, 0);
    for (std::uint32_t x = 0; x < points; ++x) {
      for (std::uint32_t y = x + 1; y < points; ++y) {
        const AtomId c = color(x, y);
        colors[static_cast<std::size_t>(x) * points + y] = c.index;
        colors[static_cast<std::size_t>(y) * points + x] = c.index;
      }
    }
    return EdgeColoring(points, atom_count, std::move(colors));
  }

  /// Row-major N x N matrix; checked for symmetry and the diagonal.
  static EdgeColoring from_matrix(std::uint32_t points, std::size_t atom_count, std::vector<std::uint8_t> colors);

  std::uint32_t size() const { return points_; }
  std::size_t atom_count() const { return atom_count_; }
  AtomId color(std::uint32_t x, std::uint32_t y) const {
    return AtomId{colors_[static_cast<std::size_t>(x) * points_ + y]};
  }

  std::size_t words_per_row() const { return words_; }
  /// Bitset of the points z with color(x, z) = atom.
  const std::uint64_t* neighbours(AtomId atom, std::uint32_t x) const {
    return adjacency_.data() + (static_cast<std::size_t>(atom.index) * points_ + x) * words_;
  }
  /// Number of unordered pairs colored `atom`.
  std::uint64_t edge_count(AtomId atom) const { return edge_counts_.at(atom.index); }

 private:
  EdgeColoring(std::uint32_t points, std::size_t atom_count, std::vector<std::uint8_t> colors);

  std::uint32_t points_;
  std::size_t atom_count_;
  std::size_t words_;
  std::vector<std::uint8_t> colors_;
  std::vector<std::uint64_t> adjacency_;
  std::vector<std::uint64_t> edge_counts_;
};

enum class ViolationKind {
  MissingWitness,     // an allowed cycle needed by an edge/element has no witness
  ForbiddenRealized,  // a forbidden cycle occurs
  EmptyAtom,          // faithfulness: an atom is never used
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// (i, j, k): the edge/element colored i, the needed or realized pair j, k.
  /// For EmptyAtom only cycle[0] is meaningful.
  std::array<AtomId, 3> cycle;
  /// Sumset route: {element}. Brute force: {x, y} for a missing witness,
  /// {x, y, z} for a realized forbidden triangle.
  std::vector<std::uint32_t> points;
};

/// Sumset route, one per unordered pair j <= k.
struct PairRecord {
  AtomId j, k;
  SumsetProfile expected;
  std::size_t actual_size = 0;
  bool zero_present = false;
  /// Diversity atoms i whose set meets S_j + S_k.
  std::vector<AtomId> realized;
  bool matches = false;
};

/// Brute-force route, one per ordered diversity triple (i, j, k).
struct CycleRecord {
  std::array<AtomId, 3> cycle;
  bool allowed = false;
  std::uint64_t edges_checked = 0;
  std::uint64_t failures = 0;
};

struct VerificationReport {
  enum class Method { Sumset, BruteForce };

  Method method = Method::Sumset;
  bool accepted = false;
  std::vector<PairRecord> pairs;
  std::vector<CycleRecord> cycles;
  /// At most VerifyOptions::max_violations entries, in scan order.
  std::vector<Violation> violations;
  std::uint64_t violation_count = 0;
  std::uint64_t missing_count = 0;
  std::uint64_t forbidden_count = 0;
  std::uint64_t empty_atom_count = 0;
  /// True when early exit stopped the scan, so counts are lower bounds.
  bool stopped_early = false;
};

struct VerifyOptions {
  std::size_t max_violations = 100;
  bool early_exit = false;
  /// Worker threads for verify_bruteforce. Results do not depend on it.
  unsigned threads = 1;
};

VerificationReport verify_sumsets(const RaSpec& spec, const ColoredPartition& part, const VerifyOptions& options = {});

VerificationReport verify_bruteforce(const RaSpec& spec, const EdgeColoring& coloring,
                                     const VerifyOptions& options = {});

/// Points are group elements; edge (x, y) gets the atom containing y - x.
EdgeColoring cayley_coloring(const ColoredPartition& part);

struct EquivalenceResult {
  /// Classes of atom ∪ 1', each sorted, ordered by smallest member.
  std::vector<std::vector<std::uint32_t>> classes;
  /// (x, y, z) with (x,y) and (y,z) colored atom but (x,z) not, x != z.
  std::optional<std::array<std::uint32_t, 3>> witness;

  bool ok() const { return !witness.has_value(); }
};

EquivalenceResult equivalence_classes(const EdgeColoring& coloring, AtomId atom);

}  // namespace finrep
