#pragma once

// Probabilistic construction of 52_65 on the n-subsets of a (3n-4)-set.
//
// Points are split into three equal classes. Pairs inside a class are b;
// across classes a pair is a when the subsets share at least two elements and
// c otherwise.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finrep/algebra.hpp"
#include "finrep/verify.hpp"

namespace finrep {

using BigInt = boost::multiprecision::cpp_int;

/// An n-subset of the ground set {0, ..., 3n-5}, as a bitmask.
using Subset = std::uint64_t;

/// Atom indices shared with builtin_52_65().
namespace johnson_atoms {
inline constexpr AtomId kIdentity{0};
inline constexpr AtomId kA{1};
inline constexpr AtomId kB{2};
inline constexpr AtomId kC{3};
}  // namespace johnson_atoms

class JohnsonUniverse {
 public:
  static constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 24;

  /// All n-subsets of a (3n-4)-set in colex order. 2 <= n <= 22.
  explicit JohnsonUniverse(unsigned n, std::uint64_t max_points = kMaxPoints);

  unsigned n() const { return n_; }
  unsigned ground_size() const { return 3 * n_ - 4; }
  std::uint64_t size() const { return points_.size(); }
  Subset point(std::uint64_t index) const { return points_.at(index); }

  /// Colex rank, without materializing anything.
  std::uint64_t rank(Subset s) const;
  Subset unrank(std::uint64_t r) const;

 private:
  unsigned n_;
  std::vector<Subset> points_;
};

/// C(3n-4, n) without building the universe. Throws for n < 2.
std::uint64_t johnson_size(unsigned n);

struct EquitablePartition {
  std::vector<std::uint8_t> class_of;
  std::array<std::uint64_t, 3> class_sizes{};
};

/// Seeded Fisher-Yates shuffle of the point indices (mt19937_64 stream,
/// rejection-sampled bounds), cut into thirds: shuffled positions [0, s/3)
/// form class 0, then class 1, then class 2. Throws if 3 does not divide the
/// number of points.
EquitablePartition random_equitable_partition(const JohnsonUniverse& u, std::uint64_t seed);

AtomId classify(const JohnsonUniverse& u, const EquitablePartition& part, std::uint64_t x, std::uint64_t y);

/// For |x ∩ y| = 2: the subsets (ground \ (x ∪ y)) ∪ {u, v} with u in x \ y
/// and v in y \ x, in order of (u, v) ascending.
std::vector<Subset> acc_witness_family(const JohnsonUniverse& u, Subset x, Subset y);
/// Same, for universes too large to build (the family only needs n).
std::vector<Subset> acc_witness_family(unsigned n, Subset x, Subset y);

struct BoundResult {
  unsigned n = 0;
  /// Natural log of C(3n-4, n)^2 * 4^3 * (2/3)^((n-2)^2).
  double log_bound = 0;
  bool below_one = false;
  BigInt binomial;
};

BoundResult probability_bound(unsigned n);

/// Smallest n >= 3 for which the bound drops below one.
unsigned minimal_sufficient_n();

/// (1/2) * C(U, U/3) * C(2U/3, U/3). Throws for U = 0 or 3 not dividing U.
BigInt partition_count(const BigInt& universe_size);

struct TrialRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  bool accepted = false;
  std::uint64_t missing = 0;
  std::uint64_t forbidden = 0;
  std::uint64_t empty_atoms = 0;
  /// Failures per ordered cycle label, only nonzero entries.
  std::map<std::string, std::uint64_t> failures_by_cycle;
};

struct McReport {
  unsigned n = 0;
  std::uint64_t points = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
  std::uint64_t accepted = 0;
};

struct McOptions {
  std::uint64_t size_guard = 10000;
  unsigned threads = 1;
};

/// Samples `trials` partitions (trial t uses derive_seed(seed, t)) and runs
/// the brute-force 52_65 verifier on each induced coloring.
McReport mc_trial(unsigned n, std::uint64_t trials, std::uint64_t seed, const McOptions& options = {});

}  // namespace finrep
