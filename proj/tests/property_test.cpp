// Randomized cross-checks between the two verifiers and invariance of the
// verdict under group automorphisms.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "finrep/algebra.hpp"
#include "finrep/gf2_search.hpp"
#include "finrep/io.hpp"
#include "finrep/verify.hpp"
#include "support.hpp"

namespace finrep {
namespace {

std::vector<GroupSpec> small_groups() {
  std::vector<GroupSpec> out;
  for (std::uint32_t n = 5; n <= 24; ++n) out.push_back(GroupSpec::cyclic(n));
  for (unsigned k = 1; k <= 6; ++k) out.push_back(GroupSpec::elementary2(k));
  return out;
}

std::set<CycleTriple> failing_cycles_sumset(const VerificationReport& r) {
  std::set<CycleTriple> out;
  for (const auto& v : r.violations) {
    if (v.kind == ViolationKind::EmptyAtom) continue;
    if (v.cycle[0].is_identity() || v.cycle[1].is_identity() || v.cycle[2].is_identity()) continue;
    out.insert(CycleTriple::canonical(v.cycle[0], v.cycle[1], v.cycle[2]));
  }
  return out;
}

std::set<CycleTriple> failing_cycles_brute(const VerificationReport& r) {
  std::set<CycleTriple> out;
  for (const auto& c : r.cycles) {
    if (c.failures != 0) out.insert(CycleTriple::canonical(c.cycle[0], c.cycle[1], c.cycle[2]));
  }
  return out;
}

void compare(const RaSpec& spec, const ColoredPartition& p) {
  VerifyOptions full;
  full.max_violations = 1 << 20;
  const VerificationReport s = verify_sumsets(spec, p, full);
  const VerificationReport b = verify_bruteforce(spec, cayley_coloring(p), full);
  ASSERT_EQ(s.accepted, b.accepted) << spec.name() << " over " << p.group().describe();
  EXPECT_EQ(s.accepted, s.violations.empty());
  EXPECT_EQ(b.accepted, b.violations.empty());
  EXPECT_EQ(s.pairs.size(), 6u);
  EXPECT_EQ(s.empty_atom_count, b.empty_atom_count);
  EXPECT_EQ(failing_cycles_sumset(s), failing_cycles_brute(b)) << spec.name() << " over " << p.group().describe();
}

TEST(OracleEquivalence, RandomPartitions) {
  const RaSpec specs[] = {builtin_52_65(), builtin_59_65()};
  std::mt19937_64 rng(2024);
  for (const auto& g : small_groups()) {
    for (int rep = 0; rep < 200; ++rep) {
      const ColoredPartition p = testing::random_partition(g, 3, rng);
      for (const auto& spec : specs) compare(spec, p);
    }
  }
}

// Every orbit assignment for groups with few {x, -x} orbits, which includes
// whatever accepting partitions exist there.
TEST(OracleEquivalence, ExhaustiveSmallGroups) {
  const RaSpec specs[] = {builtin_52_65(), builtin_59_65()};
  std::size_t accepted = 0;
  for (const auto& g : {GroupSpec::cyclic(5), GroupSpec::cyclic(7), GroupSpec::cyclic(9), GroupSpec::cyclic(10),
                        GroupSpec::cyclic(13), GroupSpec::elementary2(2), GroupSpec::elementary2(3), GroupSpec({3, 3})}) {
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x = 1; x < g.order(); ++x) {
      if (g.neg_unchecked(x) >= x) reps.push_back(x);
    }
    ASSERT_LE(reps.size(), 7u);
    std::size_t total = 1;
    for (std::size_t i = 0; i < reps.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<ElementSet> sets(3, ElementSet(g));
      std::size_t c = code;
      for (auto x : reps) {
        sets[c % 3].insert(Element{x});
        sets[c % 3].insert(Element{g.neg_unchecked(x)});
        c /= 3;
      }
      const ColoredPartition p(g, std::move(sets));
      for (const auto& spec : specs) {
        compare(spec, p);
        accepted += verify_sumsets(spec, p).accepted ? 1 : 0;
      }
    }
  }
  RecordProperty("accepted", static_cast<int>(accepted));
}

TEST(OracleEquivalence, KnownRepresentations) {
  unsigned k = 0;
  const auto elems = parse_fixture(read_file(testing::fixture("h52_k10.txt")), &k);
  const ColoredPartition h = subgroup_partition(k, 6, span(GroupSpec::elementary2(k), elems).elements);
  compare(builtin_52_65(), h);
  compare(builtin_59_65(), h);
  const ColoredPartition comer =
      parse_partition(read_file(testing::fixture("comer113_59.part")), GroupSpec::cyclic(113), builtin_59_65());
  compare(builtin_59_65(), comer);
  compare(builtin_52_65(), comer);
}

ColoredPartition permuted(const ColoredPartition& p, const std::vector<unsigned>& perm) {
  std::vector<ElementSet> sets;
  for (std::uint8_t a = 1; a <= p.diversity_count(); ++a) {
    ElementSet s(p.group());
    p.set(AtomId{a}).for_each([&](Element x) { s.insert(testing::permute_coords(p.group(), x, perm)); });
    sets.push_back(std::move(s));
  }
  return ColoredPartition(p.group(), std::move(sets));
}

TEST(Automorphism, CoordinatePermutationKeepsVerdict) {
  std::mt19937_64 rng(31);
  unsigned k = 0;
  const auto elems = parse_fixture(read_file(testing::fixture("h52_k10.txt")), &k);
  const ColoredPartition h = subgroup_partition(k, 6, span(GroupSpec::elementary2(k), elems).elements);
  std::vector<unsigned> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  for (int rep = 0; rep < 10; ++rep) {
    shuffle(std::span<unsigned>(perm), rng);
    EXPECT_TRUE(verify_sumsets(builtin_52_65(), permuted(h, perm)).accepted);
  }
  const GroupSpec g = GroupSpec::elementary2(5);
  std::vector<unsigned> p5(5);
  std::iota(p5.begin(), p5.end(), 0u);
  for (int rep = 0; rep < 100; ++rep) {
    const ColoredPartition p = testing::random_partition(g, 3, rng);
    shuffle(std::span<unsigned>(p5), rng);
    for (const auto& spec : {builtin_52_65(), builtin_59_65()}) {
      const auto a = verify_sumsets(spec, p);
      const auto b = verify_sumsets(spec, permuted(p, p5));
      EXPECT_EQ(a.accepted, b.accepted);
      EXPECT_EQ(a.violation_count, b.violation_count);
    }
  }
}

TEST(Automorphism, UnitMultiplicationKeepsVerdict) {
  const ColoredPartition comer =
      parse_partition(read_file(testing::fixture("comer113_59.part")), GroupSpec::cyclic(113), builtin_59_65());
  for (std::uint32_t u : {2u, 5u, 50u, 112u}) {
    std::vector<ElementSet> sets;
    for (std::uint8_t a = 1; a <= 3; ++a) {
      ElementSet s(comer.group());
      comer.set(AtomId{a}).for_each([&](Element x) { s.insert(Element{x.index * u % 113}); });
      sets.push_back(std::move(s));
    }
    EXPECT_TRUE(verify_sumsets(builtin_59_65(), ColoredPartition(comer.group(), std::move(sets))).accepted) << u;
  }
}

}  // namespace
}  // namespace finrep
