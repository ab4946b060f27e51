#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "finrep/algebra.hpp"
#include "finrep/error.hpp"
#include "finrep/io.hpp"
#include "support.hpp"

namespace finrep {
namespace {

std::set<std::string> labels(const RaSpec& spec, const std::vector<CycleTriple>& cycles) {
  std::set<std::string> out;
  for (const auto& c : cycles) {
    std::string s;
    for (auto a : c.atoms) s += spec.atom_name(a);
    out.insert(s);
  }
  return out;
}

TEST(Algebra, Builtin52Cycles) {
  const RaSpec s = builtin_52_65();
  EXPECT_EQ(s.atom_count(), 4u);
  EXPECT_EQ(s.atom_name(AtomId::identity()), "1'");
  EXPECT_EQ(labels(s, s.allowed_cycles()),
            (std::set<std::string>{"aaa", "bbb", "acc", "aab", "aac", "bcc", "abc"}));
  EXPECT_EQ(labels(s, s.forbidden_cycles()), (std::set<std::string>{"ccc", "abb", "bbc"}));
  const AtomId a = s.atom("a"), b = s.atom("b"), c = s.atom("c");
  EXPECT_TRUE(s.is_cycle(a, c, c));
  EXPECT_FALSE(s.is_cycle(c, c, c));
  EXPECT_FALSE(s.is_cycle(b, a, b));
}

TEST(Algebra, Builtin59Cycles) {
  const RaSpec s = builtin_59_65();
  EXPECT_EQ(s.allowed_cycles().size(), 8u);
  EXPECT_EQ(labels(s, s.forbidden_cycles()), (std::set<std::string>{"bbb", "bbc"}));
  const AtomId a = s.atom("a"), b = s.atom("b"), c = s.atom("c");
  EXPECT_TRUE(s.is_cycle(c, c, c));
  EXPECT_FALSE(s.is_cycle(b, b, b));
  EXPECT_TRUE(s.is_cycle(a, b, b));
  EXPECT_TRUE(s.is_cycle(b, c, c));
}

TEST(Algebra, IdentityCycles) {
  const RaSpec s = builtin_52_65();
  const AtomId e = AtomId::identity(), a = s.atom("a"), b = s.atom("b");
  EXPECT_TRUE(s.is_cycle(e, a, a));
  EXPECT_FALSE(s.is_cycle(e, a, b));
  EXPECT_TRUE(s.is_cycle(a, e, a));
  EXPECT_TRUE(s.is_cycle(a, a, e));
  EXPECT_TRUE(s.is_cycle(e, e, e));
  EXPECT_FALSE(s.is_cycle(e, e, a));
}

TEST(Algebra, UnknownAtomIdThrows) {
  const RaSpec s = builtin_52_65();
  EXPECT_THROW(s.is_cycle(AtomId{1}, AtomId{2}, AtomId{9}), Error);
  EXPECT_THROW(s.atom("d"), Error);
  EXPECT_FALSE(s.find_atom("d").has_value());
}

TEST(Algebra, PermutationInvariance) {
  for (const RaSpec& s : {builtin_52_65(), builtin_59_65()}) {
    for (std::uint8_t i = 0; i < 4; ++i) {
      for (std::uint8_t j = 0; j < 4; ++j) {
        for (std::uint8_t k = 0; k < 4; ++k) {
          std::array<AtomId, 3> t{AtomId{i}, AtomId{j}, AtomId{k}};
          const bool base = s.is_cycle(t[0], t[1], t[2]);
          std::sort(t.begin(), t.end());
          do {
            EXPECT_EQ(s.is_cycle(t[0], t[1], t[2]), base);
          } while (std::next_permutation(t.begin(), t.end()));
        }
      }
    }
  }
}

TEST(Algebra, SumsetProfiles) {
  const RaSpec s59 = builtin_59_65();
  const RaSpec s52 = builtin_52_65();
  EXPECT_EQ(s59.required_sumset_profile(s59.atom("b"), s59.atom("b")), (SumsetProfile{{s59.atom("a")}, true}));
  EXPECT_EQ(s52.required_sumset_profile(s52.atom("b"), s52.atom("b")), (SumsetProfile{{s52.atom("b")}, true}));
  EXPECT_EQ(s52.required_sumset_profile(s52.atom("a"), s52.atom("c")),
            (SumsetProfile{{s52.atom("a"), s52.atom("b"), s52.atom("c")}, false}));
  EXPECT_THROW(s52.required_sumset_profile(AtomId::identity(), s52.atom("a")), Error);
}

TEST(Algebra, ProfilesReconstructCycles) {
  for (const RaSpec& s : {builtin_52_65(), builtin_59_65()}) {
    std::set<CycleTriple> rebuilt;
    for (auto j : s.diversity_atoms()) {
      for (auto k : s.diversity_atoms()) {
        for (auto i : s.required_sumset_profile(j, k).atoms) rebuilt.insert(CycleTriple::canonical(i, j, k));
      }
    }
    const auto allowed = s.allowed_cycles();
    EXPECT_EQ(rebuilt, std::set<CycleTriple>(allowed.begin(), allowed.end()));
  }
}

TEST(Algebra, ParseMatchesBuiltins) {
  EXPECT_EQ(parse_spec(read_file(testing::fixture("ra52_65.spec"))), builtin_52_65());
  EXPECT_EQ(parse_spec(read_file(testing::fixture("ra59_65.spec"))), builtin_59_65());
  EXPECT_EQ(parse_spec(format_spec(builtin_59_65())), builtin_59_65());
  EXPECT_EQ(parse_spec(read_file(testing::fixture("ra52_65.spec"))).name(), "52_65");
}

TEST(Algebra, ParseDottedCycles) {
  const RaSpec s = parse_spec("atoms: x y\ncycles: x.x.y y.y.y\n");
  EXPECT_EQ(s.name(), "custom");
  EXPECT_TRUE(s.is_cycle(s.atom("y"), s.atom("x"), s.atom("x")));
  EXPECT_FALSE(s.is_cycle(s.atom("x"), s.atom("x"), s.atom("x")));
}

TEST(Algebra, ParseEmptyCycleList) {
  const RaSpec s = parse_spec("atoms: a b c\ncycles:\n");
  EXPECT_TRUE(s.allowed_cycles().empty());
  EXPECT_EQ(s.forbidden_cycles().size(), 10u);
}

TEST(Algebra, ParseErrors) {
  EXPECT_THROW(parse_spec("atoms: a b c\ncycles: aad\n"), ParseError);
  EXPECT_THROW(parse_spec("atoms: a a\n"), Error);
  EXPECT_THROW(parse_spec("atoms: a b\ncycles: a.b\n"), ParseError);
  EXPECT_THROW(parse_spec("atoms: a b\ncycles: 1'.a.a\n"), ParseError);
  EXPECT_THROW(parse_spec("cycles: aaa\n"), ParseError);
  EXPECT_THROW(parse_spec("atoms: a b\nconverse: a b\n"), ParseError);
  EXPECT_THROW(parse_spec("atoms: a b\nbogus: 1\n"), ParseError);
  EXPECT_NO_THROW(parse_spec("atoms: a b\nconverse: a a\n"));
}

TEST(Algebra, BuiltinByName) {
  EXPECT_EQ(builtin_algebra("52_65"), builtin_52_65());
  EXPECT_EQ(builtin_algebra("59_65"), builtin_59_65());
  EXPECT_THROW(builtin_algebra("30_65"), Error);
}

}  // namespace
}  // namespace finrep
