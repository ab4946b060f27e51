#include <gtest/gtest.h>

#include "finrep/algebra.hpp"
#include "finrep/comer.hpp"
#include "finrep/error.hpp"
#include "finrep/io.hpp"
#include "support.hpp"

namespace finrep {
namespace {

StructuralError::Kind structural_kind(const std::string& text, const GroupSpec& g) {
  try {
    parse_partition(text, g, builtin_52_65());
  } catch (const StructuralError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a structural error";
  return StructuralError::Kind::Coloring;
}

TEST(PartitionFile, AllBIsValid) {
  const GroupSpec g = GroupSpec::cyclic(5);
  const ColoredPartition p = parse_partition("b 1\nb 2\nb 3\nb 4\n", g, builtin_52_65());
  EXPECT_EQ(p.set(AtomId{2}).size(), 4u);
  EXPECT_TRUE(p.set(AtomId{1}).empty());
  const auto r = verify_sumsets(builtin_52_65(), p);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.empty_atom_count, 2u);
}

TEST(PartitionFile, StructuralErrors) {
  const GroupSpec g = GroupSpec::cyclic(5);
  EXPECT_EQ(structural_kind("b 1\nb 2\nb 3\n", g), StructuralError::Kind::Gap);
  EXPECT_EQ(structural_kind("b 1\nb 2\nb 3\nb 4\na 4\n", g), StructuralError::Kind::Overlap);
  EXPECT_EQ(structural_kind("b 0\nb 1\nb 2\nb 3\nb 4\n", g), StructuralError::Kind::ZeroAssigned);
  EXPECT_EQ(structural_kind("a 1\na 2\nb 3\nb 4\n", g), StructuralError::Kind::Asymmetric);
}

TEST(PartitionFile, ParseErrors) {
  const GroupSpec g = GroupSpec::cyclic(5);
  const RaSpec s = builtin_52_65();
  EXPECT_THROW(parse_partition("d 1\n", g, s), ParseError);
  EXPECT_THROW(parse_partition("1' 1\n", g, s), ParseError);
  EXPECT_THROW(parse_partition("b\n", g, s), ParseError);
  EXPECT_THROW(parse_partition("b 7\n", g, s), ParseError);
  EXPECT_THROW(parse_partition("b 0101\n", GroupSpec::elementary2(3), s), ParseError);
}

TEST(PartitionFile, CommentsAndBitstrings) {
  const GroupSpec g = GroupSpec::elementary2(2);
  const ColoredPartition p = parse_partition("# header\na 01  # x\n\nb 10\nc 11\n", g, builtin_52_65());
  EXPECT_EQ(p.atom_of(Element{1}), AtomId{1});
  EXPECT_EQ(p.atom_of(Element{2}), AtomId{2});
  EXPECT_EQ(p.atom_of(Element{3}), AtomId{3});
}

TEST(PartitionFile, ShippedComerRoundTrips) {
  const RaSpec s = builtin_59_65();
  const GroupSpec g = GroupSpec::cyclic(113);
  const ColoredPartition loaded = parse_partition(read_file(testing::fixture("comer113_59.part")), g, s);
  const ColoredPartition built = build_59_65_partition(build_scheme(113, 8));
  for (auto a : s.diversity_atoms()) EXPECT_EQ(loaded.set(a), built.set(a));
  EXPECT_EQ(format_partition(loaded, s), read_file(testing::fixture("comer113_59.part")));
  EXPECT_TRUE(verify_sumsets(s, loaded).accepted);
  EXPECT_TRUE(verify_bruteforce(s, cayley_coloring(loaded)).accepted);
}

TEST(Json, ReportKeys) {
  const RaSpec s = builtin_59_65();
  const ColoredPartition p = build_59_65_partition(build_scheme(113, 8));
  const GroupSpec& g = p.group();
  const Json j = to_json(verify_sumsets(s, p), s, &g);
  for (const char* key : {"verdict", "method", "algebra", "group", "violation_count", "missing_witness_count",
                          "forbidden_realized_count", "empty_atom_count", "stopped_early", "pairs", "violations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["verdict"], "accept");
  EXPECT_EQ(j["group"], "z:113");
  EXPECT_EQ(j["pairs"].size(), 6u);
  const Json b = to_json(verify_bruteforce(builtin_52_65(), cayley_coloring(p)), builtin_52_65(), &g);
  EXPECT_EQ(b["verdict"], "reject");
  EXPECT_EQ(b["method"], "bruteforce");
  ASSERT_FALSE(b["violations"].empty());
  const Json& v = b["violations"][0];
  EXPECT_TRUE(v.contains("edge") || v.contains("triangle"));
}

TEST(Json, SpecAndScheme) {
  const Json s = to_json(builtin_52_65());
  EXPECT_EQ(s["forbidden_cycles"], Json::array({"a.b.b", "b.b.c", "c.c.c"}));
  const Json c = to_json(build_scheme(113, 8));
  EXPECT_EQ(c["forbidden"].size(), 24u);
  EXPECT_EQ(c["coset_size"], 14);
}

}  // namespace
}  // namespace finrep
