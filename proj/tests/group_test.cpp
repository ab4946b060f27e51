#include <gtest/gtest.h>

#include <random>

#include "finrep/error.hpp"
#include "finrep/group.hpp"
#include "finrep/rng.hpp"

namespace finrep {
namespace {

ElementSet random_set(const GroupSpec& g, std::mt19937_64& rng, unsigned percent) {
  ElementSet s(g);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (uniform_below(rng, 100) < percent) s.insert(Element{x});
  }
  return s;
}

TEST(Group, CyclicArithmetic) {
  const GroupSpec z = GroupSpec::cyclic(113);
  EXPECT_EQ(z.add(Element{50}, Element{63}), Element{0});
  EXPECT_EQ(z.neg(Element{1}), Element{112});
  EXPECT_EQ(z.sub(Element{3}, Element{5}), Element{111});
  EXPECT_THROW(z.add(Element{113}, Element{0}), std::out_of_range);
}

TEST(Group, ElementaryTwoHasExponentTwo) {
  const GroupSpec g = GroupSpec::elementary2(10);
  for (std::uint32_t x = 0; x < g.order(); ++x) EXPECT_EQ(g.add(Element{x}, Element{x}), Element{0});
  EXPECT_TRUE(g.is_elementary2());
  EXPECT_EQ(g.describe(), "2^10");
}

TEST(Group, EncodeDecodeRoundTrip) {
  const GroupSpec g({3, 4, 5});
  EXPECT_EQ(g.order(), 60u);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const auto c = g.decode(Element{x});
    EXPECT_EQ(g.encode(c), Element{x});
  }
  // Coordinate 0 is most significant.
  EXPECT_EQ(g.decode(Element{20}), (std::vector<std::uint32_t>{1, 0, 0}));
  EXPECT_EQ(g.format(Element{21}), "1,0,1");
  EXPECT_EQ(g.parse_element("1,0,1"), Element{21});
}

TEST(Group, BitstringFormat) {
  const GroupSpec g = GroupSpec::elementary2(10);
  EXPECT_EQ(g.format(Element{1}), "0000000001");
  EXPECT_EQ(g.parse_element("1000000000"), Element{512});
  EXPECT_THROW(g.parse_element("101"), ParseError);
  EXPECT_THROW(g.parse_element("10000000x0"), ParseError);
}

TEST(Group, ParseGroup) {
  EXPECT_EQ(parse_group("z:113"), GroupSpec::cyclic(113));
  EXPECT_EQ(parse_group("2^6"), GroupSpec::elementary2(6));
  EXPECT_EQ(parse_group("2x2x2"), GroupSpec::elementary2(3));
  EXPECT_EQ(parse_group("3x4"), GroupSpec({3, 4}));
  EXPECT_THROW(parse_group("z:"), ParseError);
  EXPECT_THROW(parse_group("2^0"), ParseError);
  EXPECT_THROW(parse_group("q7"), ParseError);
  EXPECT_THROW(GroupSpec({1}), Error);
  EXPECT_THROW(GroupSpec({1024, 1024, 2}), Error);
}

TEST(Group, SumsetExamples) {
  const GroupSpec g = GroupSpec::cyclic(17);
  ElementSet s(g, std::vector<Element>{Element{2}, Element{5}});
  EXPECT_TRUE(sumset(ElementSet(g), s).empty());
  EXPECT_EQ(sumset(ElementSet::singleton(g, Element{0}), s), s);
  EXPECT_EQ(sumset(s, s), ElementSet(g, std::vector<Element>{Element{4}, Element{7}, Element{10}}));
  EXPECT_THROW(sumset(s, ElementSet(GroupSpec::cyclic(13))), StructuralError);
}

TEST(Group, WeightClassIdentities) {
  const GroupSpec g = GroupSpec::elementary2(10);
  const ElementSet x = weight_classes(10, 1, 6);
  const ElementSet c = weight_classes(10, 7, 10);
  EXPECT_EQ(x.size(), 847u);
  EXPECT_EQ(c.size(), 176u);
  EXPECT_EQ(weight_classes(10, 0, 10).size(), 1024u);
  EXPECT_EQ(sumset(c, c), c.complement());
  ElementSet nonzero = ElementSet::full(g);
  nonzero.erase(Element{0});
  EXPECT_EQ(sumset(x, c), nonzero);
  EXPECT_EQ(sumset(x, x), ElementSet::full(g));
  EXPECT_THROW(weight_classes(10, 7, 6), Error);
  EXPECT_THROW(weight_classes(10, 0, 11), Error);
}

TEST(Group, SumsetMatchesReference) {
  std::mt19937_64 rng(11);
  const std::vector<GroupSpec> groups = {GroupSpec::cyclic(5),      GroupSpec::cyclic(64),  GroupSpec::cyclic(113),
                                         GroupSpec::cyclic(200),    GroupSpec::elementary2(1), GroupSpec::elementary2(3),
                                         GroupSpec::elementary2(7), GroupSpec::elementary2(10), GroupSpec({3, 4, 5}),
                                         GroupSpec({2, 6})};
  for (const auto& g : groups) {
    for (int rep = 0; rep < 20; ++rep) {
      const unsigned dens_s = static_cast<unsigned>(uniform_below(rng, 40));
      const unsigned dens_t = static_cast<unsigned>(uniform_below(rng, 40));
      const ElementSet s = random_set(g, rng, dens_s);
      const ElementSet t = random_set(g, rng, dens_t);
      EXPECT_EQ(sumset(s, t), sumset_reference(s, t)) << g.describe();
    }
  }
}

TEST(Group, SumsetAlgebraicLaws) {
  std::mt19937_64 rng(12);
  for (const auto& g : {GroupSpec::cyclic(31), GroupSpec::elementary2(6), GroupSpec({4, 6})}) {
    for (int rep = 0; rep < 30; ++rep) {
      const ElementSet r = random_set(g, rng, 15), s = random_set(g, rng, 15), t = random_set(g, rng, 15);
      EXPECT_EQ(sumset(s, t), sumset(t, s));
      EXPECT_EQ(sumset(sumset(r, s), t), sumset(r, sumset(s, t)));
      EXPECT_EQ(sumset(s, ElementSet::singleton(g, Element{0})), s);
      EXPECT_TRUE(sumset(s, t).is_subset_of(sumset(s | r, t)));
    }
  }
}

TEST(Group, SetOperations) {
  const GroupSpec g = GroupSpec::cyclic(130);
  ElementSet s(g, std::vector<Element>{Element{1}, Element{65}, Element{129}});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.complement().size(), 127u);
  EXPECT_EQ(s.negated(), s);
  EXPECT_EQ(*s.first(), Element{1});
  s.erase(Element{1});
  EXPECT_FALSE(s.contains(Element{1}));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.intersects(ElementSet::singleton(g, Element{65})));
  EXPECT_FALSE(ElementSet(g).first().has_value());
}

TEST(Group, SpanExamples) {
  const GroupSpec z = GroupSpec::cyclic(113);
  EXPECT_EQ(span(z, {}).elements.size(), 1u);
  const std::vector<Element> one{Element{1}};
  EXPECT_EQ(span(z, one).elements.size(), 113u);
  const GroupSpec z12 = GroupSpec::cyclic(12);
  const std::vector<Element> gens{Element{8}, Element{6}};
  EXPECT_EQ(span(z12, gens).elements.size(), 6u);
}

TEST(Group, SpanIsClosed) {
  std::mt19937_64 rng(13);
  for (const auto& g : {GroupSpec::elementary2(8), GroupSpec({4, 6, 3}), GroupSpec::cyclic(60)}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<Element> gens;
      const auto count = uniform_below(rng, 4);
      for (std::uint64_t i = 0; i < count; ++i) gens.push_back(Element{static_cast<std::uint32_t>(uniform_below(rng, g.order()))});
      const ElementSet h = span(g, gens).elements;
      EXPECT_TRUE(h.contains(Element{0}));
      for (auto gen : gens) EXPECT_TRUE(h.contains(gen));
      h.for_each([&](Element x) {
        EXPECT_TRUE(h.contains(g.neg(x)));
        h.for_each([&](Element y) { EXPECT_TRUE(h.contains(g.add(x, y))); });
      });
    }
  }
}

TEST(Group, PrimitiveRoots) {
  EXPECT_EQ(primitive_root(113), 3u);
  EXPECT_EQ(primitive_root(2), 1u);
  EXPECT_EQ(primitive_root(7), 3u);
  EXPECT_EQ(pow_mod(2, 3, 7), 1u);
  EXPECT_FALSE(is_primitive_root(2, 7));
  EXPECT_TRUE(is_primitive_root(3, 7));
  EXPECT_THROW(primitive_root(8), Error);
  EXPECT_TRUE(is_prime(113));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
}

TEST(Group, CyclotomicCosets113) {
  const auto xs = cyclotomic_cosets(113, 8, 3);
  ASSERT_EQ(xs.size(), 8u);
  ElementSet all(GroupSpec::cyclic(113));
  for (const auto& x : xs) {
    EXPECT_EQ(x.size(), 14u);
    EXPECT_FALSE(all.intersects(x));
    all |= x;
  }
  EXPECT_EQ(all.size(), 112u);
  EXPECT_FALSE(all.contains(Element{0}));
  EXPECT_TRUE(xs[0].contains(Element{112}));
  EXPECT_TRUE(xs[1].contains(Element{3}));
  EXPECT_THROW(cyclotomic_cosets(113, 5, 3), Error);
  EXPECT_THROW(cyclotomic_cosets(113, 8, 2), Error);
}

TEST(Group, CyclotomicCosetsTrivialIndex) {
  const auto xs = cyclotomic_cosets(7, 1, 3);
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_EQ(xs[0], ElementSet::full(GroupSpec::cyclic(7)) - ElementSet::singleton(GroupSpec::cyclic(7), Element{0}));
}

TEST(Group, CosetsAreSaturated) {
  for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{113, 8}, {97, 6}, {41, 4}, {13, 3}}) {
    const std::uint64_t g = primitive_root(p);
    const auto xs = cyclotomic_cosets(p, m, g);
    // Multiplying by an element of X_0 maps each X_i onto itself.
    xs[0].for_each([&](Element u) {
      for (const auto& x : xs) {
        x.for_each([&](Element v) { EXPECT_TRUE(x.contains(Element{static_cast<std::uint32_t>(u.index * v.index % p)})); });
      }
    });
    for (const auto& xj : xs) {
      for (const auto& xk : xs) {
        const ElementSet s = sumset(xj, xk);
        for (const auto& xi : xs) {
          const std::size_t inside = (s & xi).size();
          EXPECT_TRUE(inside == 0 || inside == xi.size());
        }
      }
    }
  }
}

}  // namespace
}  // namespace finrep
