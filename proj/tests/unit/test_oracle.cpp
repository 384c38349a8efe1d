#include <gtest/gtest.h>

#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

namespace {

const Carrier kTwo = Carrier::range(2);

std::vector<SetMap> leg_maps(const std::vector<Morphism>& legs) {
  std::vector<SetMap> out;
  for (const Morphism& m : legs) out.push_back(m.map());
  return out;
}

}  // namespace

TEST(Oracle, ProductOfTwoPointSpacesPasses) {
  const auto spaces = enumerate_spaces(2);
  for (const GBCSpace& x : spaces) {
    for (const GBCSpace& y : {spaces.front(), spaces.back()}) {
      const Diagram d = Diagram::discrete({x, y});
      const LimitResult l = limit(d);
      const Verdict v = universal_property_check(l.cone, d);
      EXPECT_TRUE(v.pass) << describe(x) << " x " << describe(y) << ": " << v.reason;
      EXPECT_EQ(v.tests, test_objects(3, false).size());
    }
  }
}

TEST(Oracle, EnlargedBoundedRegionOnProductFails) {
  const GBCSpace x = max_empty(kTwo);
  const Diagram d = Diagram::discrete({x, x});
  const LimitResult l = limit(d);
  ASSERT_TRUE(l.space.bounded_region().empty());
  const GBCSpace enlarged(l.space.max_entourage(), PointSet::full(l.space.carrier()));
  const std::vector<SetMap> legs = leg_maps(l.cone.legs);
  const Verdict v = universal_property_check(enlarged, legs, d, Side::Limit);
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(v.reason.empty());
}

TEST(Oracle, ShrunkEntourageOnCoproductFails) {
  const GBCSpace x = max_max(kTwo);
  const Diagram d = Diagram::discrete({x, x});
  const ColimitResult c = colimit(d);
  const GBCSpace shrunk(Relation::diagonal(c.space.carrier()), c.space.bounded_region());
  const std::vector<SetMap> legs = leg_maps(c.cocone.legs);
  const Verdict v = universal_property_check(shrunk, legs, d, Side::Colimit);
  EXPECT_FALSE(v.pass);
}

TEST(Oracle, FinalObjectForEmptyDiagram) {
  const Diagram d = Diagram::empty();
  const std::vector<SetMap> none;
  EXPECT_TRUE(universal_property_check(final_point(), none, d, Side::Limit).pass);
  const Verdict v = universal_property_check(unit_point(), none, d, Side::Limit);
  ASSERT_FALSE(v.pass);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_FALSE(v.counterexample->test.bounded_region().is_full());
  EXPECT_EQ(v.counterexample->mediators, 0U);
}

TEST(Oracle, InitialObjectForEmptyDiagram) {
  const std::vector<SetMap> none;
  EXPECT_TRUE(universal_property_check(GBCSpace(), none, Diagram::empty(), Side::Colimit).pass);
  const Verdict v = universal_property_check(final_point(), none, Diagram::empty(), Side::Colimit);
  EXPECT_FALSE(v.pass);
}

TEST(Oracle, NonCommutingLegsFail) {
  const GBCSpace x = max_max(kTwo);
  const Morphism f = identity(x);
  const Morphism swap = make_morphism(x, x, SetMap(kTwo, kTwo, {1, 0}));
  const Diagram d = Diagram::parallel(f, swap);
  const std::vector<SetMap> legs{SetMap::identity(kTwo), SetMap::identity(kTwo)};
  EXPECT_FALSE(universal_property_check(x, legs, d, Side::Limit).pass);
}

TEST(Oracle, ClassicalTestObjectsOnly) {
  const Verdict v = universal_property_check(unit_point(), std::vector<SetMap>{}, Diagram::empty(), Side::Limit,
                                             OracleOptions{3, true});
  EXPECT_TRUE(v.pass);
  for (const GBCSpace& t : test_objects(3, true)) EXPECT_TRUE(t.classical());
}

TEST(Oracle, Errors) {
  EXPECT_THROW(universal_property_check(final_point(), std::vector<SetMap>{}, Diagram::empty(), Side::Limit,
                                        OracleOptions{9, false}),
               CapExceeded);
  const Carrier c = kTwo;
  const GroupAction swap(c, std::vector<std::vector<std::size_t>>{{1, 0}});
  const GBCSpace x(Relation::full(c), PointSet::full(c), swap);
  const LimitResult l = limit(Diagram::single(x));
  EXPECT_THROW(universal_property_check(l.cone, Diagram::single(x)), UnsupportedDiagram);
}

TEST(Oracle, DeterministicVerdicts) {
  const GBCSpace x = min_min(kTwo);
  const Diagram d = Diagram::discrete({x, max_empty(kTwo)});
  const LimitResult l = limit(d);
  const Verdict a = universal_property_check(l.cone, d);
  const Verdict b = universal_property_check(l.cone, d);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_EQ(a.cones, b.cones);
  EXPECT_EQ(a.tests, b.tests);
}
