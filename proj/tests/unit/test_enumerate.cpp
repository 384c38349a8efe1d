#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "brute.hpp"
#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

TEST(EnumerateSpaces, Counts) {
  EXPECT_EQ(enumerate_spaces(0).size(), 1U);
  EXPECT_EQ(enumerate_spaces(1).size(), 2U);
  EXPECT_EQ(enumerate_spaces(2).size(), 6U);
  EXPECT_EQ(enumerate_spaces(3).size(), 22U);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(enumerate_spaces(n).size(), brute::count_spaces(n)) << n;
  EXPECT_EQ(enumerate_spaces_up_to(3).size(), 1U + 2U + 6U + 22U);
}

TEST(EnumerateSpaces, DistinctAndValid) {
  const auto spaces = enumerate_spaces(4);
  std::set<std::string> seen;
  for (const GBCSpace& x : spaces) {
    EXPECT_TRUE(x.max_entourage().is_equivalence());
    EXPECT_EQ(thicken(x.max_entourage(), x.bounded_region()), x.bounded_region());
    EXPECT_TRUE(seen.insert(describe(x)).second);
  }
}

TEST(EnumerateSpaces, CapExceeded) {
  EXPECT_THROW(enumerate_spaces(5), CapExceeded);
  EXPECT_NO_THROW(enumerate_spaces(5, 5));
  try {
    enumerate_spaces(6);
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.cap(), kDefaultSpaceCap);
    EXPECT_FALSE(e.flag().empty());
  }
}

TEST(EnumeratePartitions, BellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(enumerate_partitions(Carrier::range(n)).size(), bell[n]);
}

TEST(EnumerateMorphisms, AgreesWithBruteForceAndIsOrdered) {
  const auto spaces = enumerate_spaces_up_to(3);
  for (const GBCSpace& x : spaces) {
    for (const GBCSpace& y : spaces) {
      std::vector<std::vector<std::size_t>> expect;
      for (const auto& images : brute::all_maps(x.size(), y.size())) {
        if (brute::is_proper(x, y, images) && brute::is_controlled(x, y, images)) expect.push_back(images);
      }
      const auto got = enumerate_morphisms(x, y);
      ASSERT_EQ(got.size(), expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        const auto imgs = got[i].map().images();
        ASSERT_EQ(std::vector<std::size_t>(imgs.begin(), imgs.end()), expect[i]);
      }
      EXPECT_LE(got.size(), static_cast<std::size_t>(std::pow(y.size(), x.size())));
    }
  }
}

TEST(EnumerateMorphisms, Examples) {
  const GBCSpace final_pt = max_empty(Carrier::range(1));
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) EXPECT_EQ(count_morphisms(x, final_pt), 1U);
  EXPECT_EQ(count_morphisms(final_pt, unit_point()), 0U);
}

TEST(EnumerateMorphisms, CapExceeded) {
  const GBCSpace x = max_max(Carrier::range(4));
  EXPECT_THROW(enumerate_morphisms(x, x, 10), CapExceeded);
}

TEST(EnumerateMorphisms, EquivarianceFilter) {
  const Carrier c = Carrier::range(2);
  const GroupAction swap(c, std::vector<std::vector<std::size_t>>{{1, 0}});
  const GBCSpace x(Relation::full(c), PointSet::full(c), swap);
  // Equivariant self-maps of a free orbit of size 2: the two translations.
  EXPECT_EQ(count_morphisms(x, x), 2U);
}

TEST(Automorphisms, Counts) {
  EXPECT_EQ(automorphisms(min_min(Carrier::range(3))).size(), 6U);
  const GBCSpace mixed(Relation::diagonal(Carrier::range(3)), PointSet(Carrier::range(3), {0}));
  EXPECT_EQ(automorphisms(mixed).size(), 2U);
}

TEST(WithCyclicActions, ActionsPreserveStructure) {
  for (const GBCSpace& x : enumerate_spaces(3)) {
    for (const GBCSpace& y : with_cyclic_actions(x)) {
      ASSERT_TRUE(y.action().has_value());
      EXPECT_TRUE(y.action()->preserves(y.max_entourage()));
      EXPECT_TRUE(y.action()->preserves(y.bounded_region()));
    }
  }
}
