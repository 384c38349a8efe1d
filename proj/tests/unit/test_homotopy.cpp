#include <gtest/gtest.h>

#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

namespace {

const Carrier kThree = Carrier::range(3);

GBCSpace space(const Carrier& c, std::vector<std::vector<std::size_t>> classes, std::vector<std::size_t> bounded) {
  Relation e = Relation::diagonal(c);
  for (const auto& cls : classes) {
    for (std::size_t x : cls) {
      for (std::size_t y : cls) e.insert(x, y);
    }
  }
  PointSet b(c);
  for (std::size_t x : bounded) b.insert(x);
  return GBCSpace(e, b);
}

}  // namespace

TEST(Close, Examples) {
  const GBCSpace x = space(kThree, {{0, 1}}, {0, 1, 2});
  const Morphism id = identity(x);
  EXPECT_TRUE(are_close(id, id));
  const GBCSpace pt = unit_point();
  const Morphism c0 = make_morphism(pt, x, SetMap::constant(pt.carrier(), kThree, 0));
  const Morphism c1 = make_morphism(pt, x, SetMap::constant(pt.carrier(), kThree, 1));
  const Morphism c2 = make_morphism(pt, x, SetMap::constant(pt.carrier(), kThree, 2));
  EXPECT_TRUE(are_close(c0, c1));
  EXPECT_FALSE(are_close(c0, c2));
}

TEST(Close, AgreesWithGluedMapAndIsAnEquivalenceRelation) {
  const auto spaces = enumerate_spaces_up_to(3);
  for (const GBCSpace& x : spaces) {
    for (const GBCSpace& y : spaces) {
      if (x.size() * y.size() > 6) continue;
      const auto homs = enumerate_morphisms(x, y);
      for (const Morphism& f : homs) {
        EXPECT_TRUE(are_close(f, f));
        for (const Morphism& g : homs) {
          const bool fg = are_close(f, g);
          ASSERT_EQ(fg, glued_map_validates(f, g));
          ASSERT_EQ(fg, are_close(g, f));
          if (!fg) continue;
          for (const Morphism& h : homs) {
            if (are_close(g, h)) ASSERT_TRUE(are_close(f, h));
          }
        }
      }
    }
  }
}

TEST(Equivalence, Examples) {
  const GBCSpace x = space(kThree, {{0, 1}}, {0, 1, 2});
  const EquivalenceVerdict v = is_equivalence(identity(x));
  ASSERT_TRUE(v.equivalence);
  EXPECT_TRUE(are_close(compose(*v.inverse, identity(x)), identity(x)));

  // X_h empty: the bounded part is everything.
  const GBCSpace b = max_max(kThree);
  const Split s = split(b);
  EXPECT_TRUE(is_equivalence(s.to_coproduct).equivalence);

  // A point inside one coarse class is equivalent to the class.
  const GBCSpace cls = max_max(Carrier::range(2));
  const PointSet a(cls.carrier(), {0});
  EXPECT_TRUE(is_equivalence(subspace_inclusion(cls, a)).equivalence);

  // Different numbers of classes are never equivalent.
  EXPECT_FALSE(is_equivalence(subspace_inclusion(min_min(Carrier::range(2)), a)).equivalence);
}

TEST(Equivalence, WitnessIsSymmetric) {
  for (const GBCSpace& x : enumerate_spaces_up_to(2)) {
    for (const GBCSpace& y : enumerate_spaces_up_to(3)) {
      for (const Morphism& f : enumerate_morphisms(x, y)) {
        const EquivalenceVerdict v = is_equivalence(f);
        if (!v.equivalence) continue;
        ASSERT_TRUE(v.inverse.has_value());
        EXPECT_TRUE(are_close(compose(f, *v.inverse), identity(y)));
        EXPECT_TRUE(are_close(compose(*v.inverse, f), identity(x)));
        EXPECT_TRUE(is_equivalence(*v.inverse).equivalence);
      }
    }
  }
}

TEST(Equivalence, SearchCap) {
  const GBCSpace x = min_min(Carrier::range(6));
  EXPECT_THROW(is_equivalence(identity(x)), CapExceeded);
  EXPECT_TRUE(is_equivalence(identity(x), 6).equivalence);
}

TEST(Flasque, Examples) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const FlasqueVerdict v = is_flasque(x, identity(x));
    if (x.bounded_region().empty()) {
      EXPECT_TRUE(v.flasque);
      EXPECT_EQ(v.k, 0U);
    } else {
      EXPECT_FALSE(v.flasque);
      EXPECT_EQ(v.failed_condition, 3);
    }
  }
}

TEST(Flasque, SearchReturnsAValidWitness) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const FlasqueVerdict v = is_flasque(x);
    if (!v.flasque) continue;
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(are_close(*v.witness, identity(x)));
    // The k-th iterate image avoids the bounded region.
    PointSet img = PointSet::full(x.carrier());
    for (std::size_t i = 0; i < v.k; ++i) img = image(v.witness->map(), img);
    EXPECT_TRUE(intersect(img, x.bounded_region()).empty());
  }
}

TEST(Flasque, ControlledSelfMapsSatisfyConditionTwo) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    for (const Morphism& f : enumerate_morphisms(x, x)) {
      const FlasqueVerdict v = is_flasque(x, f);
      EXPECT_NE(v.failed_condition, 2);
    }
  }
}

TEST(Flasque, WitnessFreeSearchCap) {
  EXPECT_THROW(is_flasque(max_empty(Carrier::range(6))), CapExceeded);
  EXPECT_TRUE(is_flasque(max_empty(Carrier::range(6)), identity(max_empty(Carrier::range(6)))).flasque);
}

TEST(BigFamily, Examples) {
  const GBCSpace x = space(Carrier::range(4), {{0, 1}}, {0, 1, 2, 3});
  const PointSet all = PointSet::full(x.carrier());
  EXPECT_TRUE(validate_big_family({x, {all}}).ok);
  EXPECT_TRUE(validate_complementary_pair(all, {x, {all}}).ok);

  const PointSet a(x.carrier(), {0, 1});
  const PointSet ab(x.carrier(), {0, 1, 2});
  EXPECT_TRUE(validate_big_family({x, {a, ab, all}}).ok);

  const FamilyVerdict unfiltered = validate_big_family({x, {PointSet(x.carrier(), {2}), PointSet(x.carrier(), {3})}});
  EXPECT_FALSE(unfiltered.ok);
  EXPECT_EQ(unfiltered.members.size(), 2U);

  const FamilyVerdict thin = validate_big_family({x, {PointSet(x.carrier(), {0})}});
  EXPECT_FALSE(thin.ok);

  EXPECT_FALSE(validate_complementary_pair(PointSet(x.carrier(), {3}), {x, {a}}).ok);
  EXPECT_TRUE(validate_complementary_pair(PointSet(x.carrier(), {2, 3}), {x, {a}}).ok);
}

TEST(Nice, Examples) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    EXPECT_TRUE(is_nice(x, PointSet::full(x.carrier())).nice);
    EXPECT_TRUE(is_nice(x, PointSet(x.carrier())).nice);
  }
  const GBCSpace h = max_empty(Carrier::range(2));
  EXPECT_TRUE(is_nice(h, PointSet(h.carrier(), {0})).nice);
}

TEST(Nice, ActionCounterexample) {
  const Carrier c({"a", "b", "c"});
  const GroupAction swap(c, std::vector<std::vector<std::size_t>>{{1, 0, 2}});
  const GBCSpace x(Relation::full(c), PointSet::full(c), swap);
  const PointSet a(c, {0, 1});
  const NiceVerdict v = is_nice(x, a, Quantification::Exhaustive);
  EXPECT_FALSE(v.nice);
  ASSERT_TRUE(v.failing_entourage.has_value());
  EXPECT_EQ(is_nice(x, a, Quantification::Fast).nice, v.nice);
}

TEST(Nice, RequiresInvariantSubset) {
  const Carrier c({"a", "b"});
  const GroupAction swap(c, std::vector<std::vector<std::size_t>>{{1, 0}});
  const GBCSpace x(Relation::full(c), PointSet::full(c), swap);
  EXPECT_THROW(is_nice(x, PointSet(c, {0})), NonInvariantGenerator);
}

TEST(Nice, FastPathAgreesOnSmallSpaces) {
  for (const GBCSpace& base : enumerate_spaces_up_to(3)) {
    for (const GBCSpace& x : with_cyclic_actions(base)) {
      const std::size_t n = x.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        PointSet a(x.carrier());
        for (std::size_t i = 0; i < n; ++i) {
          if ((mask >> i) & 1U) a.insert(i);
        }
        if (!x.action()->preserves(a)) continue;
        ASSERT_EQ(is_nice(x, a, Quantification::Fast).nice, is_nice(x, a, Quantification::Exhaustive).nice)
            << describe(x) << " A=" << mask;
      }
    }
  }
}

TEST(InvariantEntourages, CountsAndCap) {
  const GBCSpace x = max_max(kThree);
  // Every reflexive subrelation of the full relation: 2^6.
  EXPECT_EQ(invariant_reflexive_entourages(x).size(), 64U);
  EXPECT_THROW(invariant_reflexive_entourages(max_max(Carrier::range(5)), 10), CapExceeded);
}

TEST(Excision, Examples) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const PointSet all = PointSet::full(x.carrier());
    EXPECT_TRUE(is_coarsely_excisive(x, all, all).excisive);
    EXPECT_TRUE(is_coarsely_excisive(x, x.bounded_region(), x.unbounded_region()).excisive);
  }
  const GBCSpace x = max_max(kThree);
  const ExcisionVerdict no_cover = is_coarsely_excisive(x, PointSet(kThree, {0}), PointSet(kThree, {1}));
  EXPECT_FALSE(no_cover.excisive);
  EXPECT_EQ(no_cover.failed_condition, 1);
  ASSERT_TRUE(no_cover.point.has_value());
  EXPECT_EQ(*no_cover.point, 2U);

  const ExcisionVerdict thick = is_coarsely_excisive(x, PointSet(kThree, {0, 1}), PointSet(kThree, {2}));
  EXPECT_FALSE(thick.excisive);
  EXPECT_EQ(thick.failed_condition, 2);
}

TEST(Excision, CoproductSummands) {
  const auto spaces = enumerate_spaces_up_to(2);
  for (const GBCSpace& x : spaces) {
    for (const GBCSpace& y : spaces) {
      const std::vector<GBCSpace> s{x, y};
      const ColimitResult c = coproduct(s);
      const PointSet px = image(c.cocone.legs[0].map(), PointSet::full(x.carrier()));
      const PointSet py = image(c.cocone.legs[1].map(), PointSet::full(y.carrier()));
      EXPECT_TRUE(is_coarsely_excisive(c.space, px, py).excisive);
      for (const Relation& u : invariant_reflexive_entourages(c.space)) {
        EXPECT_TRUE(is_subset(thicken(u, px), px));
      }
    }
  }
}

TEST(Excision, FastPathAgreesOnSmallSpaces) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const std::size_t n = x.size();
    for (std::size_t ym = 0; ym < (std::size_t{1} << n); ++ym) {
      for (std::size_t zm = 0; zm < (std::size_t{1} << n); ++zm) {
        if ((ym | zm) != (std::size_t{1} << n) - 1) continue;
        PointSet y(x.carrier());
        PointSet z(x.carrier());
        for (std::size_t i = 0; i < n; ++i) {
          if ((ym >> i) & 1U) y.insert(i);
          if ((zm >> i) & 1U) z.insert(i);
        }
        const ExcisionVerdict fast = is_coarsely_excisive(x, y, z, Quantification::Fast);
        const ExcisionVerdict full = is_coarsely_excisive(x, y, z, Quantification::Exhaustive);
        ASSERT_EQ(fast.excisive, full.excisive);
        ASSERT_EQ(fast.failed_condition, full.failed_condition);
      }
    }
  }
}
