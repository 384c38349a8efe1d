#include <gtest/gtest.h>

#include "brute.hpp"
#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

namespace {

const Carrier kTwo = Carrier::range(2);
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

void expect_cone_valid(const LimitResult& l, const Diagram& d) {
  EXPECT_FALSE(check_cone(l.cone, d).has_value());
}

void expect_cocone_valid(const ColimitResult& c, const Diagram& d) {
  EXPECT_FALSE(check_cocone(c.cocone, d).has_value());
}

}  // namespace

TEST(Product, EmptyProductIsFinalObject) {
  const LimitResult l = product(std::vector<GBCSpace>{});
  ASSERT_EQ(l.space.size(), 1U);
  EXPECT_TRUE(l.space.bounded_region().empty());
  EXPECT_EQ(l.space, final_point());
}

TEST(Product, FormulasOnAllPairsOfSmallSpaces) {
  const auto spaces = enumerate_spaces_up_to(2);
  for (const GBCSpace& x : spaces) {
    for (const GBCSpace& y : spaces) {
      const std::vector<GBCSpace> f{x, y};
      const LimitResult l = product(f);
      ASSERT_EQ(l.space.size(), x.size() * y.size());
      for (std::size_t p = 0; p < l.space.size(); ++p) {
        const std::size_t px = l.cone.legs[0](p);
        const std::size_t py = l.cone.legs[1](p);
        EXPECT_EQ(l.space.bounded_region().contains(p),
                  x.bounded_region().contains(px) || y.bounded_region().contains(py));
        for (std::size_t q = 0; q < l.space.size(); ++q) {
          EXPECT_EQ(l.space.max_entourage().contains(p, q),
                    x.max_entourage().contains(px, l.cone.legs[0](q)) &&
                        y.max_entourage().contains(py, l.cone.legs[1](q)));
        }
      }
    }
  }
}

TEST(Product, MaxEmptyFactors) {
  const std::vector<GBCSpace> f{max_empty(kTwo), max_empty(kThree)};
  EXPECT_TRUE(product(f).space.bounded_region().empty());
}

TEST(Product, LexicographicNames) {
  const std::vector<GBCSpace> f{min_min(Carrier({"a", "b"})), min_min(Carrier({"x", "y"}))};
  const Carrier c = product(f).space.carrier();
  EXPECT_EQ(std::vector<std::string>(c.elements().begin(), c.elements().end()),
            (std::vector<std::string>{"(a,x)", "(a,y)", "(b,x)", "(b,y)"}));
}

TEST(Coproduct, EmptyAndComponents) {
  EXPECT_EQ(coproduct(std::vector<GBCSpace>{}).space.size(), 0U);
  const GBCSpace x = space(kThree, {{0, 1}}, {2});
  const GBCSpace y = space(kTwo, {{0, 1}}, {});
  const std::vector<GBCSpace> s{x, y};
  const ColimitResult c = coproduct(s);
  EXPECT_EQ(components(c.space).count(), components(x).count() + components(y).count());
  EXPECT_EQ(c.space.bounded_region().size(), 1U);
  for (const Morphism& leg : c.cocone.legs) EXPECT_TRUE(is_morphism(leg.dom(), leg.cod(), leg.map()));
}

TEST(Equalizer, Examples) {
  const GBCSpace x = space(kThree, {{0, 1, 2}}, {0, 1, 2});
  const Morphism f = make_morphism(x, x, SetMap::identity(kThree));
  const LimitResult same = equalizer(f, f);
  EXPECT_EQ(same.space, x);
  const GBCSpace y = max_max(kTwo);
  const Morphism c0 = make_morphism(x, y, SetMap::constant(kThree, kTwo, 0));
  const Morphism c1 = make_morphism(x, y, SetMap::constant(kThree, kTwo, 1));
  EXPECT_EQ(equalizer(c0, c1).space.size(), 0U);
}

TEST(Coequalizer, Examples) {
  const GBCSpace y = space(kThree, {{0, 1}}, {2});
  const Morphism f = make_morphism(y, y, SetMap::identity(kThree));
  EXPECT_EQ(coequalizer(f, f).space, y);

  // Collapsing the bounded point 2 onto the unbounded point 0.
  const GBCSpace dom = unit_point();
  const Morphism g0 = make_morphism(dom, y, SetMap(dom.carrier(), kThree, {0}));
  const Morphism g2 = make_morphism(dom, y, SetMap(dom.carrier(), kThree, {2}));
  const ColimitResult q = coequalizer(g0, g2);
  EXPECT_EQ(q.space.size(), 2U);
  EXPECT_TRUE(q.space.bounded_region().empty());
  EXPECT_TRUE(components(q.space).connected());
}

TEST(Limit, SingleObject) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const LimitResult l = limit(Diagram::single(x));
    EXPECT_TRUE(is_isomorphism(l.cone.legs[0]));
    const ColimitResult c = colimit(Diagram::single(x));
    EXPECT_TRUE(is_isomorphism(c.cocone.legs[0]));
  }
}

TEST(Colimit, IdentitySpanJoinsCoarseStructures) {
  const GBCSpace apex = min_min(kThree);
  const GBCSpace left = space(kThree, {{0, 1}}, {0, 1, 2});
  const GBCSpace right = space(kThree, {{1, 2}}, {0, 1, 2});
  const Diagram d = Diagram::span(make_morphism(apex, left, SetMap::identity(kThree)),
                                  make_morphism(apex, right, SetMap::identity(kThree)));
  const ColimitResult c = colimit(d);
  ASSERT_EQ(c.space.size(), 3U);
  EXPECT_EQ(c.space.max_entourage().size(), c.space.size() * c.space.size());
  expect_cocone_valid(c, d);
}

TEST(Colimit, FiniteAnalogueOfSpanHasUnboundedPushout) {
  // max_max ← min_max → min_min on two points: the pushout is classical
  // on a finite carrier.
  const GBCSpace apex = min_max(kTwo);
  const Diagram d = Diagram::span(make_morphism(apex, max_max(kTwo), SetMap::identity(kTwo)),
                                  make_morphism(apex, min_min(kTwo), SetMap::identity(kTwo)));
  const ColimitResult c = colimit(d);
  EXPECT_TRUE(c.space.classical());
  EXPECT_EQ(c.space.max_entourage().size(), c.space.size() * c.space.size());
}

TEST(Limit, ConesCommuteOnEnumeratedSpans) {
  const auto spaces = enumerate_spaces_up_to(2);
  for (const GBCSpace& a : spaces) {
    for (const GBCSpace& b : spaces) {
      for (const Morphism& f : enumerate_morphisms(a, b)) {
        for (const Morphism& g : enumerate_morphisms(a, b)) {
          const Diagram par = Diagram::parallel(f, g);
          expect_cone_valid(limit(par), par);
          expect_cocone_valid(colimit(par), par);
          const Diagram sp = Diagram::span(f, g);
          expect_cocone_valid(colimit(sp), sp);
          const Diagram co = Diagram::cospan(f, g);
          expect_cone_valid(limit(co), co);
        }
      }
    }
  }
}

TEST(Quotient, NamesClassesByLeastMember) {
  const Carrier c({"a", "b", "c"});
  const Quotient q = quotient(min_min(c), Relation(c, {{2, 1}}));
  EXPECT_EQ(std::vector<std::string>(q.space.carrier().elements().begin(), q.space.carrier().elements().end()),
            (std::vector<std::string>{"a", "b"}));
}

TEST(Mediators, ProductMediatorIsPairing) {
  const std::vector<GBCSpace> f{max_max(kTwo), min_min(kTwo)};
  const LimitResult l = product(f);
  const GBCSpace t = min_min(kThree);
  Cone cone{t,
            {make_morphism(t, f[0], SetMap(kThree, kTwo, {0, 1, 1})),
             make_morphism(t, f[1], SetMap(kThree, kTwo, {1, 0, 1}))}};
  const auto m = limit_mediator(l, cone);
  ASSERT_TRUE(m.has_value());
  for (std::size_t x = 0; x < 3; ++x) {
    EXPECT_EQ(l.cone.legs[0]((*m)(x)), cone.legs[0](x));
    EXPECT_EQ(l.cone.legs[1]((*m)(x)), cone.legs[1](x));
  }
}

TEST(ExistsInClassical, Examples) {
  EXPECT_FALSE(exists_in_classical(Diagram::empty(), Side::Limit).exists);
  EXPECT_TRUE(exists_in_classical(Diagram::empty(), Side::Colimit).exists);
  const auto spaces = enumerate_spaces_up_to(3);
  for (const GBCSpace& x : spaces) {
    if (!x.classical()) {
      EXPECT_THROW(exists_in_classical(Diagram::single(x), Side::Limit), NonClassicalInput);
      continue;
    }
    for (const GBCSpace& y : spaces) {
      if (!y.classical()) continue;
      const Diagram d = Diagram::discrete({x, y});
      EXPECT_TRUE(exists_in_classical(d, Side::Limit).exists);
      EXPECT_TRUE(exists_in_classical(d, Side::Colimit).exists);
    }
  }
}

TEST(Admissible, FiniteClassicalDiagramsAreAdmissible) {
  const auto spaces = enumerate_spaces_up_to(2);
  for (const GBCSpace& a : spaces) {
    if (!a.classical()) continue;
    EXPECT_TRUE(admissible(Diagram::single(a)).admissible);
    for (const GBCSpace& b : spaces) {
      if (!b.classical()) continue;
      for (const Morphism& f : enumerate_morphisms(a, b)) {
        for (const Morphism& g : enumerate_morphisms(a, b)) {
          const Diagram d = Diagram::parallel(f, g);
          const Admissibility adm = admissible(d);
          EXPECT_TRUE(adm.admissible);
          EXPECT_LE(adm.rounds, adm.colimit_carrier.size() + 1);
          EXPECT_EQ(adm.admissible, exists_in_classical(d, Side::Colimit).exists);
        }
      }
    }
  }
}

TEST(Admissible, NonClassicalInputReportsWitness) {
  const GBCSpace x = max_empty(kTwo);
  const Admissibility adm = admissible(Diagram::single(x));
  EXPECT_FALSE(adm.admissible);
  ASSERT_TRUE(adm.witness.has_value());
  EXPECT_FALSE(adm.witness->preimage.empty());
}

TEST(Preservation, Examples) {
  const auto spaces = enumerate_spaces_up_to(2);
  for (const GBCSpace& x : spaces) {
    if (!x.classical()) continue;
    for (const GBCSpace& y : spaces) {
      if (!y.classical()) continue;
      const Diagram d = Diagram::discrete({x, y});
      EXPECT_TRUE(preservation_test(d, Side::Limit).ok);
      EXPECT_TRUE(preservation_test(d, Side::Colimit).ok);
      for (const Morphism& f : enumerate_morphisms(x, y)) {
        for (const Morphism& g : enumerate_morphisms(x, y)) {
          const Diagram par = Diagram::parallel(f, g);
          EXPECT_TRUE(preservation_test(par, Side::Limit).ok) << preservation_test(par, Side::Limit).reason;
          EXPECT_TRUE(preservation_test(par, Side::Colimit).ok) << preservation_test(par, Side::Colimit).reason;
        }
      }
    }
  }
}

TEST(Limit, SubspaceDiagramEmbedsInAmbientLimit) {
  const GBCSpace x = space(kThree, {{0, 1}}, {0, 1, 2});
  const GBCSpace y = max_max(kTwo);
  const PointSet a(kThree, {0, 1});
  const GBCSpace xa = subspace(x, a);
  const std::vector<GBCSpace> amb{x, y};
  const std::vector<GBCSpace> sub{xa, y};
  const LimitResult big = product(amb);
  const LimitResult small = product(sub);
  const Cone into_big{small.space,
                      {compose(subspace_inclusion(x, a), small.cone.legs[0]), small.cone.legs[1]}};
  const auto m = limit_mediator(big, into_big);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(m->is_injective());
  EXPECT_TRUE(is_morphism(small.space, big.space, *m));
}

TEST(MonoidalUnits, TensorAndProduct) {
  for (const GBCSpace& x : enumerate_spaces_up_to(3)) {
    const std::vector<GBCSpace> f{x, final_point()};
    const LimitResult l = product(f);
    EXPECT_TRUE(is_isomorphism(l.cone.legs[0]));
  }
}
