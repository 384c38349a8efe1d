#include <gtest/gtest.h>

#include "brute.hpp"
#include "coarsecat/coarsecat.hpp"

using namespace coarsecat;

namespace {

Carrier digits(std::size_t lo, std::size_t hi) {
  std::vector<std::string> names;
  for (std::size_t i = lo; i <= hi; ++i) names.push_back(std::to_string(i));
  return Carrier(names);
}

Relation rel(const Carrier& c, std::initializer_list<std::pair<const char*, const char*>> pairs) {
  Relation u(c);
  for (const auto& [a, b] : pairs) u.insert(c.index(a), c.index(b));
  return u;
}

std::vector<Relation> all_relations(const Carrier& c) {
  const std::size_t n = c.size();
  std::vector<Relation> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n * n)); ++mask) {
    Relation u(c);
    for (std::size_t k = 0; k < n * n; ++k) {
      if ((mask >> k) & 1U) u.insert(k / n, k % n);
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

TEST(Bits, SetCountAndIterate) {
  BitVector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3U);
  EXPECT_EQ(v.indices(), (std::vector<std::size_t>{0, 64, 129}));
  EXPECT_EQ((~v).count(), 127U);
  EXPECT_EQ(v.next(1), 64U);
  BitVector w(130);
  w.set(64);
  EXPECT_TRUE(w.is_subset_of(v));
  EXPECT_FALSE(v.is_subset_of(w));
  EXPECT_TRUE(v.intersects(w));
}

TEST(Carrier, DistinctNamesAndStructuralIdentity) {
  EXPECT_THROW(Carrier({"a", "a"}), InvalidArgument);
  EXPECT_EQ(Carrier({"a", "b"}), Carrier({"a", "b"}));
  EXPECT_FALSE(Carrier({"a", "b"}) == Carrier({"b", "a"}));
  EXPECT_EQ(Carrier::range(3).name(2), "2");
}

TEST(Relation, CrossCarrierOperationsFail) {
  const Relation u(Carrier({"a", "b"}));
  const Relation v(Carrier({"b", "a"}));
  EXPECT_THROW(compose(u, v), CarrierMismatch);
  EXPECT_THROW(unite(u, v), CarrierMismatch);
  EXPECT_THROW(thicken(u, PointSet(Carrier({"x", "y"}))), CarrierMismatch);
}

TEST(Inverse, Examples) {
  const Carrier c = digits(1, 3);
  EXPECT_EQ(inverse(rel(c, {{"1", "2"}})), rel(c, {{"2", "1"}}));
  EXPECT_EQ(inverse(Relation::diagonal(c)), Relation::diagonal(c));
}

TEST(Inverse, InvolutionOnRandomRelations) {
  std::mt19937_64 rng(11);
  const Carrier c = Carrier::range(6);
  for (int i = 0; i < 100; ++i) {
    const Relation u = brute::random_relation(c, rng, 0.3);
    EXPECT_EQ(inverse(inverse(u)), u);
    const brute::Matrix m = brute::to_matrix(u);
    const brute::Matrix inv = brute::to_matrix(inverse(u));
    for (std::size_t x = 0; x < 6; ++x) {
      for (std::size_t y = 0; y < 6; ++y) EXPECT_EQ(inv[x][y], m[y][x]);
    }
  }
}

TEST(Compose, Examples) {
  const Carrier c = digits(1, 4);
  const Relation u = rel(c, {{"1", "2"}, {"3", "3"}});
  EXPECT_EQ(compose(Relation::diagonal(c), u), u);
  EXPECT_EQ(compose(rel(c, {{"1", "2"}}), rel(c, {{"2", "3"}})), rel(c, {{"1", "3"}}));
  EXPECT_TRUE(compose(rel(c, {{"1", "2"}}), rel(c, {{"3", "4"}})).empty());
}

TEST(Compose, AgreesWithPairChaseOnRandomRelations) {
  std::mt19937_64 rng(12);
  const Carrier c = Carrier::range(9);
  for (int i = 0; i < 50; ++i) {
    const Relation u = brute::random_relation(c, rng, 0.2);
    const Relation v = brute::random_relation(c, rng, 0.2);
    const brute::Matrix mu = brute::to_matrix(u);
    const brute::Matrix mv = brute::to_matrix(v);
    const brute::Matrix uv = brute::to_matrix(compose(u, v));
    for (std::size_t x = 0; x < 9; ++x) {
      for (std::size_t y = 0; y < 9; ++y) {
        bool expect = false;
        for (std::size_t z = 0; z < 9; ++z) expect = expect || (mu[x][z] && mv[z][y]);
        EXPECT_EQ(uv[x][y], expect);
      }
    }
  }
}

TEST(Compose, AssociativeWithDiagonalUnitExhaustiveOnThreePoints) {
  const Carrier c = Carrier::range(3);
  const auto rels = all_relations(c);
  const Relation d = Relation::diagonal(c);
  for (const Relation& u : rels) {
    EXPECT_EQ(compose(d, u), u);
    EXPECT_EQ(compose(u, d), u);
  }
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Relation& u = rels[rng() % rels.size()];
    const Relation& v = rels[rng() % rels.size()];
    const Relation& w = rels[rng() % rels.size()];
    EXPECT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
  }
}

TEST(Compose, AssociativeOnLargerRandomCarriers) {
  std::mt19937_64 rng(14);
  const Carrier c = Carrier::range(70);
  for (int i = 0; i < 10; ++i) {
    const Relation u = brute::random_relation(c, rng, 0.03);
    const Relation v = brute::random_relation(c, rng, 0.03);
    const Relation w = brute::random_relation(c, rng, 0.03);
    EXPECT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
  }
}

TEST(Thicken, Examples) {
  const Carrier c = digits(0, 5);
  Relation band(c);
  for (std::size_t x = 0; x < 6; ++x) {
    for (std::size_t y = 0; y < 6; ++y) {
      if ((x > y ? x - y : y - x) <= 1) band.insert(x, y);
    }
  }
  const PointSet b(c, {2});
  EXPECT_EQ(thicken(Relation::diagonal(c), b), b);
  EXPECT_EQ(thicken(band, b), PointSet(c, {1, 2, 3}));
  EXPECT_TRUE(thicken(band, PointSet(c)).empty());
}

TEST(Thicken, CompositionAndUnionLawsExhaustiveOnThreePoints) {
  const Carrier c = Carrier::range(3);
  const auto rels = all_relations(c);
  std::vector<PointSet> sets;
  for (std::size_t mask = 0; mask < 8; ++mask) {
    PointSet s(c);
    for (std::size_t i = 0; i < 3; ++i) {
      if ((mask >> i) & 1U) s.insert(i);
    }
    sets.push_back(s);
  }
  // All U, V, B on three points: 512 · 512 · 8 triples.
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (std::size_t j = 0; j < rels.size(); ++j) {
      const Relation& u = rels[i];
      const Relation& v = rels[j];
      const Relation uv = compose(u, v);
      const Relation uuv = unite(u, v);
      for (const PointSet& b : sets) {
        ASSERT_EQ(thicken(uv, b), thicken(u, thicken(v, b)));
        ASSERT_EQ(thicken(uuv, b), unite(thicken(u, b), thicken(v, b)));
      }
    }
  }
}

TEST(Thicken, AgreesWithDefinition) {
  std::mt19937_64 rng(15);
  const Carrier c = Carrier::range(10);
  for (int i = 0; i < 50; ++i) {
    const Relation u = brute::random_relation(c, rng, 0.15);
    const PointSet b = brute::random_subset(c, rng, 0.3);
    const PointSet t = thicken(u, b);
    for (std::size_t x = 0; x < 10; ++x) {
      bool expect = false;
      for (std::size_t y : b.indices()) expect = expect || u.contains(x, y);
      EXPECT_EQ(t.contains(x), expect);
    }
  }
}

TEST(EquivalenceClosure, Examples) {
  const Carrier c = digits(1, 4);
  EXPECT_EQ(equivalence_closure(c, {}), Relation::diagonal(c));
  const std::vector<Relation> gens{rel(c, {{"1", "2"}, {"2", "3"}})};
  Relation expect = Relation::diagonal(c);
  for (const char* a : {"1", "2", "3"}) {
    for (const char* b : {"1", "2", "3"}) expect.insert(c.index(a), c.index(b));
  }
  EXPECT_EQ(equivalence_closure(c, gens), expect);
  const std::vector<Relation> full{Relation::full(c)};
  EXPECT_EQ(equivalence_closure(c, full), Relation::full(c));
}

TEST(EquivalenceClosure, AgreesWithPairChase) {
  std::mt19937_64 rng(16);
  for (std::size_t n : {1U, 2U, 5U, 12U, 40U, 64U, 65U}) {
    const Carrier c = Carrier::range(n);
    for (int i = 0; i < 20; ++i) {
      const std::vector<Relation> gens{brute::random_relation(c, rng, 1.0 / (2.0 * n)),
                                       brute::random_relation(c, rng, 1.0 / (2.0 * n))};
      const Relation e = equivalence_closure(c, gens);
      EXPECT_TRUE(e.is_equivalence());
      EXPECT_EQ(brute::to_matrix(e), brute::chase_closure(n, {brute::to_matrix(gens[0]), brute::to_matrix(gens[1])}));
    }
  }
}

TEST(EquivalenceClosure, IdempotentAndMonotone) {
  std::mt19937_64 rng(17);
  const Carrier c = Carrier::range(8);
  for (int i = 0; i < 100; ++i) {
    const Relation u = brute::random_relation(c, rng, 0.05);
    const Relation v = unite(u, brute::random_relation(c, rng, 0.05));
    const std::vector<Relation> gu{u};
    const std::vector<Relation> gv{v};
    const Relation eu = equivalence_closure(c, gu);
    const std::vector<Relation> geu{eu};
    EXPECT_EQ(equivalence_closure(c, geu), eu);
    EXPECT_TRUE(is_subset(eu, equivalence_closure(c, gv)));
  }
}

TEST(SetOperations, Examples) {
  const Carrier c = digits(1, 3);
  EXPECT_TRUE(is_subset(Relation::diagonal(c), Relation::full(c)));
  const PointSet s = PointSet::from_names(c, std::vector<std::string>{"1", "2"});
  EXPECT_EQ(restrict(Relation::full(c), s), Relation::full(sub_carrier(s)));
  std::mt19937_64 rng(18);
  for (int i = 0; i < 100; ++i) {
    const Relation u = brute::random_relation(Carrier::range(5), rng, 0.3);
    EXPECT_TRUE(unite(u, inverse(u)).is_symmetric());
  }
}

TEST(SetMap, ImagesPreimagesAndComposition) {
  const Carrier a = digits(0, 2);
  const Carrier b = Carrier({"x", "y"});
  const SetMap f(a, b, {0, 0, 1});
  EXPECT_EQ(image(f, PointSet(a, {0, 1})), PointSet(b, {0}));
  EXPECT_EQ(preimage(f, PointSet(b, {0})), PointSet(a, {0, 1}));
  EXPECT_FALSE(f.is_injective());
  EXPECT_TRUE(f.is_surjective());
  EXPECT_EQ(compose(SetMap::identity(b), f), f);
  EXPECT_THROW(SetMap(a, b, {0, 2, 1}), InvalidArgument);
}
