#include <random>

#include <gtest/gtest.h>

#include "coverlink/group_ring.hpp"
#include "coverlink/qm.hpp"

using namespace coverlink;

namespace {

GroupPtr gm(long p) { return FiniteGroup::from_presentation(qm::qm_presentation(qm::QmInstance::from_p(p))); }

GroupRingElement random_element(const GroupPtr& g, std::mt19937& rng, int terms = 4) {
  std::uniform_int_distribution<std::size_t> elem(0, g->order() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  GroupRingElement a(g);
  for (int k = 0; k < terms; ++k) a.add_term(elem(rng), coeff(rng));
  return a;
}

// Convolution written out over words: multiply representatives and look the
// product up in the table, never touching the multiplication table.
GroupRingElement convolve_by_words(const GroupRingElement& a, const GroupRingElement& b) {
  const auto& g = a.group();
  GroupRingElement out(g);
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) out.add_term(g->element(g->word(x) * g->word(y)), c * d);
  return out;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST(FiniteGroup, TablesAreConsistent) {
  const auto g = gm(1);
  ASSERT_EQ(g->order(), 28u);
  for (std::size_t a = 0; a < g->order(); ++a) {
    EXPECT_EQ(g->multiply(a, 0), a);
    EXPECT_EQ(g->multiply(0, a), a);
    EXPECT_EQ(g->multiply(a, g->inverse(a)), 0u);
    EXPECT_EQ(g->multiply(g->inverse(a), a), 0u);
    EXPECT_EQ(g->element(g->word(a)), a);
  }
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> e(0, 27);
  for (int k = 0; k < 500; ++k) {
    const auto a = e(rng), b = e(rng), c = e(rng);
    EXPECT_EQ(g->multiply(g->multiply(a, b), c), g->multiply(a, g->multiply(b, c)));
  }
}

TEST(FiniteGroup, RejectsNonRegularTables) {
  const auto pres = qm::qm_presentation(qm::QmInstance::from_p(1));
  EXPECT_THROW(FiniteGroup::from_table(enumerate_cosets(pres, {parse_word("y^2")})), NotRegularTable);
}

TEST(FiniteGroup, Names) {
  const auto g = gm(1);
  EXPECT_EQ(g->name(0), "e");
  EXPECT_EQ(g->element("e"), 0u);
  EXPECT_EQ(g->element(""), 0u);
  EXPECT_EQ(g->element("y^14"), 0u);
  EXPECT_NE(g->element("y"), 0u);
}

TEST(GroupRing, CyclicTwoSquare) {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto t = z2->element("t");
  const auto one_plus_t = GroupRingElement(z2, {{0, 1}, {t, 1}});
  EXPECT_EQ(one_plus_t * one_plus_t, GroupRingElement(z2, {{0, 2}, {t, 2}}));
}

TEST(GroupRing, UnitAndInverses) {
  const auto g = gm(1);
  const auto e = GroupRingElement::unit(g, 0);
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_element(g, rng);
    EXPECT_EQ(e * a, a);
    EXPECT_EQ(a * e, a);
  }
  const auto y2 = GroupRingElement::unit(g, g->element("y^2"));
  const auto ym2 = GroupRingElement::unit(g, g->element("y^-2"));
  EXPECT_EQ(y2 * ym2, e);
}

TEST(GroupRing, ZerosArePruned) {
  const auto g = gm(0);
  GroupRingElement a(g, {{1, 2}, {2, 0}});
  EXPECT_EQ(a.terms().size(), 1u);
  a.add_term(1, -2);
  EXPECT_TRUE(a.is_zero());
  EXPECT_THROW(a.add_term(12, 1), BadIndex);
}

TEST(GroupRing, MismatchedGroups) {
  const auto a = GroupRingElement::unit(gm(0), 0), b = GroupRingElement::unit(gm(0), 0);
  EXPECT_THROW(a + b, GroupMismatch);
  EXPECT_THROW(a * b, GroupMismatch);
}

TEST(GroupRing, MultiplicationMatchesWordOracle) {
  const auto g = gm(1);
  std::mt19937 rng(9);
  for (int k = 0; k < 100; ++k) {
    const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
    EXPECT_EQ(a * b, convolve_by_words(a, b));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(GroupRing, Involution) {
  const auto g = gm(1);
  const auto x = g->element("y z");
  const auto a = GroupRingElement(g, {{0, 3}, {x, -2}});
  EXPECT_EQ(a.involute(), GroupRingElement(g, {{0, 3}, {g->inverse(x), -2}}));
  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    const auto b = random_element(g, rng), c = random_element(g, rng);
    EXPECT_EQ(b.involute().involute(), b);
    EXPECT_EQ((b + c).involute(), b.involute() + c.involute());
    EXPECT_EQ((b * c).involute(), c.involute() * b.involute());
    EXPECT_EQ(convolve_by_words(b, c).involute(), convolve_by_words(c.involute(), b.involute()));
  }
}

TEST(GroupRing, Augmentation) {
  const auto g = gm(1);
  EXPECT_EQ(GroupRingElement(g, {{0, 3}, {5, -2}}).augment(), 1);
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto a = random_element(g, rng), b = random_element(g, rng);
    EXPECT_EQ((a * b).augment(), a.augment() * b.augment());
    EXPECT_EQ(a.involute().augment(), a.augment());
  }
}

TEST(RegularMatrix, IdentityAndCyclicTwo) {
  const auto g = gm(0);
  const auto m = GroupRingElement::unit(g, 0).regular_matrix();
  for (std::size_t i = 0; i < g->order(); ++i)
    for (std::size_t j = 0; j < g->order(); ++j) EXPECT_EQ(m[i][j], i == j ? 1 : 0);

  const auto z2 = FiniteGroup::cyclic(2);
  EXPECT_EQ(GroupRingElement(z2, {{0, -1}, {1, 2}}).regular_matrix(), (IntMatrix{{-1, 2}, {2, -1}}));
  EXPECT_EQ(GroupRingElement(z2, {{0, 5}, {1, -3}}).regular_matrix(), (IntMatrix{{5, -3}, {-3, 5}}));
}

TEST(RegularMatrix, EntriesFollowDefinition) {
  const auto g = gm(1);
  std::mt19937 rng(19);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_element(g, rng);
    const auto m = a.regular_matrix();
    const auto mi = a.involute().regular_matrix();
    for (std::size_t h = 0; h < g->order(); ++h)
      for (std::size_t x = 0; x < g->order(); ++x) {
        // coefficient of x h^-1, computed through words
        EXPECT_EQ(m[h][x], a.coefficient(g->element(g->word(x) * g->word(h).inverse())));
        EXPECT_EQ(mi[h][x], m[x][h]);
      }
  }
}

TEST(RegularMatrix, ReversesProducts) {
  // With entry (h, g) = coefficient of g h^-1 the representation turns
  // products around: R(a b) = R(b) R(a).
  const auto g = gm(1);
  std::mt19937 rng(23);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_element(g, rng), b = random_element(g, rng);
    EXPECT_EQ((a * b).regular_matrix(), matmul(b.regular_matrix(), a.regular_matrix()));
    auto sum = a.regular_matrix();
    const auto rb = b.regular_matrix();
    for (std::size_t i = 0; i < sum.size(); ++i)
      for (std::size_t j = 0; j < sum.size(); ++j) sum[i][j] += rb[i][j];
    EXPECT_EQ((a + b).regular_matrix(), sum);
  }
}

TEST(RegularMatrix, RowSumsAreAugmentation) {
  const auto g = gm(2);
  std::mt19937 rng(29);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_element(g, rng, 6);
    for (const auto& row : a.regular_matrix()) {
      std::int64_t s = 0;
      for (auto v : row) s += v;
      EXPECT_EQ(s, a.augment());
    }
  }
}
