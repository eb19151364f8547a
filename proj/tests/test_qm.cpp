#include <gtest/gtest.h>

#include "coverlink/groups.hpp"
#include "coverlink/qm.hpp"

using namespace coverlink;
using namespace coverlink::qm;

TEST(QmInstance, EnforcesRelation) {
  EXPECT_EQ(QmInstance::from_p(1).m, -7);
  EXPECT_EQ(QmInstance::from_p(-1).m, 1);
  EXPECT_EQ(QmInstance::from_p(5).group_order(), 92);
  EXPECT_THROW(QmInstance(1, -5), std::invalid_argument);
}

TEST(QmPresentation, Literal) {
  const auto p = qm_presentation(QmInstance::from_p(1));
  EXPECT_EQ(p.to_string(), "gens: y z\nrel: z^2 y^-7\nrel: z^-1 y z y\n");
}

TEST(QmPresentation, Orders) {
  for (long p = -1; p <= 5; ++p) {
    const auto q = QmInstance::from_p(p);
    EXPECT_EQ(enumerate_cosets(qm_presentation(q)).size(), static_cast<std::size_t>(q.group_order())) << p;
  }
}

TEST(QmPresentation, TwistSubstitution) {
  EXPECT_EQ(twisted_z(0).to_string(), "z");
  EXPECT_EQ(twisted_z(2).to_string(), "x y x y z");
  EXPECT_EQ(twisted_z(-1).to_string(), "y^-1 x^-1 z");
}

TEST(QmSurgery, ZeroCaseIsWirtingerPlusSurgeryRelators) {
  const auto s = qm_surgery_presentation(QmInstance::from_p(0));
  const auto g0 = g0_presentation();
  ASSERT_EQ(s.relators().size(), 5u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.relators()[i], g0.relators()[i]);
  EXPECT_EQ(s.relators()[3].to_string(), "x y");
  EXPECT_EQ(s.relators()[4].to_string(), "z y z y^-2");
}

TEST(QmChain, AllPresentationsAgree) {
  for (long p = -1; p <= 5; ++p) {
    const auto q = QmInstance::from_p(p);
    const auto top = qm_presentation(q);
    const auto mid = qm_intermediate_presentation(q);
    const auto surg = qm_surgery_presentation(q);
    const auto top_table = enumerate_cosets(top);
    const auto mid_table = enumerate_cosets(mid);
    const auto surg_table = enumerate_cosets(surg);
    EXPECT_EQ(top_table.size(), mid_table.size()) << p;
    EXPECT_EQ(top_table.size(), surg_table.size()) << p;
    for (const auto* pres : {&top, &mid, &surg}) EXPECT_EQ(abelianization(*pres).to_string(), "Z_4") << p;

    EXPECT_TRUE(check_homomorphism(surg, top_table, eliminate_x())) << p;
    EXPECT_TRUE(check_homomorphism(top, surg_table, inclusion_yz())) << p;
    EXPECT_TRUE(check_homomorphism(mid, top_table, inclusion_yz())) << p;
    EXPECT_TRUE(check_homomorphism(top, mid_table, inclusion_yz())) << p;
  }
}

TEST(QmEta, Claims) {
  for (long p = 0; p <= 5; ++p) {
    const auto q = QmInstance::from_p(p);
    const auto pres = qm_presentation(q);
    const auto table = enumerate_cosets(pres);
    const auto eta = eta_words(q);
    EXPECT_TRUE(word_is_trivial(table, eta.eta1.inverse() * eta.eta0)) << p;
    EXPECT_TRUE(subgroup_generates(enumerate_cosets(pres, {eta.eta0, parse_word("z")}))) << p;
  }
  const auto q1 = QmInstance::from_p(1);
  const auto t1 = enumerate_cosets(qm_presentation(q1));
  EXPECT_EQ(element_order(t1, eta_words(q1).eta0), 7u);
  EXPECT_EQ(element_order(t1, parse_word("y")), 14u);
}

TEST(QmExtension, KernelIsCyclic) {
  for (long p = 0; p <= 5; ++p) {
    const auto q = QmInstance::from_p(p);
    const auto pres = qm_presentation(q);
    const auto table = enumerate_cosets(pres, {parse_word("y^2")});
    EXPECT_EQ(table.size(), 4u) << p;
    const auto kernel = abelianization(reidemeister_schreier(pres, table));
    EXPECT_EQ(kernel.free_rank, 0u);
    ASSERT_EQ(kernel.invariant_factors.size(), 1u) << p;
    EXPECT_EQ(kernel.invariant_factors[0], 4 * p + 3) << p;
  }
}

TEST(P0Fixture, MatchesSurgeryPresentation) {
  const auto pd = p0_link_pd();
  const auto w = wirtinger(pd);
  EXPECT_EQ(w.generators(), (std::vector<std::string>{"a1", "a3", "a5", "a6"}));
  EXPECT_EQ(pd.linking_number(0, 1), 2);
  EXPECT_EQ(abelianization(w).to_string(), "Z^2");

  // The three-relator g_0 and the diagram's Wirtinger group are isomorphic: both
  // maps are relator-trivial, checked in the finite surgered quotients.
  const auto surgered = surgery_group(p0_surgery());
  const auto surgered_table = enumerate_cosets(surgered);
  const auto g0 = qm_surgery_presentation(QmInstance::from_p(0));
  const auto g0_table = enumerate_cosets(g0);
  EXPECT_EQ(surgered_table.size(), 12u);
  EXPECT_EQ(g0_table.size(), 12u);
  EXPECT_TRUE(check_homomorphism(g0, surgered_table, g0_to_pd_arcs()));
  EXPECT_TRUE(check_homomorphism(surgered, g0_table, pd_arcs_to_g0()));
  EXPECT_EQ(abelianization(surgered).to_string(), "Z_4");
}

TEST(P0Fixture, LongitudeOfJIsSurgeryCurve) {
  // z y z y^-1 is the framing curve of J; times y^-1 it is the S_-1 relator.
  const auto pd = p0_link_pd();
  const auto lam = substitute(longitude_word(pd, 0), pd_arcs_to_g0());
  EXPECT_EQ(lam, parse_word("z y z y^-1"));
  EXPECT_EQ(lam * parse_word("y^-1"), qm_surgery_presentation(QmInstance::from_p(0)).relators()[4]);
}

TEST(QmCertificate, SweepPasses) {
  for (long p = -1; p <= 5; ++p) {
    const auto c = certify(p);
    EXPECT_TRUE(c.passed()) << p;
    EXPECT_EQ(c.order, static_cast<std::size_t>(4 * (p == -1 ? 1 : 4 * p + 3))) << p;
  }
  EXPECT_THROW(certify(1, {8, Strategy::hlt_lookahead}), LimitExceeded);
}
