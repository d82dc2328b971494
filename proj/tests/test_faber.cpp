#include <gtest/gtest.h>

#include <random>

#include "chowkit/faber.hpp"

using namespace chowkit;

namespace {

GradedPoly S(const char* s) { return parse_poly(four_table(), s); }
GradedPoly F(const char* s) { return parse_poly(faber_table(), s); }

GradedPoly random_poly(const TablePtr& t, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-7, 7), ex(0, 2);
  GradedPoly p(t);
  for (int i = 0; i < 5; ++i) {
    Monomial m(t->size());
    for (std::size_t v = 0; v < t->size(); ++v) m[v] = ex(rng);
    p.add_term(m, coef(rng));
  }
  return p;
}

}  // namespace

TEST(FaberMaps, Examples) {
  auto c = build_maps();
  EXPECT_EQ(c.phi.image("H"), F("9*lambda1 - 3*delta1 - delta0"));
  EXPECT_EQ(c.phi.image("delta11"),
            F("-5*lambda1^2 + lambda1*delta0/2 + lambda1*delta1 + delta1^2/2 + kappa2/2"));
  EXPECT_EQ(c.psi.image("delta0"), S("9*lambda1 - 3*delta1 - H"));
  EXPECT_EQ(c.psi.image("kappa2"), S("2*delta11 + lambda1^2 + lambda1*delta1 + lambda1*H - delta1^2"));
  for (const char* v : {"lambda1", "delta1"}) {
    EXPECT_EQ(c.phi.image(v), F(v));
    EXPECT_EQ(c.psi.image(v), S(v));
  }
}

TEST(FaberMaps, MutuallyInverse) {
  auto c = build_maps();
  EXPECT_TRUE(verify_inverse(c));
  EXPECT_EQ(substitute(substitute(S("H"), c.phi), c.psi), S("H"));
  EXPECT_EQ(substitute(substitute(F("kappa2"), c.psi), c.phi), F("kappa2"));
  std::mt19937 rng(71);
  for (int i = 0; i < 30; ++i) {
    auto p = random_poly(four_table(), rng);
    auto q = random_poly(faber_table(), rng);
    EXPECT_EQ(substitute(substitute(p, c.phi), c.psi), p);
    EXPECT_EQ(substitute(substitute(q, c.psi), c.phi), q);
  }
}

TEST(FaberMaps, BrokenMapIsRejected) {
  auto c = build_maps();
  c.phi.assign("H", F("9*lambda1 - 3*delta1 + delta0"));
  EXPECT_FALSE(verify_inverse(c));
  auto d = build_maps();
  d.psi.assign("kappa2", S("lambda1"));
  EXPECT_FALSE(verify_inverse(d));
}

TEST(FaberMaps, PreserveGrading) {
  auto c = build_maps();
  EXPECT_TRUE(preserves_grading(c.phi));
  EXPECT_TRUE(preserves_grading(c.psi));
}

// Oracle: for a monomial ideal in the source, counts are known directly, and
// a graded isomorphism preserves them together with the Hilbert function.
TEST(FaberIdeal, TransportPreservesInvariants) {
  std::vector<GradedPoly> rel{S("H^3"), S("lambda1*delta1*H"), S("delta11^2"), S("lambda1^2*delta11"),
                              S("delta1^4"), S("H*delta1^3")};
  auto t = faber_ideal(rel, 6);
  EXPECT_EQ(t.counts, (std::map<long, std::size_t>{{3, 2}, {4, 4}}));
  EXPECT_EQ(t.hilbert_source, t.hilbert_target);
  EXPECT_TRUE(t.round_trip);
  EXPECT_EQ(t.minimal.size(), 6u);
  EXPECT_EQ(format_counts(t.counts), "{3:2, 4:4}");
}

TEST(FaberIdeal, RoundTripDetectsDifferentIdeals) {
  // A relation that is already implied does not change the profile.
  std::vector<GradedPoly> rel{S("H^3"), S("H^4"), S("delta1^3")};
  auto t = faber_ideal(rel, 5);
  EXPECT_EQ(t.counts, (std::map<long, std::size_t>{{3, 2}}));
  EXPECT_EQ(t.relations.size(), 3u);
  EXPECT_EQ(t.minimal.size(), 2u);
}

TEST(FaberReport, Fields) {
  auto r = check_faber_maps();
  EXPECT_TRUE(r.passed());
  auto c = check_faber_comparison({S("H^3")}, 4);
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(c.witness.front().first, "maps_inverse");
}
