#include <gtest/gtest.h>

#include <random>

#include "chowkit/gradedpoly.hpp"

using namespace chowkit;

namespace {

TablePtr m3_table() {
  return make_table({{"lambda1", 1}, {"lambda2", 2}, {"lambda3", 3}, {"H", 1},
                     {"delta1", 1}, {"delta11", 2}, {"delta111", 3}});
}

GradedPoly random_poly(const TablePtr& t, std::mt19937& rng, int terms = 4, int maxexp = 2) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 4), ex(0, maxexp);
  GradedPoly p(t);
  for (int i = 0; i < terms; ++i) {
    Monomial m(t->size());
    for (std::size_t v = 0; v < t->size(); ++v) m[v] = ex(rng);
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

}  // namespace

TEST(Rational, LowestTerms) {
  auto t = make_table({{"x", 1}});
  auto p = parse_poly(t, "6/4*x");
  EXPECT_EQ(p.coefficient(Monomial::unit(1, 0)), Rational(3, 2));
  EXPECT_EQ(to_string(parse_poly(t, "0/7")), "0");
}

TEST(GradedPoly, CanonicalZero) {
  auto t = m3_table();
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto p = random_poly(t, rng);
    EXPECT_TRUE((p - p).terms().empty());
  }
}

TEST(GradedPoly, RingAxiomsOnRandomInputs) {
  auto t = make_table({{"x", 1}, {"y", 2}, {"z", 1}});
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto a = random_poly(t, rng), b = random_poly(t, rng), c = random_poly(t, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * GradedPoly::constant(t, 1), a);
  }
}

TEST(GradedPoly, PrintParseRoundTrip) {
  auto t = m3_table();
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(t, rng, 6, 3);
    auto text = to_string(p);
    auto q = parse_poly(t, text);
    EXPECT_EQ(p, q) << text;
    EXPECT_EQ(to_string(q), text);
  }
}

TEST(GradedPoly, PrintFormat) {
  auto t = m3_table();
  EXPECT_EQ(to_string(parse_poly(t, "24*(lambda1^2 - 2*lambda2)")), "24*lambda1^2 - 48*lambda2");
  EXPECT_EQ(to_string(parse_poly(t, "1048/27*lambda1^3*H")), "1048/27*lambda1^3*H");
  EXPECT_EQ(to_string(parse_poly(t, "-H + 1/2")), "-H + 1/2");
  EXPECT_EQ(to_string(parse_poly(t, "-(-lambda1)")), "lambda1");
  EXPECT_EQ(parse_poly(t, "lambda1*H/2 + delta1^2/4"), parse_poly(t, "1/2*lambda1*H + 1/4*delta1^2"));
  EXPECT_THROW(parse_poly(t, "H/0"), ParseError);
}

TEST(GradedPoly, ParseErrors) {
  auto t = m3_table();
  EXPECT_THROW(parse_poly(t, "lambda9"), ParseError);
  EXPECT_THROW(parse_poly(t, "lambda1 +"), ParseError);
  EXPECT_THROW(parse_poly(t, "(H"), ParseError);
  EXPECT_THROW(parse_poly(t, "1/0"), ParseError);
  EXPECT_THROW(parse_poly(t, "H H"), ParseError);
}

TEST(WeightedDegree, Examples) {
  auto t = m3_table();
  auto a2 = parse_poly(t, "24*lambda1^2 - 48*lambda2");
  EXPECT_TRUE(weighted_degree(a2).homogeneous());
  EXPECT_EQ(weighted_degree(a2).degree, 2);

  auto bad = parse_poly(t, "lambda1 + lambda2");
  auto info = weighted_degree(bad);
  EXPECT_EQ(info.kind, DegreeInfo::Kind::Inhomogeneous);
  std::set<Monomial> w{info.witness.first, info.witness.second};
  EXPECT_TRUE(w.count(Monomial::unit(7, 0)));
  EXPECT_TRUE(w.count(Monomial::unit(7, 1)));

  EXPECT_EQ(weighted_degree(parse_poly(t, "H*delta111")).degree, 4);
  EXPECT_EQ(weighted_degree(GradedPoly(t)).kind, DegreeInfo::Kind::Zero);
}

TEST(WeightedDegree, AdditiveOnProducts) {
  auto t = m3_table();
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto p = homogeneous_part(random_poly(t, rng, 8), 3);
    auto q = homogeneous_part(random_poly(t, rng, 8), 4);
    if (p.is_zero() || q.is_zero()) continue;
    EXPECT_EQ(weighted_degree(p * q).degree, 7);
  }
}

TEST(DenominatorPrimes, Examples) {
  auto t = m3_table();
  EXPECT_EQ(denominator_primes(parse_poly(t, "1/2*H^2 + 3/4*delta1^2")), std::set<Integer>{2});
  EXPECT_TRUE(denominator_primes(parse_poly(t, "24*lambda1^2")).empty());
  EXPECT_EQ(denominator_primes(parse_poly(t, "1048/27*lambda1^3*H")), std::set<Integer>{3});
  EXPECT_EQ(prime_factors(Integer("1000000016000000063")), (std::set<Integer>{Integer(1000000007), Integer(1000000009)}));
}

TEST(Binomial, Examples) {
  EXPECT_EQ(binomial_exact(8, 3), 56);
  for (long n = 0; n < 20; ++n) EXPECT_EQ(binomial_exact(n, 0), 1);
  EXPECT_EQ(binomial_exact(4, 1), 4);
  EXPECT_EQ(binomial_exact(4, 5), 0);
  EXPECT_EQ(binomial_exact(4, -1), 0);
  EXPECT_EQ(factorial_exact(10), 3628800);
}

TEST(Symmetric, Examples) {
  auto t = make_table({{"h1", 1}, {"h2", 1}, {"h3", 1}});
  EXPECT_EQ(elementary_symmetric(t, 2, {"h1", "h2", "h3"}), parse_poly(t, "h1*h2 + h1*h3 + h2*h3"));
  EXPECT_EQ(elementary_symmetric(t, 0, {"h1", "h2"}), parse_poly(t, "1"));
  EXPECT_TRUE(elementary_symmetric(t, 3, {"h1", "h2"}).is_zero());
}

TEST(Substitute, Examples) {
  auto src = make_table({{"lambda1", 1}, {"H", 1}, {"delta1", 1}});
  auto dst = make_table({{"lambda1", 1}, {"delta0", 1}, {"delta1", 1}});
  RingMap m(src, dst, {{"H", parse_poly(dst, "9*lambda1 - 3*delta1 - delta0")}});
  EXPECT_EQ(substitute(parse_poly(src, "H"), m), parse_poly(dst, "9*lambda1 - 3*delta1 - delta0"));
  EXPECT_THROW(substitute(parse_poly(src, "lambda1*H"), m), MissingAssignment);

  RingMap shift(src, src, {{"lambda1", parse_poly(src, "lambda1 + delta1")}, {"H", parse_poly(src, "H")},
                           {"delta1", parse_poly(src, "delta1")}});
  EXPECT_EQ(substitute(parse_poly(src, "lambda1^2"), shift),
            parse_poly(src, "lambda1^2 + 2*lambda1*delta1 + delta1^2"));
}

TEST(Substitute, HomomorphismAndComposition) {
  auto t = make_table({{"x", 1}, {"y", 1}, {"z", 2}});
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    RingMap f(t, t), g(t, t);
    for (const char* v : {"x", "y", "z"}) {
      f.assign(v, random_poly(t, rng, 3, 1));
      g.assign(v, random_poly(t, rng, 3, 1));
    }
    auto p = random_poly(t, rng, 3, 2), q = random_poly(t, rng, 3, 2);
    EXPECT_EQ(substitute(p + q, f), substitute(p, f) + substitute(q, f));
    EXPECT_EQ(substitute(p * q, f), substitute(p, f) * substitute(q, f));
    EXPECT_EQ(substitute(p, RingMap::identity(t)), p);
    EXPECT_EQ(substitute(p, compose(f, g)), substitute(substitute(p, f), g));
  }
}

TEST(GradedPoly, TableMismatchIsReported) {
  auto a = make_table({{"x", 1}});
  auto b = make_table({{"y", 1}});
  EXPECT_THROW(GradedPoly::variable(a, "x") + GradedPoly::variable(b, "y"), TableMismatch);
  EXPECT_THROW(make_table({{"x", 1}, {"x", 2}}), Error);
  EXPECT_THROW(make_table({{"x", 0}}), Error);
}
