#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "chowkit/m3bar.hpp"

using namespace chowkit;

namespace {

const Presentation& pres() {
  static const Presentation p = load_presentation();
  return p;
}

GradedPoly M(const char* s) { return parse_poly(m3bar_table(), s); }

std::string raw_data() {
  std::ifstream f(default_relation_path(), std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Independent rank count: dense elimination over Q of all monomial multiples.
std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::map<long, std::size_t> dense_minimal_counts(const std::vector<GradedPoly>& gens, long maxdeg) {
  const auto& t = *gens.front().table();
  std::map<long, std::size_t> out;
  for (long d = 0; d <= maxdeg; ++d) {
    auto basis = monomials_of_degree(t, d);
    auto vec = [&](const GradedPoly& p) {
      std::vector<Rational> v(basis.size(), 0);
      for (const auto& [m, c] : p.terms()) v[std::find(basis.begin(), basis.end(), m) - basis.begin()] = c;
      return v;
    };
    std::vector<std::vector<Rational>> lower, all;
    for (const auto& g : gens) {
      long dg = weighted_degree(g).degree;
      if (dg < d)
        for (const auto& m : monomials_of_degree(t, d - dg)) lower.push_back(vec(g.shifted(m, 1)));
    }
    all = lower;
    for (const auto& g : gens)
      if (weighted_degree(g).degree == d) all.push_back(vec(g));
    auto extra = dense_rank(all) - dense_rank(lower);
    if (extra) out[d] = extra;
  }
  return out;
}

}  // namespace

TEST(Presentation, LoadsFifteenRelations) {
  const auto& p = pres();
  ASSERT_EQ(p.relations.size(), 15u);
  std::vector<std::string> names;
  for (const auto& r : p.relations) names.push_back(r.name);
  EXPECT_EQ(names, (std::vector<std::string>{"[A2]", "[A3]", "[A3^1]", "delta1^c", "k1(1)", "k11(2)", "[A4]",
                                             "delta11^c", "k11(1)", "k111(1)", "k111(4)", "m(1)", "k_h", "k1(2)",
                                             "k11(3)"}));
  EXPECT_EQ(p.format_version, 1);
  EXPECT_EQ(p.checksum.size(), 64u);
  EXPECT_TRUE(same_table(p.table, m3bar_table()));
}

TEST(Presentation, Examples) {
  const auto& p = pres();
  auto a = default_assignment(p);
  auto rel = relations_under(p, a);
  EXPECT_EQ(rel[p.index_of("[A2]")], M("24*(lambda1^2 - 2*lambda2)"));
  EXPECT_EQ(rel[p.index_of("k111(4)")], M("H*delta111"));
  EXPECT_EQ(rel[p.index_of("[A3^1]")], M("1/2*(H + lambda1 + delta1)*(3*H + lambda1 + delta1)*H"));
  EXPECT_EQ(weighted_degree(rel[p.index_of("[A3^1]")]).degree, 3);
}

TEST(Presentation, AliasesAreForcedByDegree) {
  const auto& p = pres();
  for (const char* name : {"k_h", "k1(2)", "k11(3)"})
    for (const auto& v : p.relation(name).variants) {
      EXPECT_TRUE(v.aliased) << name;
      EXPECT_TRUE(has_expected_degree(v.poly, p.relation(name).expected_degree)) << name;
    }
  EXPECT_FALSE(p.relation("[A4]").variants[0].aliased);
  ASSERT_EQ(p.aliases.size(), 2u);
  EXPECT_EQ(p.aliases[0].target, "delta11");
  EXPECT_EQ(p.aliases[1].target, "delta111");
}

TEST(Presentation, ChecksumAndParseErrors) {
  auto data = raw_data();
  EXPECT_NO_THROW(parse_presentation(data));
  auto tampered = data;
  tampered.replace(tampered.find("24*(lambda1^2"), 2, "25");
  EXPECT_THROW(parse_presentation(tampered), ChecksumMismatch);
  EXPECT_THROW(parse_presentation("format chowkit-relations 1\n"), ParseError);

  std::string body = "format chowkit-relations 1\ngenerators x:1\nrelation r\ndegree 1\nvariant a x +\nend\n";
  EXPECT_THROW(parse_presentation(body + "sha256 " + sha256_hex(body) + "\n"), ParseError);
  std::string good = "format chowkit-relations 1\ngenerators x:1\nrelation r\ndegree 1\nvariant a 2*x\nend\n";
  auto p = parse_presentation(good + "sha256 " + sha256_hex(good) + "\n");
  EXPECT_EQ(p.relations.size(), 1u);
}

TEST(DegreeAudit, LiteralReadingsAreFlagged) {
  const auto& p = pres();
  const auto& k11 = p.relation("k1(1)");
  const auto& lit = k11.variants[0];
  EXPECT_EQ(lit.id, "literal");
  auto info = weighted_degree(lit.poly);
  ASSERT_EQ(info.kind, DegreeInfo::Kind::Inhomogeneous);
  EXPECT_NE(describe_degree(lit.poly, 3).find("H*delta1^3"), std::string::npos);

  const auto& d11 = p.relation("delta11^c");
  EXPECT_EQ(d11.variants[d11.default_index].id, "stratum");
  EXPECT_FALSE(weighted_degree(d11.variants[0].poly).homogeneous());
  EXPECT_TRUE(has_expected_degree(d11.variants[1].poly, 4));

  auto literal = default_assignment(p);
  literal[p.index_of("k1(1)")] = 0;
  auto r = audit_degrees(p, literal);
  EXPECT_FALSE(r.passed());
}

TEST(DegreeAudit, DefaultsHaveStatedProfile) {
  const auto& p = pres();
  auto r = audit_degrees(p, default_assignment(p));
  EXPECT_TRUE(r.passed());
  auto it = std::find_if(r.witness.begin(), r.witness.end(), [](const auto& w) { return w.first == "profile"; });
  ASSERT_NE(it, r.witness.end());
  EXPECT_EQ(it->second, "{2:1, 3:5, 4:8, 5:1}");
}

TEST(Assignment, IdRoundTrip) {
  const auto& p = pres();
  for (const auto& a : all_assignments(p)) EXPECT_EQ(parse_assignment(p, assignment_id(p, a)), a);
  EXPECT_EQ(all_assignments(p).size(), 24u);
  EXPECT_EQ(parse_assignment(p, "default"), default_assignment(p));
  EXPECT_THROW(parse_assignment(p, "k_h=times"), ParameterError);
  EXPECT_THROW(parse_assignment(p, "nothing=plus"), ParameterError);
}

TEST(Elimination, Examples) {
  const auto& p = pres();
  auto s = system_of(p, default_assignment(p));
  auto [s1, e1] = eliminate_generator(s, "[A2]", "lambda2");
  EXPECT_EQ(e1.coefficient, -48);
  EXPECT_EQ(e1.primes, (std::set<Integer>{2, 3}));
  EXPECT_EQ(to_string(e1.substitution), "1/2*lambda1^2");
  EXPECT_TRUE(replay_step(s, e1));
  auto [s2, e2] = eliminate_generator(s1, "delta1^c", "delta111");
  EXPECT_EQ(e2.coefficient, 72);
  EXPECT_EQ(e2.primes, (std::set<Integer>{2, 3}));
  EXPECT_TRUE(replay_step(s1, e2));
  auto [s3, e3] = eliminate_generator(s2, "[A3]", "lambda3");
  EXPECT_EQ(e3.coefficient, 56);
  EXPECT_TRUE(e3.primes.count(7));
  EXPECT_TRUE(replay_step(s2, e3));
  EXPECT_TRUE(same_table(s3.table, four_table()));
  EXPECT_EQ(s3.relations.size(), 12u);

  EXPECT_THROW(eliminate_generator(s, "k11(2)", "delta11"), NotEliminable);
  EXPECT_THROW(eliminate_generator(s, "k11(1)", "delta11"), NotEliminable);
}

TEST(Elimination, PreservesHilbertFunction) {
  const auto& p = pres();
  auto s = system_of(p, default_assignment(p));
  auto before = hilbert_function(s.relations, s.table, 6);
  for (const auto& plan : standard_elimination_order()) {
    s = eliminate_generator(s, plan.relation, plan.variable).first;
    EXPECT_EQ(hilbert_function(s.relations, s.table, 6), before) << plan.variable;
  }
}

TEST(Elimination, OrderDoesNotMatter) {
  const auto& p = pres();
  auto start = system_of(p, default_assignment(p));
  auto a = rational_simplify(start, 6);
  auto b = rational_simplify(start, 6, {{"delta1^c", "delta111"}, {"[A2]", "lambda2"}, {"[A3]", "lambda3"}});
  EXPECT_TRUE(ideal_equal(a.system.relations, b.system.relations, MonomialOrder::grevlex(four_table())));
  EXPECT_EQ(a.counts, b.counts);
}

// The 15 relations generate the same ideal as the three solved generators
// together with a minimal generating set of the simplified relations.
TEST(Elimination, PullbackGeneratesSameIdeal) {
  const auto& p = pres();
  auto start = system_of(p, default_assignment(p));
  auto simp = rational_simplify(start, 6);
  auto T = m3bar_table();
  std::vector<GradedPoly> pulled;
  for (const auto& step : simp.steps)
    pulled.push_back(GradedPoly::variable(T, step.variable) - rename_into(step.substitution, T));
  for (const auto& g : simp.minimal) pulled.push_back(rename_into(g, T));
  EXPECT_TRUE(ideal_equal(start.relations, pulled, MonomialOrder::grevlex(T)));
}

TEST(RationalSimplify, GeneratorsAndCounts) {
  const auto& p = pres();
  auto simp = rational_simplify(p, default_assignment(p));
  std::vector<std::string> gens;
  for (const auto& v : simp.system.table->variables()) gens.push_back(v.name);
  EXPECT_EQ(gens, (std::vector<std::string>{"lambda1", "H", "delta1", "delta11"}));
  EXPECT_EQ(simp.counts, dense_minimal_counts(simp.system.relations, 6));
  EXPECT_EQ(simp.minimal.size(), simp.total);
}

TEST(RestrictOpenStratum, Examples) {
  const auto& p = pres();
  auto rel = relations_under(p, default_assignment(p));
  auto L = lambda_table();
  EXPECT_EQ(restrict_open_stratum(rel[p.index_of("[A3]")]),
            parse_poly(L, "36*lambda1^3 - 92*lambda1*lambda2 + 56*lambda3"));
  EXPECT_TRUE(restrict_open_stratum(rel[p.index_of("k1(1)")]).is_zero());
  EXPECT_EQ(restrict_open_stratum(rel[p.index_of("[A2]")]), parse_poly(L, "24*(lambda1^2 - 2*lambda2)"));
  EXPECT_EQ(restrict_open_stratum(rel[p.index_of("[A4]")]), a4_open_reference());
}

TEST(RestrictOpenStratum, AgreesWithOpenClassesInLowDegree) {
  const auto& p = pres();
  auto rel = relations_under(p, default_assignment(p));
  auto conv = calibrate_lambda_convention().convention;
  EXPECT_EQ(restrict_open_stratum(rel[p.index_of("[A2]")]), an_open_class(2, conv));
  EXPECT_EQ(restrict_open_stratum(rel[p.index_of("[A3]")]), an_open_class(3, conv));
}

// Every reading that passes the degree filter simplifies to 11 minimal
// relations, {3:3, 4:8}, so the search keeps nothing.
TEST(VariantSearch, NoAssignmentReachesStatedCounts) {
  const auto& p = pres();
  auto s = search_variants(p);
  EXPECT_EQ(s.candidates.size(), 24u);
  std::size_t homogeneous = 0;
  for (const auto& c : s.candidates) {
    if (!c.homogeneous) continue;
    ++homogeneous;
    EXPECT_EQ(*c.simplified_counts, (std::map<long, std::size_t>{{3, 3}, {4, 8}})) << c.id;
    EXPECT_EQ(*c.faber_counts, *c.simplified_counts) << c.id;
  }
  EXPECT_EQ(homogeneous, 4u);
  EXPECT_TRUE(s.surviving.empty());
  EXPECT_FALSE(s.report.passed());
  EXPECT_THROW(resolve_variants(p), UnresolvedPresentation);
  try {
    resolve_variants(p);
  } catch (const UnresolvedPresentation& e) {
    EXPECT_EQ(e.report.check, "variant_search");
  }
}

TEST(VariantSearch, ReportOrderIsLexicographic) {
  const auto& p = pres();
  auto s = search_variants(p);
  auto all = all_assignments(p);
  ASSERT_EQ(s.candidates.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(s.candidates[i].assignment, all[i]);
}
