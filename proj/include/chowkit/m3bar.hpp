#pragma once

// The 15-relation presentation of the Chow ring of M3-bar: loading from the
// bundled data file, degree audit, search over the readings of unclear
// spots, elimination of redundant generators, and the rational
// simplification to four generators.

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chowkit/chern.hpp"
#include "chowkit/faber.hpp"
#include "chowkit/gradedpoly.hpp"
#include "chowkit/ideals.hpp"
#include "chowkit/report.hpp"

#ifndef CHOWKIT_DATA_DIR
#define CHOWKIT_DATA_DIR "data"
#endif

namespace chowkit {

class ChecksumMismatch : public Error {
 public:
  using Error::Error;
};

class NotEliminable : public Error {
 public:
  using Error::Error;
};

class UnresolvedPresentation : public Error {
 public:
  UnresolvedPresentation(const std::string& what, VerificationReport report)
      : Error(what), report(std::move(report)) {}
  VerificationReport report;
};

inline TablePtr m3bar_table() {
  static const TablePtr t = make_table(
      {{"lambda1", 1}, {"lambda2", 2}, {"lambda3", 3}, {"H", 1}, {"delta1", 1}, {"delta11", 2}, {"delta111", 3}});
  return t;
}

struct Variant {
  std::string id;
  std::string text;
  GradedPoly poly;
  bool aliased = false;  // used a symbol renamed by an alias record
};

struct Relation {
  std::string name;
  long expected_degree = 0;
  std::string anchor;
  std::vector<Variant> variants;
  std::vector<std::string> unparsed;  // readings quoted verbatim, not usable as polynomials
  std::size_t default_index = 0;

  bool flagged() const { return variants.size() > 1 || !unparsed.empty(); }
};

struct Alias {
  std::string symbol;
  int weight = 0;
  std::string target;
  std::string note;
};

struct Presentation {
  int format_version = 0;
  TablePtr table;
  std::vector<Relation> relations;
  std::vector<Alias> aliases;
  std::string checksum;  // sha256 of the data preceding the checksum line

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < relations.size(); ++i)
      if (relations[i].name == name) return i;
    throw ParameterError("no relation named " + std::string(name));
  }
  const Relation& relation(std::string_view name) const { return relations[index_of(name)]; }
};

/// Degree profile stated for the 15 relations.
inline const std::map<long, std::size_t>& stated_degree_profile() {
  static const std::map<long, std::size_t> p{{2, 1}, {3, 5}, {4, 8}, {5, 1}};
  return p;
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string default_relation_path() { return std::string(CHOWKIT_DATA_DIR) + "/m3bar_relations.txt"; }

namespace detail {

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Split off the first whitespace-delimited word.
inline std::pair<std::string, std::string> head(const std::string& line) {
  auto t = trim(line);
  auto sp = t.find_first_of(" \t");
  if (sp == std::string::npos) return {t, ""};
  return {t.substr(0, sp), trim(t.substr(sp + 1))};
}

}  // namespace detail

/// Parse relation data. The last line must be "sha256 <hex>" covering every
/// byte before it.
inline Presentation parse_presentation(const std::string& content) {
  auto fail = [](std::size_t line, const std::string& msg) -> ParseError {
    return ParseError("relation data line " + std::to_string(line) + ": " + msg);
  };
  // Locate the checksum line.
  std::string body = content;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
  auto nl = body.rfind('\n');
  std::string last = nl == std::string::npos ? body : body.substr(nl + 1);
  auto [kw, digest] = detail::head(last);
  if (kw != "sha256") throw ParseError("relation data has no trailing sha256 line");
  std::string covered = content.substr(0, nl == std::string::npos ? 0 : nl + 1);
  auto actual = sha256_hex(covered);
  if (actual != digest) throw ChecksumMismatch("relation data checksum " + actual + " does not match " + digest);

  Presentation p;
  p.checksum = actual;
  std::vector<Variable> gens;
  TablePtr parse_table;
  std::optional<RingMap> alias_map;
  std::optional<Relation> cur;
  std::optional<std::string> default_id;
  std::istringstream in(covered);
  std::string line;
  std::size_t lineno = 0;

  auto finish_tables = [&]() {
    if (parse_table) return;
    if (!p.table) throw ParseError("relation data: generators must precede relations");
    auto vars = p.table->variables();
    for (const auto& a : p.aliases) vars.push_back({a.symbol, a.weight});
    parse_table = make_table(vars);
    alias_map.emplace(parse_table, p.table);
    for (const auto& v : p.table->variables()) alias_map->assign(v.name, GradedPoly::variable(p.table, v.name));
    for (const auto& a : p.aliases) {
      if (p.table->weight(p.table->require(a.target)) != a.weight)
        throw ParseError("alias " + a.symbol + " changes the weight of " + a.target);
      alias_map->assign(a.symbol, GradedPoly::variable(p.table, a.target));
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto [key, rest] = detail::head(t);
    if (key == "format") {
      auto [name, version] = detail::head(rest);
      if (name != "chowkit-relations") throw fail(lineno, "unknown format " + name);
      p.format_version = std::stoi(version);
      if (p.format_version != 1) throw fail(lineno, "unsupported format version " + version);
    } else if (key == "generators") {
      std::istringstream gs(rest);
      std::string g;
      while (gs >> g) {
        auto colon = g.find(':');
        if (colon == std::string::npos) throw fail(lineno, "generator without weight: " + g);
        gens.push_back({g.substr(0, colon), std::stoi(g.substr(colon + 1))});
      }
      p.table = make_table(gens);
    } else if (key == "alias") {
      auto [sym, r1] = detail::head(rest);
      auto [target, note] = detail::head(r1);
      auto colon = sym.find(':');
      if (colon == std::string::npos) throw fail(lineno, "alias without weight");
      p.aliases.push_back({sym.substr(0, colon), std::stoi(sym.substr(colon + 1)), target, note});
    } else if (key == "relation") {
      if (cur) throw fail(lineno, "relation inside relation");
      finish_tables();
      cur = Relation{};
      cur->name = rest;
      default_id.reset();
    } else if (!cur) {
      throw fail(lineno, "unexpected record " + key);
    } else if (key == "degree") {
      cur->expected_degree = std::stol(rest);
    } else if (key == "anchor") {
      cur->anchor = rest;
    } else if (key == "text") {
      cur->unparsed.push_back(rest);
    } else if (key == "variant") {
      auto [id, text] = detail::head(rest);
      Variant v{id, text, GradedPoly(p.table), false};
      GradedPoly raw(parse_table);
      try {
        raw = parse_poly(parse_table, text);
      } catch (const ParseError& e) {
        throw fail(lineno, e.what());
      }
      for (const auto& a : p.aliases)
        if (raw.degree_in(parse_table->require(a.symbol))) v.aliased = true;
      v.poly = substitute(raw, *alias_map);
      cur->variants.push_back(std::move(v));
    } else if (key == "default") {
      default_id = rest;
    } else if (key == "end") {
      if (cur->variants.empty()) throw fail(lineno, "relation " + cur->name + " has no variants");
      if (default_id) {
        auto it = std::find_if(cur->variants.begin(), cur->variants.end(),
                               [&](const Variant& v) { return v.id == *default_id; });
        if (it == cur->variants.end()) throw fail(lineno, "unknown default variant " + *default_id);
        cur->default_index = static_cast<std::size_t>(it - cur->variants.begin());
      }
      p.relations.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw fail(lineno, "unknown record " + key);
    }
  }
  if (cur) throw ParseError("relation data ends inside relation " + cur->name);
  if (!p.table) throw ParseError("relation data has no generators");
  return p;
}

inline Presentation load_presentation(const std::string& path = default_relation_path()) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open relation data " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

// ---------------------------------------------------------------------------
// Variant assignments

/// One chosen variant index per relation.
using Assignment = std::vector<std::size_t>;

inline Assignment default_assignment(const Presentation& p) {
  Assignment a;
  for (const auto& r : p.relations) a.push_back(r.default_index);
  return a;
}

/// "name=id" for each flagged relation, comma separated; "default" when none is flagged.
inline std::string assignment_id(const Presentation& p, const Assignment& a) {
  std::string s;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (p.relations[i].variants.size() < 2) continue;
    if (!s.empty()) s += ",";
    s += p.relations[i].name + "=" + p.relations[i].variants[a[i]].id;
  }
  return s.empty() ? "default" : s;
}

/// Inverse of assignment_id; relations not mentioned keep their default.
inline Assignment parse_assignment(const Presentation& p, const std::string& id) {
  Assignment a = default_assignment(p);
  if (id == "default" || id.empty()) return a;
  std::istringstream in(id);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.rfind('=');
    if (eq == std::string::npos) throw ParameterError("variant assignment item without '=': " + item);
    auto i = p.index_of(item.substr(0, eq));
    auto want = item.substr(eq + 1);
    const auto& vs = p.relations[i].variants;
    auto it = std::find_if(vs.begin(), vs.end(), [&](const Variant& v) { return v.id == want; });
    if (it == vs.end()) throw ParameterError("relation " + p.relations[i].name + " has no variant " + want);
    a[i] = static_cast<std::size_t>(it - vs.begin());
  }
  return a;
}

inline std::vector<GradedPoly> relations_under(const Presentation& p, const Assignment& a) {
  std::vector<GradedPoly> out;
  for (std::size_t i = 0; i < p.relations.size(); ++i) out.push_back(p.relations[i].variants[a[i]].poly);
  return out;
}

/// Every assignment, in lexicographic order of variant indices.
inline std::vector<Assignment> all_assignments(const Presentation& p) {
  std::vector<Assignment> out;
  Assignment a(p.relations.size(), 0);
  while (true) {
    out.push_back(a);
    std::size_t i = p.relations.size();
    while (i > 0) {
      --i;
      if (++a[i] < p.relations[i].variants.size()) break;
      a[i] = 0;
      if (i == 0) return out;
    }
    if (p.relations.empty()) return out;
  }
}

// ---------------------------------------------------------------------------
// Degree audit

inline std::string describe_degree(const GradedPoly& poly, long expected) {
  auto info = weighted_degree(poly);
  const auto& t = *poly.table();
  auto mono = [&](const Monomial& m) { return to_string(GradedPoly::term(poly.table(), m, 1)); };
  switch (info.kind) {
    case DegreeInfo::Kind::Zero: return "zero";
    case DegreeInfo::Kind::Inhomogeneous:
      return "inhomogeneous: " + mono(info.witness.first) + " (degree " +
             std::to_string(info.witness.first.weighted_degree(t)) + ") and " + mono(info.witness.second) +
             " (degree " + std::to_string(info.witness.second.weighted_degree(t)) + ")";
    case DegreeInfo::Kind::Homogeneous:
      if (info.degree == expected) return "degree " + std::to_string(info.degree);
      return "degree " + std::to_string(info.degree) + ", expected " + std::to_string(expected);
  }
  return "?";
}

inline bool has_expected_degree(const GradedPoly& poly, long expected) {
  auto info = weighted_degree(poly);
  return info.homogeneous() && info.degree == expected;
}

inline VerificationReport audit_degrees(const Presentation& p, const Assignment& a) {
  auto r = make_report("m3bar", "degree_audit", "15 homogeneous relations in degrees 2,3,4,5");
  std::map<long, std::size_t> profile;
  bool ok = p.relations.size() == 15;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& rel = p.relations[i];
    const auto& poly = rel.variants[a[i]].poly;
    bool good = has_expected_degree(poly, rel.expected_degree);
    ok = ok && good;
    if (good) ++profile[rel.expected_degree];
    r.add(rel.name, rel.variants[a[i]].id + ": " + describe_degree(poly, rel.expected_degree));
    if (!rel.flagged()) continue;
    for (std::size_t j = 0; j < rel.variants.size(); ++j)
      if (j != a[i])
        r.add(rel.name + "[" + rel.variants[j].id + "]",
              describe_degree(rel.variants[j].poly, rel.expected_degree) + " (not selected)");
    for (const auto& u : rel.unparsed) r.add(rel.name + "[text]", "not parseable as written: " + u);
  }
  r.add("profile", format_counts(profile));
  r.add("expected_profile", format_counts(stated_degree_profile()));
  r.status = status_of(ok && profile == stated_degree_profile());
  return r;
}

// ---------------------------------------------------------------------------
// Elimination

struct RelationSystem {
  TablePtr table;
  std::vector<std::string> names;
  std::vector<GradedPoly> relations;

  const GradedPoly& relation(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return relations[i];
    throw ParameterError("no relation named " + std::string(name));
  }
};

inline RelationSystem system_of(const Presentation& p, const Assignment& a) {
  RelationSystem s{p.table, {}, relations_under(p, a)};
  for (const auto& r : p.relations) s.names.push_back(r.name);
  return s;
}

struct EliminationStep {
  std::string relation;
  std::string variable;
  GradedPoly substitution;  // in the table without the variable
  Rational coefficient;     // of the variable in the relation
  std::set<Integer> primes; // inverted to divide by the coefficient
};

/// Solve the named relation for a variable that appears linearly with a
/// constant coefficient, drop that relation and rewrite the others.
inline std::pair<RelationSystem, EliminationStep> eliminate_generator(const RelationSystem& s,
                                                                      const std::string& relation,
                                                                      const std::string& variable) {
  const auto& rel = s.relation(relation);
  auto vi = s.table->require(variable);
  auto solved = solve_linear(rel, vi);
  if (!solved) throw NotEliminable(relation + " is not linear in " + variable + " with a constant coefficient");
  EliminationStep step;
  step.relation = relation;
  step.variable = variable;
  step.coefficient = rel.coefficient_of(vi, 1).constant_term();
  detail::factor_into(step.coefficient.get_num(), step.primes);
  detail::factor_into(step.coefficient.get_den(), step.primes);

  std::vector<Variable> kept;
  for (const auto& v : s.table->variables())
    if (v.name != variable) kept.push_back(v);
  auto T = make_table(kept);
  step.substitution = rename_into(*solved, T);
  RingMap m(s.table, T);
  for (const auto& v : kept) m.assign(v.name, GradedPoly::variable(T, v.name));
  m.assign(variable, step.substitution);

  RelationSystem out{T, {}, {}};
  for (std::size_t i = 0; i < s.relations.size(); ++i) {
    if (s.names[i] == relation) continue;
    out.names.push_back(s.names[i]);
    out.relations.push_back(substitute(s.relations[i], m));
  }
  return {out, step};
}

/// The used relation vanishes after substituting the solved variable.
inline bool replay_step(const RelationSystem& before, const EliminationStep& step) {
  auto T = step.substitution.table();
  RingMap m(before.table, T);
  for (const auto& v : before.table->variables())
    m.assign(v.name, v.name == step.variable ? step.substitution : GradedPoly::variable(T, v.name));
  return substitute(before.relation(step.relation), m).is_zero();
}

struct EliminationPlan {
  std::string relation;
  std::string variable;
};

inline std::vector<EliminationPlan> standard_elimination_order() {
  return {{"[A2]", "lambda2"}, {"delta1^c", "delta111"}, {"[A3]", "lambda3"}};
}

struct SimplifiedIdeal {
  RelationSystem system;                // in Q[lambda1, H, delta1, delta11]
  std::vector<EliminationStep> steps;
  std::map<long, std::size_t> counts;   // minimal generators by degree
  std::vector<GradedPoly> minimal;
  std::size_t total = 0;
};

inline SimplifiedIdeal rational_simplify(const RelationSystem& start, long degree_bound = 6,
                                         const std::vector<EliminationPlan>& order = standard_elimination_order()) {
  SimplifiedIdeal out;
  out.system = start;
  for (const auto& e : order) {
    auto [next, step] = eliminate_generator(out.system, e.relation, e.variable);
    out.system = std::move(next);
    out.steps.push_back(std::move(step));
  }
  out.counts = minimal_generators_by_degree(out.system.relations, degree_bound);
  out.minimal = minimal_generating_subset(out.system.relations);
  for (const auto& [d, n] : out.counts) out.total += n;
  return out;
}

inline SimplifiedIdeal rational_simplify(const Presentation& p, const Assignment& a, long degree_bound = 6) {
  return rational_simplify(system_of(p, a), degree_bound);
}

/// Set H and every delta class to zero.
inline GradedPoly restrict_open_stratum(const GradedPoly& relation) {
  auto L = lambda_table();
  RingMap m(relation.table(), L);
  for (const auto& v : relation.table()->variables())
    m.assign(v.name, L->index_of(v.name) ? GradedPoly::variable(L, v.name) : GradedPoly(L));
  return substitute(relation, m);
}

// ---------------------------------------------------------------------------
// Variant search

struct VariantCandidate {
  Assignment assignment;
  std::string id;
  bool homogeneous = false;
  std::string rejected_by;                      // empty when consistent
  std::optional<std::map<long, std::size_t>> simplified_counts;
  std::optional<std::map<long, std::size_t>> faber_counts;
  bool consistent() const { return rejected_by.empty(); }
};

struct VariantSearch {
  std::vector<VariantCandidate> candidates;
  std::vector<std::size_t> surviving;
  VerificationReport report;
};

inline constexpr std::size_t kExpectedSimplifiedTotal = 9;

/// Keep assignments that are homogeneous of the stated degrees, simplify to
/// 9 minimal relations and transport to the profile {3:3, 4:6}.
inline VariantSearch search_variants(const Presentation& p, long degree_bound = 6,
                                     const std::vector<Assignment>& pool = {}) {
  VariantSearch s;
  s.report = make_report("m3bar", "variant_search", "readings of unclear spots in the explicit relation list");
  auto assignments = pool.empty() ? all_assignments(p) : pool;
  for (const auto& a : assignments) {
    VariantCandidate c;
    c.assignment = a;
    c.id = assignment_id(p, a);
    c.homogeneous = true;
    for (std::size_t i = 0; i < p.relations.size(); ++i)
      if (!has_expected_degree(p.relations[i].variants[a[i]].poly, p.relations[i].expected_degree)) {
        c.homogeneous = false;
        c.rejected_by = "degree of " + p.relations[i].name;
        break;
      }
    if (c.homogeneous) {
      auto simp = rational_simplify(p, a, degree_bound);
      c.simplified_counts = simp.counts;
      c.faber_counts = faber_ideal(simp.system.relations, degree_bound, {}, false).counts;
      if (simp.total != kExpectedSimplifiedTotal)
        c.rejected_by = "simplified total " + std::to_string(simp.total);
      else if (*c.faber_counts != faber_expected_counts())
        c.rejected_by = "faber profile " + format_counts(*c.faber_counts);
    }
    std::string line = c.consistent() ? "consistent" : "rejected: " + c.rejected_by;
    if (c.simplified_counts) line += "; simplified " + format_counts(*c.simplified_counts);
    if (c.faber_counts) line += "; transported " + format_counts(*c.faber_counts);
    s.report.add(c.id, line);
    if (c.consistent()) s.surviving.push_back(s.candidates.size());
    s.candidates.push_back(std::move(c));
  }
  s.report.add("surviving", std::to_string(s.surviving.size()));
  s.report.status = status_of(!s.surviving.empty());
  return s;
}

struct Resolution {
  Assignment assignment;
  VariantSearch search;
};

/// The first consistent assignment in search order; throws
/// UnresolvedPresentation, carrying the search report, when none exists.
inline Resolution resolve_variants(const Presentation& p, long degree_bound = 6) {
  auto s = search_variants(p, degree_bound);
  if (s.surviving.empty())
    throw UnresolvedPresentation("no variant assignment is consistent with the stated counts", s.report);
  return {s.candidates[s.surviving.front()].assignment, std::move(s)};
}

// ---------------------------------------------------------------------------
// Reports

/// Prime sets {2,3}, {2,3} and one containing 7, replayable steps, Hilbert
/// functions preserved, and 9 minimal relations.
inline VerificationReport check_rational_simplification(const Presentation& p, const Assignment& a,
                                                        long degree_bound = 6) {
  auto r = make_report("m3bar", "rational_simplification", "4 generators and 9 relations over Q");
  auto start = system_of(p, a);
  auto simp = rational_simplify(start, degree_bound);
  bool ok = true;
  RelationSystem cur = start;
  for (const auto& step : simp.steps) {
    bool replayed = replay_step(cur, step);
    ok = ok && replayed;
    std::string primes;
    for (const auto& q : step.primes) primes += (primes.empty() ? "" : ",") + q.get_str();
    r.add("eliminate " + step.variable + " via " + step.relation,
          step.variable + " = " + to_string(step.substitution) + "; coefficient " + step.coefficient.get_str() +
              "; primes {" + primes + "}; replay " + (replayed ? "ok" : "FAILED"));
    cur = eliminate_generator(cur, step.relation, step.variable).first;
  }
  auto want23 = std::set<Integer>{2, 3};
  bool primes_ok = simp.steps.size() == 3 && simp.steps[0].primes == want23 && simp.steps[1].primes == want23 &&
                   simp.steps[2].primes.count(7);
  auto hf_before = hilbert_function(start.relations, start.table, degree_bound);
  auto hf_after = hilbert_function(simp.system.relations, simp.system.table, degree_bound);
  r.add("generators", [&] {
    std::string s;
    for (const auto& v : simp.system.table->variables()) s += (s.empty() ? "" : ",") + v.name;
    return s;
  }());
  r.add("hilbert_before", format_sequence(hf_before));
  r.add("hilbert_after", format_sequence(hf_after));
  r.add("relations_after_substitution", std::to_string(simp.system.relations.size()));
  r.add("minimal_counts", format_counts(simp.counts));
  r.add("minimal_total", std::to_string(simp.total));
  r.add("expected_total", std::to_string(kExpectedSimplifiedTotal));
  r.status = status_of(ok && primes_ok && hf_before == hf_after && simp.total == kExpectedSimplifiedTotal);
  return r;
}

/// The boundary-free parts of [A2], [A3], [A4] against the open-stratum classes.
inline VerificationReport check_open_stratum_restriction(const Presentation& p, const Assignment& a) {
  auto r = make_report("m3bar", "open_stratum_restriction", "[A2],[A3],[A4] with H and delta classes set to 0");
  auto rec = calibrate_lambda_convention();
  r.add("calibration", rec.to_string());
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    std::string name = "[A" + std::to_string(n) + "]";
    auto restricted = restrict_open_stratum(p.relations[p.index_of(name)].variants[a[p.index_of(name)]].poly);
    auto cls = an_open_class(n, rec.convention);
    bool match = restricted == cls;
    ok = ok && match;
    r.add(name, to_string(restricted));
    r.add("open_class_" + std::to_string(n), to_string(cls) + (match ? " (match)" : " (differs)"));
  }
  r.status = status_of(ok);
  return r;
}

}  // namespace chowkit
