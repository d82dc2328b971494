#pragma once

// Exact graded polynomial arithmetic over the rationals.
//
// Every other chowkit module computes with GradedPoly.  Coefficients are GMP
// rationals kept in lowest terms; a polynomial stores only nonzero terms in a
// std::map keyed by exponent vectors, so two equal polynomials always have
// identical term maps.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chowkit {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingAssignment : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class TableMismatch : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class CalibrationAmbiguous : public Error {
 public:
  using Error::Error;
};

struct Variable {
  std::string name;
  int weight = 1;
  bool operator==(const Variable&) const = default;
};

/// Ordered list of named, positively weighted variables.  Position in the
/// table is part of a variable's identity: monomial orders refer to it.
class VariableTable {
 public:
  explicit VariableTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
      if (v.weight <= 0) throw Error("variable '" + v.name + "' must have positive weight");
      if (v.name.empty()) throw Error("empty variable name");
      if (!seen.insert(v.name).second) throw Error("duplicate variable '" + v.name + "'");
    }
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  int weight(std::size_t i) const { return vars_[i].weight; }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw Error("unknown variable '" + std::string(name) + "'");
    return *i;
  }

  bool operator==(const VariableTable& o) const { return vars_ == o.vars_; }

 private:
  std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline TablePtr make_table(std::vector<Variable> vars) {
  return std::make_shared<const VariableTable>(std::move(vars));
}

inline TablePtr make_table(std::initializer_list<std::pair<const char*, int>> vars) {
  std::vector<Variable> v;
  for (const auto& [n, w] : vars) v.push_back({n, w});
  return make_table(std::move(v));
}

inline bool same_table(const TablePtr& a, const TablePtr& b) {
  return a == b || (a && b && *a == *b);
}

using Exponent = std::uint32_t;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> e) : e_(std::move(e)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, Exponent power = 1) {
    Monomial m(nvars);
    m.e_[var] = power;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  const std::vector<Exponent>& exponents() const { return e_; }

  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
  }

  long weighted_degree(const VariableTable& t) const {
    long d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) d += static_cast<long>(e_[i]) * t.weight(i);
    return d;
  }

  long total_degree() const {
    long d = 0;
    for (auto x : e_) d += x;
    return d;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// this / o; caller guarantees o divides this.
  Monomial quotient(const Monomial& o) const {
    Monomial q(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) q.e_[i] -= o.e_[i];
    return q;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Exponent> e_;
};

/// Sparse multivariate polynomial with rational coefficients over a
/// VariableTable.  Values are immutable from the outside apart from the
/// arithmetic assignment operators.
class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  GradedPoly() = default;
  explicit GradedPoly(TablePtr table) : table_(std::move(table)) {}

  static GradedPoly constant(TablePtr table, const Rational& c) {
    GradedPoly p(table);
    p.add_term(Monomial(table->size()), c);
    return p;
  }

  static GradedPoly variable(TablePtr table, std::string_view name) {
    auto i = table->require(name);
    return term(table, Monomial::unit(table->size(), i), 1);
  }

  static GradedPoly variable(TablePtr table, std::size_t index) {
    return term(table, Monomial::unit(table->size(), index), 1);
  }

  static GradedPoly term(TablePtr table, Monomial m, const Rational& c) {
    GradedPoly p(std::move(table));
    p.add_term(m, c);
    return p;
  }

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const {
    if (!table_) return 0;
    return coefficient(Monomial(table_->size()));
  }

  /// Largest exponent of variable `var` appearing in any term; 0 for the zero polynomial.
  Exponent degree_in(std::size_t var) const {
    Exponent d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  /// Coefficient of var^power, as a polynomial over the same table not involving var.
  GradedPoly coefficient_of(std::size_t var, Exponent power) const {
    GradedPoly r(table_);
    for (const auto& [m, c] : terms_) {
      if (m[var] != power) continue;
      Monomial q(m);
      q[var] = 0;
      r.terms_.emplace(std::move(q), c);
    }
    return r;
  }

  /// Coefficients built from a raw numerator/denominator pair are brought to
  /// lowest terms here, so every entry point keeps the canonical form.
  void add_term(const Monomial& m, Rational c) {
    c.canonicalize();
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  GradedPoly& operator-=(const GradedPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  GradedPoly& operator*=(Rational s) {
    s.canonicalize();
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const Rational& s, GradedPoly a) { return a *= s; }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r(a.table_ ? a.table_ : b.table_);
    r.adopt(b);
    if (a.table_ && b.table_ && !same_table(a.table_, b.table_))
      throw TableMismatch("multiplying polynomials over different variable tables");
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  /// Multiply by a monomial times a scalar.
  GradedPoly shifted(const Monomial& m, Rational s) const {
    GradedPoly r(table_);
    s.canonicalize();
    if (s == 0) return r;
    for (const auto& [mm, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, c * s);
    return r;
  }

  GradedPoly pow(unsigned n) const {
    GradedPoly result = constant(table_, 1);
    GradedPoly base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  bool operator==(const GradedPoly& o) const {
    if (terms_.empty() && o.terms_.empty()) return true;
    return same_table(table_, o.table_) && terms_ == o.terms_;
  }

 private:
  void adopt(const GradedPoly& o) {
    if (!table_) {
      table_ = o.table_;
    } else if (o.table_ && !same_table(table_, o.table_)) {
      throw TableMismatch("combining polynomials over different variable tables");
    }
  }

  TablePtr table_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Degrees

struct DegreeInfo {
  enum class Kind { Homogeneous, Inhomogeneous, Zero };
  Kind kind = Kind::Zero;
  long degree = 0;
  // Two monomials of different weighted degree when kind == Inhomogeneous.
  std::pair<Monomial, Monomial> witness;

  bool homogeneous() const { return kind == Kind::Homogeneous; }
};

inline DegreeInfo weighted_degree(const GradedPoly& p) {
  DegreeInfo info;
  if (p.is_zero()) return info;
  const auto& t = *p.table();
  const Monomial* first = nullptr;
  for (const auto& [m, c] : p.terms()) {
    long d = m.weighted_degree(t);
    if (!first) {
      first = &m;
      info.kind = DegreeInfo::Kind::Homogeneous;
      info.degree = d;
    } else if (d != info.degree) {
      info.kind = DegreeInfo::Kind::Inhomogeneous;
      info.witness = {*first, m};
      return info;
    }
  }
  return info;
}

/// Homogeneous component of weighted degree d.
inline GradedPoly homogeneous_part(const GradedPoly& p, long d) {
  GradedPoly r(p.table());
  for (const auto& [m, c] : p.terms())
    if (m.weighted_degree(*p.table()) == d) r.add_term(m, c);
  return r;
}

// ---------------------------------------------------------------------------
// Exact integers

inline Integer binomial_exact(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer factorial_exact(long n) {
  if (n < 0) throw Error("factorial of a negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::set<Integer>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p = 2; p < 10000 && static_cast<Integer>(p) * p <= n; ++p) {
    if (n % p == 0) {
      out.insert(Integer(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.insert(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

inline std::set<Integer> prime_factors(const Integer& n) {
  std::set<Integer> out;
  detail::factor_into(n, out);
  return out;
}

/// Union of the prime factors of all coefficient denominators.
inline std::set<Integer> denominator_primes(const GradedPoly& p) {
  std::set<Integer> out;
  for (const auto& [m, c] : p.terms()) detail::factor_into(c.get_den(), out);
  return out;
}

inline bool primes_within(const std::set<Integer>& primes, std::initializer_list<long> allowed) {
  for (const auto& p : primes)
    if (std::none_of(allowed.begin(), allowed.end(), [&](long a) { return p == a; })) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Symmetric functions

/// sigma_j of the listed variables; sigma_0 = 1 and sigma_j = 0 for j > |vars|.
inline GradedPoly elementary_symmetric(TablePtr table, unsigned j, std::span<const std::size_t> vars) {
  GradedPoly r(table);
  if (j > vars.size()) return r;
  std::vector<std::size_t> pick(j);
  // Enumerate j-subsets in lexicographic order.
  for (unsigned i = 0; i < j; ++i) pick[i] = i;
  while (true) {
    Monomial m(table->size());
    for (auto i : pick) m[vars[i]] += 1;
    r.add_term(m, 1);
    int pos = static_cast<int>(j) - 1;
    while (pos >= 0 && pick[pos] == vars.size() - j + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (unsigned i = pos + 1; i < j; ++i) pick[i] = pick[i - 1] + 1;
  }
  return r;
}

inline GradedPoly elementary_symmetric(TablePtr table, unsigned j, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) idx.push_back(table->require(n));
  return elementary_symmetric(std::move(table), j, std::span<const std::size_t>(idx));
}

// ---------------------------------------------------------------------------
// Ring maps

/// Assignment of a target polynomial to each source variable.  Variables may
/// be left unassigned; substituting a polynomial that uses one throws
/// MissingAssignment.
class RingMap {
 public:
  RingMap(TablePtr source, TablePtr target)
      : source_(std::move(source)), target_(std::move(target)), images_(source_->size()) {}

  RingMap(TablePtr source, TablePtr target, const std::map<std::string, GradedPoly>& assignment)
      : RingMap(std::move(source), std::move(target)) {
    for (const auto& [name, img] : assignment) assign(name, img);
  }

  static RingMap identity(const TablePtr& t) {
    RingMap m(t, t);
    for (std::size_t i = 0; i < t->size(); ++i) m.images_[i] = GradedPoly::variable(t, i);
    return m;
  }

  void assign(std::string_view name, GradedPoly image) {
    if (!image.is_zero() && !same_table(image.table(), target_))
      throw TableMismatch("image of '" + std::string(name) + "' is not over the target table");
    images_[source_->require(name)] = GradedPoly(target_) + image;
  }

  const TablePtr& source() const { return source_; }
  const TablePtr& target() const { return target_; }

  bool is_total() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& x) { return x.has_value(); });
  }

  const GradedPoly& image(std::size_t i) const {
    if (!images_[i]) throw MissingAssignment("no assignment for variable '" + (*source_)[i].name + "'");
    return *images_[i];
  }

  const GradedPoly& image(std::string_view name) const { return image(source_->require(name)); }

 private:
  TablePtr source_;
  TablePtr target_;
  std::vector<std::optional<GradedPoly>> images_;
};

inline GradedPoly substitute(const GradedPoly& p, const RingMap& map) {
  if (!p.is_zero() && !same_table(p.table(), map.source()))
    throw TableMismatch("polynomial is not over the ring map's source table");
  GradedPoly result(map.target());
  // power cache per variable
  std::vector<std::vector<GradedPoly>> powers(map.source()->size());
  auto power_of = [&](std::size_t var, Exponent e) -> const GradedPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(GradedPoly::constant(map.target(), 1));
    while (cache.size() <= e) cache.push_back(cache.back() * map.image(var));
    return cache[e];
  };
  for (const auto& [m, c] : p.terms()) {
    GradedPoly t = GradedPoly::constant(map.target(), c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= power_of(i, m[i]);
    result += t;
  }
  return result;
}

/// If p = c*x + q with c a nonzero constant and q free of x, return -q/c.
inline std::optional<GradedPoly> solve_linear(const GradedPoly& p, std::size_t var) {
  if (p.degree_in(var) != 1) return std::nullopt;
  GradedPoly c = p.coefficient_of(var, 1);
  if (!c.is_constant() || c.is_zero()) return std::nullopt;
  GradedPoly rest = p - c * GradedPoly::variable(p.table(), var);
  return rest * Rational(-1 / c.constant_term());
}

/// Composition: substitute(p, compose(f, g)) == substitute(substitute(p, f), g).
inline RingMap compose(const RingMap& first, const RingMap& second) {
  RingMap r(first.source(), second.target());
  for (std::size_t i = 0; i < first.source()->size(); ++i)
    r.assign((*first.source())[i].name, substitute(first.image(i), second));
  return r;
}

/// Re-express p over a different table by matching variable names.
inline GradedPoly rename_into(const GradedPoly& p, const TablePtr& target) {
  RingMap m(p.table(), target);
  for (const auto& v : p.table()->variables())
    if (target->index_of(v.name)) m.assign(v.name, GradedPoly::variable(target, v.name));
  return substitute(p, m);
}

// ---------------------------------------------------------------------------
// Text format
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | identifier | '(' expr ')'

inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

/// Display order: descending weighted degree, then descending exponent vector.
inline std::vector<std::pair<const Monomial*, const Rational*>> display_order(const GradedPoly& p) {
  std::vector<std::pair<const Monomial*, const Rational*>> v;
  for (const auto& [m, c] : p.terms()) v.emplace_back(&m, &c);
  const auto& t = *p.table();
  std::stable_sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    long da = a.first->weighted_degree(t), db = b.first->weighted_degree(t);
    if (da != db) return da > db;
    return *a.first > *b.first;
  });
  return v;
}

}  // namespace detail

inline std::string to_string(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mp, cp] : detail::display_order(p)) {
    const Monomial& m = *mp;
    Rational c = *cp;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += (*p.table())[i].name;
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

namespace detail {

class Parser {
 public:
  Parser(TablePtr table, std::string_view text) : table_(std::move(table)), s_(text) {}

  GradedPoly parse() {
    GradedPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected digits");
    return std::string(s_.substr(b, pos_ - b));
  }

  GradedPoly expr() {
    GradedPoly r = term();
    while (true) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  // Division is only by a nonzero integer, as in "kappa2/2".
  GradedPoly term() {
    GradedPoly r = unary();
    while (true) {
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        skip();
        Integer d(digits());
        if (d == 0) fail("division by zero");
        r *= Rational(1, d);
      } else {
        return r;
      }
    }
  }

  GradedPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  GradedPoly power() {
    GradedPoly base = atom();
    if (accept('^')) {
      skip();
      unsigned long e = std::stoul(digits());
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  GradedPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      GradedPoly r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        den = Integer(digits());
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return GradedPoly::constant(table_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(b, pos_ - b));
      auto idx = table_->index_of(name);
      if (!idx) {
        pos_ = b;
        fail("unknown variable '" + name + "'");
      }
      return GradedPoly::variable(table_, *idx);
    }
    fail("unexpected character");
  }

  TablePtr table_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::ostream& operator<<(std::ostream& os, const GradedPoly& p) { return os << to_string(p); }

inline GradedPoly parse_poly(const TablePtr& table, std::string_view text) {
  return detail::Parser(table, text).parse();
}

}  // namespace chowkit
