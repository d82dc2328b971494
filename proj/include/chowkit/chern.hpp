#pragma once

// Chern and Segre calculus for GL3 and GL2 representations, the projective
// bundle pushforward P^14 x P^2 -> P^14, and the open-stratum classes of the
// A_n loci in the space of plane quartics.

#include <array>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chowkit/gradedpoly.hpp"
#include "chowkit/report.hpp"

namespace chowkit {

class UncalibratedConvention : public Error {
 public:
  using Error::Error;
};

/// c1, c2, c3 of the standard representation plus the hyperplane classes h
/// (on P^14) and k (on P^2).
inline TablePtr chern_table() {
  static const TablePtr t = make_table({{"c1", 1}, {"c2", 2}, {"c3", 3}, {"h", 1}, {"k", 1}});
  return t;
}

inline TablePtr lambda_table() {
  static const TablePtr t = make_table({{"lambda1", 1}, {"lambda2", 2}, {"lambda3", 3}});
  return t;
}

using ChernVector = GradedPoly;

struct BundleDescriptor {
  int rank = 0;
  ChernVector total;  // constant term 1

  static BundleDescriptor standard(int rank) {
    if (rank < 1 || rank > 3) throw ParameterError("standard bundle rank must be 1, 2 or 3");
    auto t = chern_table();
    GradedPoly c = GradedPoly::constant(t, 1);
    for (int i = 1; i <= rank; ++i) c += GradedPoly::variable(t, "c" + std::to_string(i));
    return {rank, c};
  }
  static BundleDescriptor trivial(int rank) { return {rank, GradedPoly::constant(chern_table(), 1)}; }
};

namespace detail {

// Rewrite a symmetric polynomial in the roots x1..xr as a polynomial in the
// elementary symmetric functions, sent to c1..cr of chern_table().
inline GradedPoly symmetric_to_chern(GradedPoly p, const TablePtr& roots, int rank) {
  auto t = chern_table();
  std::vector<std::size_t> all(rank);
  for (int i = 0; i < rank; ++i) all[i] = i;
  std::vector<GradedPoly> e;
  for (int j = 1; j <= rank; ++j) e.push_back(elementary_symmetric(roots, j, std::span<const std::size_t>(all)));
  std::map<std::pair<int, unsigned>, GradedPoly> powers;
  auto epow = [&](int j, unsigned n) -> const GradedPoly& {
    auto key = std::pair{j, n};
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, e[j].pow(n)).first;
    return it->second;
  };
  GradedPoly out(t);
  while (!p.is_zero()) {
    // The lexicographically largest monomial of a symmetric polynomial has
    // weakly decreasing exponents.
    const auto& [lead, coef] = *p.terms().rbegin();
    Monomial target(t->size());
    GradedPoly sub = GradedPoly::constant(roots, coef);
    for (int j = 0; j < rank; ++j) {
      Exponent next = j + 1 < rank ? lead[j + 1] : 0;
      if (lead[j] < next) throw Error("symmetric rewrite applied to a non-symmetric polynomial");
      unsigned n = lead[j] - next;
      target[j] = n;
      if (n) sub *= epow(j, n);
    }
    out.add_term(target, coef);
    p -= sub;
  }
  return out;
}

}  // namespace detail

/// Total Chern class of Sym^d of the dual of the standard representation.
inline ChernVector sym_dual_chern(int d, int rank) {
  if (rank != 2 && rank != 3) throw ParameterError("sym_dual_chern supports rank 2 and 3");
  if (d < 0 || d > 8) throw ParameterError("sym_dual_chern supports 0 <= d <= 8");
  std::vector<Variable> vars;
  for (int i = 1; i <= rank; ++i) vars.push_back({"x" + std::to_string(i), 1});
  auto roots = make_table(vars);
  GradedPoly prod = GradedPoly::constant(roots, 1);
  // Weights of Sym^d(E^v) are -(a1 x1 + ... + ar xr) over compositions of d.
  std::vector<int> a(rank, 0);
  auto visit = [&](auto&& self, int i, int left) -> void {
    if (i == rank - 1) {
      a[i] = left;
      GradedPoly f = GradedPoly::constant(roots, 1);
      for (int j = 0; j < rank; ++j)
        if (a[j]) f -= Rational(a[j]) * GradedPoly::variable(roots, static_cast<std::size_t>(j));
      prod *= f;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      self(self, i + 1, left - v);
    }
  };
  visit(visit, 0, d);
  return detail::symmetric_to_chern(prod, roots, rank);
}

/// s_0..s_upto with c * s = 1.
inline std::vector<ChernVector> segre(const BundleDescriptor& b, int upto) {
  if (upto < 0) throw ParameterError("segre: upto must be nonnegative");
  auto t = b.total.table();
  if (b.total.constant_term() != 1) throw ParameterError("total Chern class must have constant term 1");
  std::vector<GradedPoly> c;
  for (int i = 0; i <= upto; ++i) c.push_back(homogeneous_part(b.total, i));
  std::vector<GradedPoly> s{GradedPoly::constant(t, 1)};
  for (int n = 1; n <= upto; ++n) {
    GradedPoly sn(t);
    for (int i = 1; i <= n; ++i) sn -= c[i] * s[n - i];
    s.push_back(sn);
  }
  return s;
}

/// Conventions left implicit by the geometry: the Grothendieck relation
/// k^3 + k_sign*c1*k^2 + c2*k + k_sign*c3 = 0 of the P^2-bundle, and whether
/// lambda_i are the Chern classes of E or of its dual.
struct LambdaConvention {
  int k_sign = 1;
  bool dual = false;

  bool operator==(const LambdaConvention&) const = default;
  std::string to_string() const {
    return std::string("k_sign=") + (k_sign > 0 ? "+1" : "-1") + " lambda=" + (dual ? "c(E^v)" : "c(E)");
  }
};

/// The bundle whose Segre classes integrate over the fibre.
inline BundleDescriptor fiber_bundle(int k_sign) {
  auto t = chern_table();
  Rational e(k_sign);
  GradedPoly c = GradedPoly::constant(t, 1) + e * GradedPoly::variable(t, "c1") + GradedPoly::variable(t, "c2") +
                 e * GradedPoly::variable(t, "c3");
  return {3, c};
}

/// Replace k^3 using the Grothendieck relation until the k-degree is at most 2.
inline GradedPoly grothendieck_reduce(const GradedPoly& p, const BundleDescriptor& fiber) {
  auto t = chern_table();
  std::size_t k = t->require("k");
  GradedPoly k3_image = -(homogeneous_part(fiber.total, 1) * GradedPoly::variable(t, k).pow(2) +
                          homogeneous_part(fiber.total, 2) * GradedPoly::variable(t, k) +
                          homogeneous_part(fiber.total, 3));
  GradedPoly cur = p;
  while (cur.degree_in(k) > 2) {
    GradedPoly next(t);
    for (const auto& [m, c] : cur.terms()) {
      if (m[k] < 3) {
        next.add_term(m, c);
        continue;
      }
      Monomial rest = m;
      rest[k] -= 3;
      next += k3_image.shifted(rest, c);
    }
    cur = std::move(next);
  }
  return cur;
}

/// Integrate over the P^2 fibre: pi_*(k^(2+i)) = s_i, lower powers of k vanish.
inline ChernVector projbundle_pushforward(const ChernVector& p, const BundleDescriptor& fiber) {
  if (fiber.rank != 3) throw ParameterError("projbundle_pushforward expects a rank 3 fibre");
  auto t = chern_table();
  std::size_t k = t->require("k");
  auto top = p.degree_in(k);
  auto s = segre(fiber, top < 2 ? 0 : static_cast<int>(top) - 2);
  GradedPoly out(t);
  for (Exponent j = 2; j <= top; ++j) out += p.coefficient_of(k, j) * s[j - 2];
  return out;
}

/// Class of X_2 in P^14 x P^2.
inline ChernVector x2_class() {
  auto t = chern_table();
  return parse_poly(t, "2*(h + k - c1)*(h + 4*k)*((h + 3*k)^2 - (c1 + k)*(h + 2*k) + c2)");
}

/// c_m = -m c1 + (2m-1)/2 h + (4-m) k.
inline ChernVector cm_factor(int m) {
  if (m < 3 || m > 7) throw ParameterError("c_m is defined for 3 <= m <= 7");
  auto t = chern_table();
  Rational half(2 * m - 1, 2);
  half.canonicalize();
  return Rational(-m) * GradedPoly::variable(t, "c1") + half * GradedPoly::variable(t, "h") +
         Rational(4 - m) * GradedPoly::variable(t, "k");
}

inline ChernVector xn_class(int n) {
  if (n < 2 || n > 7) throw ParameterError("xn_class is defined for 2 <= n <= 7");
  GradedPoly x = x2_class();
  for (int m = 3; m <= n; ++m) x *= cm_factor(m);
  return x;
}

/// Push [X_n] to P^14, set h = c1 and read c_i as lambda classes.
inline GradedPoly an_open_class(int n, const LambdaConvention& conv) {
  auto t = chern_table();
  auto pushed = projbundle_pushforward(xn_class(n), fiber_bundle(conv.k_sign));
  RingMap m(t, lambda_table());
  auto L = lambda_table();
  for (int i = 1; i <= 3; ++i) {
    Rational sign = (conv.dual && i % 2 == 1) ? -1 : 1;
    m.assign("c" + std::to_string(i), sign * GradedPoly::variable(L, "lambda" + std::to_string(i)));
  }
  m.assign("h", m.image("c1"));
  m.assign("k", GradedPoly(L));
  auto cls = substitute(pushed, m);
  if (!primes_within(denominator_primes(cls), {2, 3}))
    throw Error("open-stratum class has denominators outside {2,3}");
  return cls;
}

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationRecord {
  LambdaConvention convention;
  std::vector<LambdaConvention> anchor_matches;  // conventions reproducing [A2]
  bool tie_broken = false;                        // decided by the sign of lambda3 in [A3]

  std::string to_string() const {
    std::ostringstream os;
    os << convention.to_string() << " anchor_matches=" << anchor_matches.size()
       << " tie_break=" << (tie_broken ? "lambda3-sign" : "none");
    return os.str();
  }
};

inline GradedPoly a2_open_reference() { return parse_poly(lambda_table(), "24*(lambda1^2 - 2*lambda2)"); }
inline GradedPoly a3_open_reference() {
  return parse_poly(lambda_table(), "36*lambda1^3 - 92*lambda1*lambda2 + 56*lambda3");
}
inline GradedPoly a4_open_reference() {
  return parse_poly(lambda_table(), "36*lambda1^4 - 92*lambda1^2*lambda2 + 56*lambda1*lambda3");
}

inline std::vector<LambdaConvention> all_lambda_conventions() {
  return {{1, false}, {1, true}, {-1, false}, {-1, true}};
}

namespace detail {
inline std::mutex& calibration_mutex() {
  static std::mutex m;
  return m;
}
inline std::optional<CalibrationRecord>& calibration_slot() {
  static std::optional<CalibrationRecord> r;
  return r;
}
}  // namespace detail

/// Pick the convention reproducing [A2] on the open stratum. [A2] has even
/// degree and only sees c1^2 and c2, so it cannot separate E from its dual;
/// when two survivors differ only in that way, the sign of the lambda3
/// coefficient of [A3] decides. Anything else is reported as ambiguous.
inline CalibrationRecord calibrate_lambda_convention() {
  std::lock_guard lock(detail::calibration_mutex());
  auto& slot = detail::calibration_slot();
  if (slot) return *slot;
  CalibrationRecord rec;
  for (const auto& c : all_lambda_conventions())
    if (an_open_class(2, c) == a2_open_reference()) rec.anchor_matches.push_back(c);
  std::vector<LambdaConvention> chosen = rec.anchor_matches;
  if (chosen.size() > 1) {
    auto l3 = Monomial::unit(3, 2);
    Rational want = a3_open_reference().coefficient(l3);
    std::vector<LambdaConvention> kept;
    for (const auto& c : chosen)
      if (sgn(an_open_class(3, c).coefficient(l3)) == sgn(want)) kept.push_back(c);
    rec.tie_broken = true;
    chosen = kept;
  }
  if (chosen.size() != 1)
    throw CalibrationAmbiguous(std::to_string(chosen.size()) + " lambda conventions remain after calibration");
  rec.convention = chosen.front();
  slot = rec;
  return rec;
}

inline std::optional<CalibrationRecord> stored_calibration() {
  std::lock_guard lock(detail::calibration_mutex());
  return detail::calibration_slot();
}

/// Uses the stored calibration; throws UncalibratedConvention before it runs.
inline GradedPoly an_open_class(int n) {
  auto rec = stored_calibration();
  if (!rec) throw UncalibratedConvention("calibrate_lambda_convention has not been run");
  return an_open_class(n, rec->convention);
}

/// Criterion-style comparison of the open-stratum classes with the displayed
/// boundary-free parts of [A2], [A3], [A4].
inline VerificationReport check_open_stratum_classes() {
  auto r = make_report("chern", "open_stratum_classes", "[A2],[A3],[A4] restricted to the quartic stratum");
  auto rec = calibrate_lambda_convention();
  r.add("calibration", rec.to_string());
  const std::array<GradedPoly, 3> refs{a2_open_reference(), a3_open_reference(), a4_open_reference()};
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    auto got = an_open_class(n, rec.convention);
    bool match = got == refs[n - 2];
    ok = ok && match;
    r.add("A" + std::to_string(n), to_string(got));
    if (!match) r.add("A" + std::to_string(n) + "_minus_reference", to_string(got - refs[n - 2]));
  }
  r.status = status_of(ok);
  return r;
}

}  // namespace chowkit
