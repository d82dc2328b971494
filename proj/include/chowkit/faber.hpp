#pragma once

// Coordinate changes between the generators {lambda1, H, delta1, delta11} of
// the rational simplification and Faber's {lambda1, delta0, delta1, kappa2},
// and the comparison of the two relation ideals.

#include <map>
#include <string>
#include <vector>

#include "chowkit/gradedpoly.hpp"
#include "chowkit/ideals.hpp"
#include "chowkit/report.hpp"

namespace chowkit {

inline TablePtr four_table() {
  static const TablePtr t = make_table({{"lambda1", 1}, {"H", 1}, {"delta1", 1}, {"delta11", 2}});
  return t;
}

inline TablePtr faber_table() {
  static const TablePtr t = make_table({{"lambda1", 1}, {"delta0", 1}, {"delta1", 1}, {"kappa2", 2}});
  return t;
}

struct CoordinateChange {
  RingMap phi;  // four_table -> faber_table
  RingMap psi;  // faber_table -> four_table
};

/// The two identities H = 9 lambda1 - 3 delta1 - delta0 and
/// delta11 = -5 lambda1^2 + lambda1 delta0/2 + lambda1 delta1 + delta1^2/2 + kappa2/2.
/// phi reads them left to right; psi solves them for delta0 and kappa2.
inline CoordinateChange build_maps() {
  auto F = faber_table(), S = four_table();
  const char* h_image = "9*lambda1 - 3*delta1 - delta0";
  const char* d11_image = "-5*lambda1^2 + 1/2*lambda1*delta0 + lambda1*delta1 + 1/2*delta1^2 + 1/2*kappa2";
  RingMap phi(S, F, {{"lambda1", parse_poly(F, "lambda1")},
                     {"H", parse_poly(F, h_image)},
                     {"delta1", parse_poly(F, "delta1")},
                     {"delta11", parse_poly(F, d11_image)}});

  // Solve in the ring carrying both generator sets.
  auto B = make_table({{"lambda1", 1}, {"H", 1}, {"delta1", 1}, {"delta11", 2}, {"delta0", 1}, {"kappa2", 2}});
  auto id_h = parse_poly(B, "H") - parse_poly(B, h_image);
  auto id_d11 = parse_poly(B, "delta11") - parse_poly(B, d11_image);
  auto delta0 = solve_linear(id_h, B->require("delta0"));
  if (!delta0) throw Error("coordinate identity is not linear in delta0");
  RingMap sub0 = RingMap::identity(B);
  sub0.assign("delta0", *delta0);
  auto kappa2 = solve_linear(substitute(id_d11, sub0), B->require("kappa2"));
  if (!kappa2) throw Error("coordinate identity is not linear in kappa2");
  RingMap psi(F, S, {{"lambda1", parse_poly(S, "lambda1")},
                     {"delta0", rename_into(*delta0, S)},
                     {"delta1", parse_poly(S, "delta1")},
                     {"kappa2", rename_into(*kappa2, S)}});
  return {phi, psi};
}

inline bool preserves_grading(const RingMap& m) {
  const auto& src = *m.source();
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto info = weighted_degree(m.image(i));
    if (!info.homogeneous() || info.degree != src.weight(i)) return false;
  }
  return true;
}

/// psi(phi(x)) = x and phi(psi(y)) = y on generators, and both maps graded.
inline bool verify_inverse(const CoordinateChange& c) {
  for (const auto& v : c.phi.source()->variables())
    if (substitute(c.phi.image(v.name), c.psi) != GradedPoly::variable(c.phi.source(), v.name)) return false;
  for (const auto& v : c.psi.source()->variables())
    if (substitute(c.psi.image(v.name), c.phi) != GradedPoly::variable(c.psi.source(), v.name)) return false;
  return preserves_grading(c.phi) && preserves_grading(c.psi);
}

struct TransportedIdeal {
  std::vector<GradedPoly> relations;          // phi of the input relations, in faber_table()
  std::vector<GradedPoly> minimal;            // a minimal generating subset of them
  std::map<long, std::size_t> counts;         // minimal generators by degree
  std::vector<std::size_t> hilbert_source;    // of Q[lambda1,H,delta1,delta11]/I
  std::vector<std::size_t> hilbert_target;    // of Q[lambda1,delta0,delta1,kappa2]/phi(I)
  bool round_trip = false;                    // psi(phi(I)) = I as ideals
};

inline const std::map<long, std::size_t>& faber_expected_counts() {
  static const std::map<long, std::size_t> c{{3, 3}, {4, 6}};
  return c;
}

/// Transport relations in four_table() along phi. The round trip check runs
/// Buchberger under opt and may throw BudgetExhausted.
inline TransportedIdeal faber_ideal(const std::vector<GradedPoly>& simplified, long degree_bound = 6,
                                    EngineOptions opt = {}, bool round_trip = true) {
  auto maps = build_maps();
  TransportedIdeal out;
  for (const auto& r : simplified) {
    auto image = substitute(r, maps.phi);
    if (!image.is_zero()) out.relations.push_back(image);
  }
  out.counts = minimal_generators_by_degree(out.relations, degree_bound);
  out.minimal = minimal_generating_subset(out.relations);
  out.hilbert_source = hilbert_function(simplified, four_table(), degree_bound);
  out.hilbert_target = hilbert_function(out.relations, faber_table(), degree_bound);
  if (round_trip) {
    std::vector<GradedPoly> back;
    for (const auto& r : out.relations) back.push_back(substitute(r, maps.psi));
    std::vector<GradedPoly> nonzero;
    for (const auto& r : simplified)
      if (!r.is_zero()) nonzero.push_back(r);
    out.round_trip = ideal_equal(back, nonzero, MonomialOrder::grevlex(four_table()), opt);
  }
  return out;
}

inline std::string format_counts(const std::map<long, std::size_t>& c) {
  std::string s = "{";
  for (const auto& [d, n] : c) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(d) + ":" + std::to_string(n);
  }
  return s + "}";
}

inline std::string format_sequence(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline VerificationReport check_faber_maps() {
  auto r = make_report("faber", "coordinate_change", "phi and psi are mutually inverse graded maps");
  auto c = build_maps();
  for (const auto& v : c.phi.source()->variables()) r.add("phi(" + v.name + ")", to_string(c.phi.image(v.name)));
  for (const auto& v : c.psi.source()->variables()) r.add("psi(" + v.name + ")", to_string(c.psi.image(v.name)));
  r.status = status_of(verify_inverse(c));
  return r;
}

/// Structural comparison only: Faber's own relation polynomials are not
/// available here, so the check is the degree profile {3:3, 4:6}, equal
/// Hilbert functions and the psi round trip.
inline VerificationReport check_faber_comparison(const std::vector<GradedPoly>& simplified, long degree_bound = 6,
                                                 EngineOptions opt = {}) {
  auto r = make_report("faber", "transported_ideal", "3 relations in codimension 3 and 6 in codimension 4");
  auto t = faber_ideal(simplified, degree_bound, opt);
  bool inverse = verify_inverse(build_maps());
  r.add("maps_inverse", inverse ? "yes" : "no");
  r.add("counts", format_counts(t.counts));
  r.add("expected_counts", format_counts(faber_expected_counts()));
  r.add("hilbert_source", format_sequence(t.hilbert_source));
  r.add("hilbert_target", format_sequence(t.hilbert_target));
  r.add("round_trip", t.round_trip ? "yes" : "no");
  r.add("match", "structural");
  r.status = status_of(inverse && t.counts == faber_expected_counts() && t.hilbert_source == t.hilbert_target &&
                       t.round_trip);
  return r;
}

}  // namespace chowkit
