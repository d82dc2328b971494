#pragma once

// Groebner bases over Q with cofactor tracking, membership certificates,
// elimination, and degree-by-degree invariants of homogeneous ideals.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chowkit/gradedpoly.hpp"
#include "chowkit/linalg.hpp"

namespace chowkit {

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class InhomogeneousInput : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Monomial orders

class MonomialOrder {
 public:
  enum class Kind { GradedRevLex, Lex, BlockElimination };

  static MonomialOrder grevlex(TablePtr t) { return MonomialOrder(Kind::GradedRevLex, std::move(t), {}); }
  static MonomialOrder lex(TablePtr t) { return MonomialOrder(Kind::Lex, std::move(t), {}); }

  /// Two-block order: the front block is compared first (weighted degree,
  /// then reverse lex), the remaining variables break ties the same way.
  static MonomialOrder block(TablePtr t, const std::vector<std::string>& front) {
    std::vector<bool> mask(t->size(), false);
    for (const auto& name : front) mask[t->require(name)] = true;
    return MonomialOrder(Kind::BlockElimination, std::move(t), std::move(mask));
  }

  Kind kind() const { return kind_; }
  const TablePtr& table() const { return table_; }
  bool in_front(std::size_t var) const { return !front_.empty() && front_[var]; }

  /// Negative, zero or positive as a is smaller than, equal to or larger than b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::GradedRevLex:
        return grevlex_on(a, b, [](std::size_t) { return true; });
      case Kind::BlockElimination: {
        int c = grevlex_on(a, b, [&](std::size_t i) { return front_[i]; });
        if (c) return c;
        return grevlex_on(a, b, [&](std::size_t i) { return !front_[i]; });
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

 private:
  MonomialOrder(Kind k, TablePtr t, std::vector<bool> front)
      : kind_(k), table_(std::move(t)), front_(std::move(front)) {}

  template <class Pred>
  int grevlex_on(const Monomial& a, const Monomial& b, Pred in_block) const {
    long da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!in_block(i)) continue;
      da += static_cast<long>(a[i]) * table_->weight(i);
      db += static_cast<long>(b[i]) * table_->weight(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (!in_block(i) || a[i] == b[i]) continue;
      return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  TablePtr table_;
  std::vector<bool> front_;
};

inline Monomial leading_monomial(const GradedPoly& p, const MonomialOrder& ord) {
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || ord.less(*best, m)) best = &m;
  if (!best) throw Error("leading monomial of the zero polynomial");
  return *best;
}

// ---------------------------------------------------------------------------
// Engine

struct EngineOptions {
  /// Maximum number of single-term reduction steps; 0 means unlimited.
  std::size_t budget = 0;
  /// Keep cofactors expressing each basis element in the input generators.
  bool track = true;
};

struct MembershipCertificate {
  bool member = false;
  std::vector<GradedPoly> cofactors;  // one per input generator
  GradedPoly remainder;
  std::set<Integer> primes;

  /// Check sum cofactor_i * gen_i + remainder == query exactly.
  bool replay(const GradedPoly& query, const std::vector<GradedPoly>& gens) const {
    if (cofactors.size() != gens.size()) return false;
    GradedPoly acc = remainder;
    for (std::size_t i = 0; i < gens.size(); ++i) acc += cofactors[i] * gens[i];
    return acc == query && member == remainder.is_zero();
  }
};

namespace detail {

struct OrderCmp {
  std::shared_ptr<const MonomialOrder> ord;
  bool operator()(const Monomial& a, const Monomial& b) const { return ord->compare(a, b) > 0; }
};

// Polynomial sorted with its leading term first.
using Sorted = std::map<Monomial, Rational, OrderCmp>;

inline Sorted sorted(const GradedPoly& p, const std::shared_ptr<const MonomialOrder>& ord) {
  Sorted s(OrderCmp{ord});
  for (const auto& [m, c] : p.terms()) s.emplace(m, c);
  return s;
}

inline GradedPoly unsorted(const Sorted& s, const TablePtr& t) {
  GradedPoly p(t);
  for (const auto& [m, c] : s) p.add_term(m, c);
  return p;
}

inline void axpy(Sorted& dst, const Sorted& src, const Monomial& shift, const Rational& f) {
  for (const auto& [m, c] : src) {
    auto [it, inserted] = dst.try_emplace(m * shift, 0);
    it->second -= f * c;
    if (it->second == 0) dst.erase(it);
  }
}

}  // namespace detail

class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<GradedPoly> gens, MonomialOrder order, EngineOptions opt = {})
      : order_(std::move(order)),
        ordp_(std::make_shared<const MonomialOrder>(order_)),
        input_(std::move(gens)),
        opt_(opt) {
    for (const auto& g : input_)
      if (!g.is_zero() && !same_table(g.table(), order_.table()))
        throw TableMismatch("generator not over the order's table");
    compute();
  }

  const MonomialOrder& order() const { return order_; }
  const std::vector<GradedPoly>& input() const { return input_; }
  const std::vector<GradedPoly>& elements() const { return elems_; }
  std::size_t steps() const { return steps_; }

  /// Cofactors expressing elements()[i] in the input generators.
  const std::vector<GradedPoly>& representation(std::size_t i) const { return reps_.at(i); }

  /// Full reduction of p; the certificate's cofactors refer to input().
  MembershipCertificate reduce(const GradedPoly& p) const {
    std::vector<GradedPoly> q(elems_.size(), GradedPoly(order_.table()));
    GradedPoly r = normal_form_impl(p, sorted_, &q);
    MembershipCertificate cert;
    cert.remainder = r;
    cert.member = r.is_zero();
    cert.cofactors.assign(input_.size(), GradedPoly(order_.table()));
    if (opt_.track) {
      for (std::size_t j = 0; j < elems_.size(); ++j) {
        if (q[j].is_zero()) continue;
        for (std::size_t i = 0; i < input_.size(); ++i) cert.cofactors[i] += q[j] * reps_[j][i];
      }
    }
    for (const auto& c : cert.cofactors)
      for (const auto& pr : denominator_primes(c)) cert.primes.insert(pr);
    return cert;
  }

  GradedPoly normal_form(const GradedPoly& p) const { return normal_form_impl(p, sorted_, nullptr); }

  bool contains(const GradedPoly& p) const { return normal_form(p).is_zero(); }

  /// Re-check Buchberger's criterion on the returned basis.
  bool audit() const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (std::size_t j = i + 1; j < elems_.size(); ++j)
        if (!normal_form(s_poly(sorted_[i], sorted_[j])).is_zero()) return false;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (sorted_[i].begin()->second != 1) return false;
      for (std::size_t j = 0; j < elems_.size(); ++j)
        if (i != j && sorted_[j].begin()->first.divides(sorted_[i].begin()->first)) return false;
    }
    return true;
  }

 private:
  using Rep = std::vector<GradedPoly>;

  GradedPoly s_poly(const detail::Sorted& a, const detail::Sorted& b) const {
    const auto& [ma, ca] = *a.begin();
    const auto& [mb, cb] = *b.begin();
    Monomial l = lcm(ma, mb);
    detail::Sorted s(detail::OrderCmp{ordp_});
    detail::axpy(s, a, l.quotient(ma), -1 / ca);
    detail::axpy(s, b, l.quotient(mb), 1 / cb);
    return detail::unsorted(s, order_.table());
  }

  void charge() const {
    ++steps_;
    if (opt_.budget && steps_ > opt_.budget) {
      std::ostringstream os;
      os << "step budget " << opt_.budget << " exhausted with " << elems_.size() << " basis elements";
      throw BudgetExhausted(os.str());
    }
  }

  // Reduce p fully by `basis`; quotients go to q[j] when requested.
  GradedPoly normal_form_impl(const GradedPoly& p, const std::vector<detail::Sorted>& basis,
                              std::vector<GradedPoly>* q) const {
    detail::Sorted f = detail::sorted(p, ordp_);
    GradedPoly rem(order_.table());
    while (!f.empty()) {
      auto lead = f.begin();
      bool reduced = false;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& [mg, cg] = *basis[j].begin();
        if (!mg.divides(lead->first)) continue;
        charge();
        Monomial shift = lead->first.quotient(mg);
        Rational factor = lead->second / cg;
        if (q) (*q)[j].add_term(shift, factor);
        detail::axpy(f, basis[j], shift, factor);
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.add_term(lead->first, lead->second);
        f.erase(lead);
      }
    }
    return rem;
  }

  // Reduce p by the current working set, tracking its representation.
  std::pair<GradedPoly, Rep> reduce_tracked(const GradedPoly& p, Rep rep) const {
    std::vector<GradedPoly> q(work_.size(), GradedPoly(order_.table()));
    GradedPoly r = normal_form_impl(p, work_, opt_.track ? &q : nullptr);
    if (opt_.track) {
      for (std::size_t j = 0; j < work_.size(); ++j) {
        if (q[j].is_zero()) continue;
        for (std::size_t i = 0; i < input_.size(); ++i) rep[i] -= q[j] * work_reps_[j][i];
      }
    }
    return {std::move(r), std::move(rep)};
  }

  Rep zero_rep() const { return Rep(opt_.track ? input_.size() : 0, GradedPoly(order_.table())); }

  void add_to_work(GradedPoly g, Rep rep) {
    work_.push_back(detail::sorted(g, ordp_));
    work_reps_.push_back(std::move(rep));
  }

  void compute() {
    const TablePtr& t = order_.table();
    for (std::size_t i = 0; i < input_.size(); ++i) {
      if (input_[i].is_zero()) continue;
      Rep rep = zero_rep();
      if (opt_.track) rep[i] = GradedPoly::constant(t, 1);
      auto [r, rr] = reduce_tracked(input_[i], std::move(rep));
      if (r.is_zero()) continue;
      add_generator(std::move(r), std::move(rr));
    }
    while (!pairs_.empty()) {
      auto [deg, j, i] = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      const Monomial& li = work_[i].begin()->first;
      const Monomial& lj = work_[j].begin()->first;
      Monomial l = lcm(li, lj);
      if (chain_skip(i, j, l)) continue;
      GradedPoly s = s_poly(work_[i], work_[j]);
      Rep rep = zero_rep();
      if (opt_.track) {
        const Rational ci = work_[i].begin()->second, cj = work_[j].begin()->second;
        GradedPoly mi = GradedPoly::term(t, l.quotient(li), 1 / ci);
        GradedPoly mj = GradedPoly::term(t, l.quotient(lj), 1 / cj);
        for (std::size_t k = 0; k < input_.size(); ++k) rep[k] = mi * work_reps_[i][k] - mj * work_reps_[j][k];
      }
      auto [r, rr] = reduce_tracked(s, std::move(rep));
      if (r.is_zero()) continue;
      add_generator(std::move(r), std::move(rr));
    }
    finalize();
  }

  // Buchberger's chain criterion: skip (i, j) when some k has LM_k | lcm and
  // both pairs (i, k), (k, j) are already treated.
  bool chain_skip(std::size_t i, std::size_t j, const Monomial& l) const {
    for (std::size_t k = 0; k < work_.size(); ++k) {
      if (k == i || k == j) continue;
      if (!work_[k].begin()->first.divides(l)) continue;
      if (pending(i, k) || pending(j, k)) continue;
      return true;
    }
    return false;
  }

  bool pending(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    for (const auto& [d, j, i] : pairs_)
      if (i == a && j == b) return true;
    return false;
  }

  void add_generator(GradedPoly g, Rep rep) {
    add_to_work(std::move(g), std::move(rep));
    std::size_t n = work_.size() - 1;
    const Monomial& ln = work_[n].begin()->first;
    for (std::size_t i = 0; i < n; ++i) {
      const Monomial& li = work_[i].begin()->first;
      if (coprime(li, ln)) continue;  // product criterion
      pairs_.emplace(lcm(li, ln).weighted_degree(*order_.table()), n, i);
    }
  }

  void finalize() {
    const TablePtr& t = order_.table();
    // Drop elements whose leading monomial is divisible by another's.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < work_.size(); ++i) {
      const Monomial& li = work_[i].begin()->first;
      bool redundant = false;
      for (std::size_t j = 0; j < work_.size() && !redundant; ++j) {
        if (i == j) continue;
        const Monomial& lj = work_[j].begin()->first;
        if (lj.divides(li) && (lj != li || j < i)) redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
      return order_.less(work_[a].begin()->first, work_[b].begin()->first);
    });
    std::vector<detail::Sorted> minimal;
    std::vector<Rep> minimal_reps;
    for (auto i : keep) {
      minimal.push_back(work_[i]);
      minimal_reps.push_back(work_reps_[i]);
    }
    // Tail-reduce each element by the others; leading terms are untouched
    // because no other leading monomial divides them.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<detail::Sorted> others;
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) {
          others.push_back(minimal[j]);
          idx.push_back(j);
        }
      const auto lead = *minimal[i].begin();
      GradedPoly tail = detail::unsorted(minimal[i], t) - GradedPoly::term(t, lead.first, lead.second);
      std::vector<GradedPoly> q(others.size(), GradedPoly(t));
      GradedPoly r = normal_form_impl(tail, others, opt_.track ? &q : nullptr);
      r.add_term(lead.first, lead.second);
      Rep rep = minimal_reps[i];
      if (opt_.track)
        for (std::size_t j = 0; j < others.size(); ++j) {
          if (q[j].is_zero()) continue;
          for (std::size_t k = 0; k < input_.size(); ++k) rep[k] -= q[j] * minimal_reps[idx[j]][k];
        }
      Rational inv = 1 / lead.second;
      r *= inv;
      for (auto& c : rep) c *= inv;
      minimal[i] = detail::sorted(r, ordp_);
      minimal_reps[i] = std::move(rep);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      elems_.push_back(detail::unsorted(minimal[i], t));
      sorted_.push_back(std::move(minimal[i]));
      reps_.push_back(std::move(minimal_reps[i]));
    }
    work_.clear();
    work_reps_.clear();
  }

  MonomialOrder order_;
  // Sorted maps hold this pointer, so copies of the basis stay valid.
  std::shared_ptr<const MonomialOrder> ordp_;
  std::vector<GradedPoly> input_;
  EngineOptions opt_;
  mutable std::size_t steps_ = 0;

  std::vector<detail::Sorted> work_;
  std::vector<Rep> work_reps_;
  // (lcm degree, newer index, older index): normal strategy, ties by index.
  std::set<std::tuple<long, std::size_t, std::size_t>> pairs_;

  std::vector<GradedPoly> elems_;
  std::vector<detail::Sorted> sorted_;
  std::vector<Rep> reps_;
};

inline GroebnerBasis groebner_basis(const std::vector<GradedPoly>& gens, const MonomialOrder& order,
                                    EngineOptions opt = {}) {
  return GroebnerBasis(gens, order, opt);
}

inline MembershipCertificate ideal_membership(const GradedPoly& p, const std::vector<GradedPoly>& gens,
                                              const MonomialOrder& order, EngineOptions opt = {}) {
  return GroebnerBasis(gens, order, opt).reduce(p);
}

inline bool ideal_equal(const std::vector<GradedPoly>& a, const std::vector<GradedPoly>& b,
                        const MonomialOrder& order, EngineOptions opt = {}) {
  opt.track = false;
  GroebnerBasis ga(a, order, opt), gb(b, order, opt);
  for (const auto& p : a)
    if (!gb.contains(p)) return false;
  for (const auto& p : b)
    if (!ga.contains(p)) return false;
  return true;
}

/// Basis elements of the elimination ideal (gens) ∩ Q[remaining variables].
inline std::vector<GradedPoly> eliminate(const std::vector<GradedPoly>& gens, const std::vector<std::string>& vars,
                                         EngineOptions opt = {}) {
  if (gens.empty()) return {};
  const TablePtr& t = gens.front().table();
  opt.track = false;
  GroebnerBasis g(gens, MonomialOrder::block(t, vars), opt);
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(t->require(v));
  std::vector<GradedPoly> out;
  for (const auto& e : g.elements()) {
    bool free = true;
    for (auto i : idx)
      if (e.degree_in(i)) free = false;
    if (free) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree-by-degree invariants of homogeneous ideals

/// All monomials of a given weighted degree, in a fixed enumeration order.
inline std::vector<Monomial> monomials_of_degree(const VariableTable& t, long d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(t.size());
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i == t.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (long e = left / t.weight(i); e >= 0; --e) {
      cur[i] = static_cast<Exponent>(e);
      rec(i + 1, left - e * t.weight(i));
    }
    cur[i] = 0;
  };
  rec(0, d);
  return out;
}

namespace detail {

inline std::vector<long> homogeneous_degrees(const std::vector<GradedPoly>& gens) {
  std::vector<long> degs;
  for (const auto& g : gens) {
    auto info = weighted_degree(g);
    if (info.kind == DegreeInfo::Kind::Inhomogeneous)
      throw InhomogeneousInput("generator " + to_string(g) + " is not homogeneous");
    degs.push_back(info.kind == DegreeInfo::Kind::Zero ? -1 : info.degree);
  }
  return degs;
}

// Coordinates of m*g in the monomial basis of degree d.
inline SparseRow row_of(const GradedPoly& g, const Monomial& m, const std::map<Monomial, std::size_t>& index) {
  SparseRow r;
  for (const auto& [mm, c] : g.terms()) r.emplace(index.at(mm * m), c);
  return r;
}

}  // namespace detail

/// Degree-d slice of a homogeneous ideal: the span of all m*g_i in degree d.
class DegreeSlice {
 public:
  DegreeSlice(const std::vector<GradedPoly>& gens, long d) : d_(d) {
    if (gens.empty()) return;
    const auto& t = *gens.front().table();
    basis_ = monomials_of_degree(t, d);
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    auto degs = detail::homogeneous_degrees(gens);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (degs[i] < 0 || degs[i] > d) continue;
      for (const auto& m : monomials_of_degree(t, d - degs[i])) ech_.insert(detail::row_of(gens[i], m, index_));
    }
  }

  std::size_t dimension() const { return ech_.rank(); }
  std::size_t ambient() const { return basis_.size(); }

  bool contains(const GradedPoly& p) const {
    SparseRow r;
    for (const auto& [m, c] : p.terms()) {
      auto it = index_.find(m);
      if (it == index_.end()) return false;
      r.emplace(it->second, c);
    }
    return ech_.contains(r);
  }

 private:
  long d_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
  RationalEchelon ech_;
};

/// dim_Q (R/I)_d for d = 0..maxdeg.
inline std::vector<std::size_t> hilbert_function(const std::vector<GradedPoly>& gens, const TablePtr& table,
                                                 long maxdeg) {
  detail::homogeneous_degrees(gens);
  std::vector<std::size_t> out;
  for (long d = 0; d <= maxdeg; ++d) {
    if (gens.empty()) {
      out.push_back(monomials_of_degree(*table, d).size());
    } else {
      DegreeSlice s(gens, d);
      out.push_back(s.ambient() - s.dimension());
    }
  }
  return out;
}

/// For each degree d <= maxdeg with a nonzero count: dim I_d minus the
/// dimension of the part generated from lower degrees.
inline std::map<long, std::size_t> minimal_generators_by_degree(const std::vector<GradedPoly>& gens, long maxdeg) {
  std::map<long, std::size_t> out;
  if (gens.empty()) return out;
  const auto& t = *gens.front().table();
  auto degs = detail::homogeneous_degrees(gens);
  for (long d = 0; d <= maxdeg; ++d) {
    bool any = false;
    for (auto g : degs)
      if (g == d) any = true;
    if (!any) continue;
    auto basis = monomials_of_degree(t, d);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    RationalEchelon ech;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (degs[i] < 0 || degs[i] >= d) continue;
      for (const auto& m : monomials_of_degree(t, d - degs[i])) ech.insert(detail::row_of(gens[i], m, index));
    }
    std::size_t lower = ech.rank();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (degs[i] == d) ech.insert(detail::row_of(gens[i], Monomial(t.size()), index));
    if (ech.rank() > lower) out[d] = ech.rank() - lower;
  }
  return out;
}

/// A minimal homogeneous generating subset, chosen greedily in input order
/// within each degree.
inline std::vector<GradedPoly> minimal_generating_subset(const std::vector<GradedPoly>& gens) {
  std::vector<GradedPoly> out;
  if (gens.empty()) return out;
  const auto& t = *gens.front().table();
  auto degs = detail::homogeneous_degrees(gens);
  std::set<long> levels;
  for (auto d : degs)
    if (d >= 0) levels.insert(d);
  for (long d : levels) {
    auto basis = monomials_of_degree(t, d);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    RationalEchelon ech;
    auto out_degs = detail::homogeneous_degrees(out);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& m : monomials_of_degree(t, d - out_degs[i])) ech.insert(detail::row_of(out[i], m, index));
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (degs[i] == d && ech.insert(detail::row_of(gens[i], Monomial(t.size()), index))) out.push_back(gens[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integral certificates

/// Coefficient ring over which a membership statement has been certified.
enum class CertifiedOver { Integers, ZSixth, Rationals, None };

inline const char* to_string(CertifiedOver c) {
  switch (c) {
    case CertifiedOver::Integers: return "Z";
    case CertifiedOver::ZSixth: return "Z[1/6]";
    case CertifiedOver::Rationals: return "Q";
    case CertifiedOver::None: return "none";
  }
  return "?";
}

/// The statement holds after inverting at most 2 and 3.
inline bool within_z_sixth(CertifiedOver c) { return c == CertifiedOver::Integers || c == CertifiedOver::ZSixth; }

struct LatticeCertificate {
  CertifiedOver over = CertifiedOver::None;
  std::vector<GradedPoly> cofactors;  // one per generator, valid when over != None
  std::set<Integer> primes;

  bool replay(const GradedPoly& query, const std::vector<GradedPoly>& gens) const {
    if (over == CertifiedOver::None || cofactors.size() != gens.size()) return false;
    GradedPoly acc(query.table());
    for (std::size_t i = 0; i < gens.size(); ++i) acc += cofactors[i] * gens[i];
    return acc == query;
  }
};

/// Membership of a homogeneous p in the ideal generated by homogeneous gens,
/// decided in degree deg(p) with the smallest set of inverted primes.  The
/// degree-d part of (gens) over any subring Z[1/S] is spanned by monomial
/// multiples of the generators, so the lattice answer is exact.
inline LatticeCertificate lattice_membership(const GradedPoly& p, const std::vector<GradedPoly>& gens,
                                             const TablePtr& table) {
  LatticeCertificate cert;
  cert.cofactors.assign(gens.size(), GradedPoly(table));
  auto info = weighted_degree(p);
  if (info.kind == DegreeInfo::Kind::Inhomogeneous) throw InhomogeneousInput("query is not homogeneous");
  if (info.kind == DegreeInfo::Kind::Zero) {
    cert.over = CertifiedOver::Integers;
    return cert;
  }
  long d = info.degree;
  auto degs = detail::homogeneous_degrees(gens);
  auto basis = monomials_of_degree(*table, d);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

  // Clear denominators: a common multiple scales rows and target alike.
  Integer scale = 1;
  auto absorb = [&](const GradedPoly& g) {
    for (const auto& [m, c] : g.terms()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  };
  absorb(p);
  for (const auto& g : gens) absorb(g);

  std::vector<std::vector<Integer>> rows;
  std::vector<std::pair<std::size_t, Monomial>> origin;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (degs[i] < 0 || degs[i] > d) continue;
    for (const auto& m : monomials_of_degree(*table, d - degs[i])) {
      std::vector<Integer> row(basis.size(), 0);
      for (const auto& [mm, c] : gens[i].terms()) {
        Rational v = c * scale;
        row[index.at(mm * m)] = v.get_num();
      }
      rows.push_back(std::move(row));
      origin.emplace_back(i, m);
    }
  }
  std::vector<Integer> target(basis.size(), 0);
  for (const auto& [m, c] : p.terms()) {
    Rational v = c * scale;
    target[index.at(m)] = v.get_num();
  }
  LatticeSolution sol = lattice_solve(std::move(rows), target);
  if (!sol.in_span) return cert;
  for (std::size_t r = 0; r < origin.size(); ++r)
    if (sol.coords[r] != 0) cert.cofactors[origin[r].first].add_term(origin[r].second, sol.coords[r]);
  cert.primes = sol.primes;
  if (sol.primes.empty()) {
    cert.over = CertifiedOver::Integers;
  } else if (primes_within(sol.primes, {2, 3})) {
    cert.over = CertifiedOver::ZSixth;
  } else {
    cert.over = CertifiedOver::Rationals;
  }
  return cert;
}

}  // namespace chowkit
