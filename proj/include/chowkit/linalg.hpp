#pragma once

// Exact linear algebra used by the degree-by-degree ideal computations:
// an incremental sparse row echelon form over Q, and integer Hermite
// reduction for lattice membership.

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "chowkit/gradedpoly.hpp"

namespace chowkit {

using SparseRow = std::map<std::size_t, Rational>;

/// Row echelon basis over Q that grows one row at a time.
class RationalEchelon {
 public:
  /// Reduce `row` against the current basis.  Returns the residual, which is
  /// empty iff `row` lies in the span.
  SparseRow reduce(SparseRow row) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      std::size_t col = it->first;
      Rational f = it->second;
      for (const auto& [c, v] : piv->second) {
        auto [slot, inserted] = row.try_emplace(c, 0);
        slot->second -= f * v;
        if (slot->second == 0) row.erase(slot);
      }
      it = row.upper_bound(col);
    }
    return row;
  }

  /// Insert a row; returns true when the rank grew.
  bool insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    std::size_t col = row.begin()->first;
    pivots_.emplace(col, std::move(row));
    return true;
  }

  bool contains(const SparseRow& row) const { return reduce(row).empty(); }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;
};

/// Outcome of solving target = sum_j c_j * rows[j] with the smallest possible
/// denominators.
struct LatticeSolution {
  bool in_span = false;
  std::vector<Rational> coords;    // one per input row; meaningful when in_span
  std::set<Integer> primes;        // primes that must be inverted; empty means integral
};

/// Decide membership of an integer vector in the Q-span of integer rows and
/// find coordinates whose denominators are as small as the lattice allows.
///
/// The rows are brought to Hermite form by unimodular integer row operations
/// with the transformation recorded.  The target's coordinates with respect
/// to the Hermite basis are unique, so their denominator primes are exactly
/// the primes needed to express the target over Z[1/p : p in primes].
inline LatticeSolution lattice_solve(std::vector<std::vector<Integer>> rows, const std::vector<Integer>& target) {
  const std::size_t m = rows.size();
  const std::size_t n = target.size();
  std::vector<std::vector<Integer>> U(m, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < m; ++i) U[i][i] = 1;

  auto axpy = [](std::vector<Integer>& dst, const std::vector<Integer>& src, const Integer& q) {
    for (std::size_t c = 0; c < dst.size(); ++c)
      if (src[c] != 0) dst[c] -= q * src[c];
  };

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (rows[i][col] != 0 && (best == m || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      if (best == m) break;
      std::swap(rows[r], rows[best]);
      std::swap(U[r], U[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        axpy(rows[i], rows[r], q);
        axpy(U[i], U[r], q);
        if (rows[i][col] != 0) others = true;
      }
      if (!others) {
        pivot_cols.push_back(col);
        ++r;
        break;
      }
    }
  }

  LatticeSolution sol;
  std::vector<Rational> residual(n);
  for (std::size_t c = 0; c < n; ++c) residual[c] = target[c];
  std::vector<Rational> y(r);
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t pc = pivot_cols[j];
    if (residual[pc] == 0) continue;
    y[j] = residual[pc] / Rational(rows[j][pc]);
    for (std::size_t c = pc; c < n; ++c)
      if (rows[j][c] != 0) residual[c] -= y[j] * rows[j][c];
  }
  for (const auto& v : residual)
    if (v != 0) return sol;

  sol.in_span = true;
  sol.coords.assign(m, Rational(0));
  for (std::size_t j = 0; j < r; ++j) {
    if (y[j] == 0) continue;
    detail::factor_into(y[j].get_den(), sol.primes);
    for (std::size_t i = 0; i < m; ++i)
      if (U[j][i] != 0) sol.coords[i] += y[j] * U[j][i];
  }
  return sol;
}

}  // namespace chowkit
