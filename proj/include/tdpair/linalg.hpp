#pragma once

// Exact rank, span membership and directness of column-span sums.
//
// rank() runs sparse elimination with pivot choice "sparsest active column,
// then its lowest row". Over GF(p) elimination is plain modular arithmetic;
// over Q every column is scaled to a primitive integer vector and elimination
// is fraction-free (cross-multiplication followed by content division), so
// no rational arithmetic happens inside the loop.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"
#include "tdpair/sparse_matrix.hpp"

namespace tdpair {

namespace detail {

template <class Scalar>
using Column = std::vector<std::pair<std::uint32_t, Scalar>>;

struct ModpOps {
  std::uint64_t p;

  bool is_zero(std::uint64_t v) const { return v == 0; }

  void normalize_pivot(Column<std::uint64_t>& col) const {
    std::uint64_t s = modp::inv(col.front().second, p);
    for (auto& [r, v] : col) v = modp::mul(v, s, p);
  }

  /// target - target[r] * pivot, where pivot[r] == 1.
  Column<std::uint64_t> eliminate(const Column<std::uint64_t>& target, std::uint64_t t_r,
                                  const Column<std::uint64_t>& pivot) const {
    Column<std::uint64_t> out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
        out.push_back(target[i++]);
      } else if (i == target.size() || pivot[j].first < target[i].first) {
        out.emplace_back(pivot[j].first, modp::neg(modp::mul(t_r, pivot[j].second, p), p));
        ++j;
      } else {
        std::uint64_t v = modp::sub(target[i].second, modp::mul(t_r, pivot[j].second, p), p);
        if (v != 0) out.emplace_back(target[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }
};

struct IntegerOps {
  bool is_zero(const mpz_class& v) const { return sgn(v) == 0; }

  void normalize_pivot(Column<mpz_class>&) const {}

  static void make_primitive(Column<mpz_class>& col) {
    if (col.empty()) return;
    mpz_class g = 0;
    for (const auto& e : col) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& e : col) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  }

  /// (a/g) * target - (b/g) * pivot with a = pivot[r], b = target[r], g = gcd(a, b).
  Column<mpz_class> eliminate(const Column<mpz_class>& target, const mpz_class& t_r,
                              const Column<mpz_class>& pivot) const {
    const mpz_class& p_r = pivot.front().second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p_r.get_mpz_t(), t_r.get_mpz_t());
    mpz_class a = p_r / g;
    mpz_class b = t_r / g;
    Column<mpz_class> out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    mpz_class v;
    while (i < target.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
        out.emplace_back(target[i].first, a * target[i].second);
        ++i;
      } else if (i == target.size() || pivot[j].first < target[i].first) {
        out.emplace_back(pivot[j].first, -b * pivot[j].second);
        ++j;
      } else {
        v = a * target[i].second - b * pivot[j].second;
        if (sgn(v) != 0) out.emplace_back(target[i].first, v);
        ++i;
        ++j;
      }
    }
    make_primitive(out);
    return out;
  }
};

template <class Scalar, class Ops>
std::size_t sparse_rank(std::vector<Column<Scalar>> cols, std::size_t nrows, const Ops& ops) {
  const std::size_t ncols = cols.size();
  std::vector<std::vector<std::uint32_t>> occurrences(nrows);
  std::vector<char> active(ncols, 1);
  for (std::size_t c = 0; c < ncols; ++c) {
    for (const auto& e : cols[c]) occurrences[e.first].push_back(static_cast<std::uint32_t>(c));
  }

  auto value_at = [&](const Column<Scalar>& col, std::uint32_t r) -> const Scalar* {
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, std::uint32_t row) { return e.first < row; });
    return (it != col.end() && it->first == r) ? &it->second : nullptr;
  };

  std::size_t rank = 0;
  for (;;) {
    std::size_t best = ncols;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!active[c]) continue;
      if (cols[c].empty()) {
        active[c] = 0;
        continue;
      }
      if (cols[c].size() < best_size) {
        best = c;
        best_size = cols[c].size();
      }
    }
    if (best == ncols) break;

    ++rank;
    active[best] = 0;
    ops.normalize_pivot(cols[best]);
    const Column<Scalar>& pivot = cols[best];
    const std::uint32_t r = pivot.front().first;

    std::vector<std::uint32_t> targets;
    targets.swap(occurrences[r]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t c : targets) {
      if (!active[c]) continue;
      const Scalar* t_r = value_at(cols[c], r);
      if (t_r == nullptr) continue;
      Column<Scalar> next = ops.eliminate(cols[c], *t_r, pivot);
      // Register fill-in; stale occurrences are filtered by value_at above.
      std::size_t i = 0;
      for (const auto& e : next) {
        while (i < cols[c].size() && cols[c][i].first < e.first) ++i;
        if (i == cols[c].size() || cols[c][i].first != e.first) occurrences[e.first].push_back(c);
      }
      cols[c] = std::move(next);
    }
    cols[best].clear();
  }
  return rank;
}

inline std::vector<Column<std::uint64_t>> to_modp_columns(const SparseMatrix& m) {
  std::vector<Column<std::uint64_t>> cols(m.ncols());
  for (std::size_t c = 0; c < m.ncols(); ++c) {
    for (const auto& e : m.column(c)) cols[c].emplace_back(e.row, e.value.residue());
  }
  return cols;
}

/// Scales each column by the lcm of its denominators, then makes it primitive.
inline std::vector<Column<mpz_class>> to_integer_columns(const SparseMatrix& m) {
  std::vector<Column<mpz_class>> cols(m.ncols());
  for (std::size_t c = 0; c < m.ncols(); ++c) {
    mpz_class l = 1;
    for (const auto& e : m.column(c)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.rational().get_den_mpz_t());
    }
    for (const auto& e : m.column(c)) {
      const mpq_class& q = e.value.rational();
      cols[c].emplace_back(e.row, mpz_class(q.get_num() * (l / q.get_den())));
    }
    IntegerOps::make_primitive(cols[c]);
  }
  return cols;
}

}  // namespace detail

/// Exact rank over the matrix's field.
inline std::size_t rank(const SparseMatrix& m) {
  if (m.ctx().is_prime()) {
    return detail::sparse_rank(detail::to_modp_columns(m), m.nrows(),
                               detail::ModpOps{m.ctx().modulus()});
  }
  return detail::sparse_rank(detail::to_integer_columns(m), m.nrows(), detail::IntegerOps{});
}

/// x + a * y
inline SparseVector axpy(const SparseVector& x, const FieldElement& a, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].row < y[j].row)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].row < x[i].row) {
      FieldElement v = a * y[j].value;
      if (!v.is_zero()) out.push_back(Entry{y[j].row, std::move(v)});
      ++j;
    } else {
      FieldElement v = x[i].value + a * y[j].value;
      if (!v.is_zero()) out.push_back(Entry{x[i].row, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

struct SpanResult {
  bool member = false;
  /// Dense coefficient vector c with M c = v; filled iff member.
  std::vector<FieldElement> coefficients;
};

/// Incremental row-echelon basis of a column span that remembers how each
/// basis vector is built from the original columns.
class EchelonBasis {
 public:
  explicit EchelonBasis(const SparseMatrix& m) : ctx_(m.ctx()), nrows_(m.nrows()), ncols_(m.ncols()) {
    for (std::size_t j = 0; j < m.ncols(); ++j) {
      SparseVector v = m.column(j);
      SparseVector combo{Entry{static_cast<std::uint32_t>(j), FieldElement::one(ctx_)}};
      SparseVector acc;
      reduce(v, acc);
      if (v.empty()) continue;
      // v = column_j - M acc
      combo = axpy(combo, -FieldElement::one(ctx_), acc);
      std::uint32_t lead = v.front().row;
      basis_.emplace(lead, Pivot{std::move(v), std::move(combo)});
    }
  }

  std::size_t rank() const noexcept { return basis_.size(); }

  SpanResult solve(const SparseVector& target) const {
    for (const auto& e : target) {
      if (e.row >= nrows_) throw Error(Errc::IndexOutOfRange, "vector row out of range");
      require_same_ctx(ctx_, e.value.ctx());
    }
    SparseVector v = canonical_vector(target);
    SparseVector acc;
    reduce(v, acc);
    SpanResult result;
    if (!v.empty()) return result;
    result.member = true;
    result.coefficients.assign(ncols_, FieldElement::zero(ctx_));
    for (const auto& e : acc) result.coefficients[e.row] = e.value;
    return result;
  }

 private:
  struct Pivot {
    SparseVector vec;
    SparseVector combo;
  };

  /// Cancels leading entries against the basis; afterwards v_in = v_out + M acc.
  void reduce(SparseVector& v, SparseVector& acc) const {
    while (!v.empty()) {
      auto it = basis_.find(v.front().row);
      if (it == basis_.end()) return;
      FieldElement f = v.front().value / it->second.vec.front().value;
      v = axpy(v, -f, it->second.vec);
      acc = axpy(acc, f, it->second.combo);
    }
  }

  FieldCtx ctx_;
  std::size_t nrows_;
  std::size_t ncols_;
  std::map<std::uint32_t, Pivot> basis_;
};

/// Decides v in colspan(M); on success returns c with M c = v.
inline SpanResult in_span(const SparseMatrix& m, const SparseVector& v) {
  return EchelonBasis(m).solve(v);
}

/// True iff colspan(A) and colspan(B) intersect trivially.
inline bool sum_is_direct(const SparseMatrix& a, const SparseMatrix& b) {
  require_same_ctx(a.ctx(), b.ctx());
  if (a.nrows() != b.nrows()) throw Error(Errc::DimensionMismatch, "row counts differ");
  return rank(SparseMatrix::hcat(a, b)) == rank(a) + rank(b);
}

}  // namespace tdpair
