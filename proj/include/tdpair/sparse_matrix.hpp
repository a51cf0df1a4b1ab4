#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"

namespace tdpair {

struct Entry {
  std::uint32_t row;
  FieldElement value;
};

/// Nonzero entries sorted by row.
using SparseVector = std::vector<Entry>;

/// Sorts by row, merges duplicate rows by addition, drops zeros.
inline SparseVector canonical_vector(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.row < b.row; });
  SparseVector out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().row == e.row) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.value.is_zero(); });
  return out;
}

/// Column-major exact sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix(FieldCtx ctx, std::size_t nrows) : ctx_(ctx), nrows_(nrows) {}

  SparseMatrix(FieldCtx ctx, std::size_t nrows, std::size_t ncols)
      : ctx_(ctx), nrows_(nrows), columns_(ncols) {}

  static SparseMatrix identity(std::size_t n, const FieldCtx& ctx) {
    SparseMatrix m(ctx, n);
    for (std::size_t i = 0; i < n; ++i) {
      m.push_column({Entry{static_cast<std::uint32_t>(i), FieldElement::one(ctx)}});
    }
    return m;
  }

  /// Builds from a row-major dense table.
  static SparseMatrix from_dense(const std::vector<std::vector<FieldElement>>& rows,
                                 std::size_t ncols, const FieldCtx& ctx) {
    SparseMatrix m(ctx, rows.size());
    for (std::size_t c = 0; c < ncols; ++c) {
      SparseVector col;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ncols) throw Error(Errc::DimensionMismatch, "ragged dense matrix");
        col.push_back(Entry{static_cast<std::uint32_t>(r), rows[r][c]});
      }
      m.push_column(std::move(col));
    }
    return m;
  }

  void push_column(std::vector<Entry> entries) {
    for (const auto& e : entries) {
      if (e.row >= nrows_) throw Error(Errc::IndexOutOfRange, "row index out of range");
      require_same_ctx(ctx_, e.value.ctx());
    }
    columns_.push_back(canonical_vector(std::move(entries)));
  }

  const FieldCtx& ctx() const noexcept { return ctx_; }
  std::size_t nrows() const noexcept { return nrows_; }
  std::size_t ncols() const noexcept { return columns_.size(); }
  const SparseVector& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVector>& columns() const noexcept { return columns_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  FieldElement at(std::size_t r, std::size_t c) const {
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.row < row; });
    if (it != col.end() && it->row == r) return it->value;
    return FieldElement::zero(ctx_);
  }

  SparseMatrix transpose() const {
    std::vector<std::vector<Entry>> rows(nrows_);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      for (const auto& e : columns_[c]) {
        rows[e.row].push_back(Entry{static_cast<std::uint32_t>(c), e.value});
      }
    }
    SparseMatrix t(ctx_, columns_.size());
    for (auto& r : rows) t.push_column(std::move(r));
    return t;
  }

  /// [A | B]
  static SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b) {
    require_same_ctx(a.ctx_, b.ctx_);
    if (a.nrows_ != b.nrows_) throw Error(Errc::DimensionMismatch, "hcat row counts differ");
    SparseMatrix m = a;
    m.columns_.insert(m.columns_.end(), b.columns_.begin(), b.columns_.end());
    return m;
  }

  /// Text dump: header "rows cols ctx", then "r c value" sorted by (c, r).
  void dump(std::ostream& os) const {
    os << nrows_ << ' ' << columns_.size() << ' ' << ctx_.to_string() << '\n';
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      for (const auto& e : columns_[c]) os << e.row << ' ' << c << ' ' << e.value.to_string() << '\n';
    }
  }

  std::string dump_string() const {
    std::ostringstream os;
    dump(os);
    return os.str();
  }

  static SparseMatrix parse(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    std::string ctx_text;
    if (!(is >> rows >> cols >> ctx_text)) throw Error(Errc::ParseError, "bad matrix header");
    FieldCtx ctx = FieldCtx::parse(ctx_text);
    std::vector<std::vector<Entry>> col_entries(cols);
    std::size_t r = 0, c = 0;
    std::string value;
    while (is >> r >> c >> value) {
      if (r >= rows || c >= cols) throw Error(Errc::IndexOutOfRange, "matrix entry out of range");
      col_entries[c].push_back(Entry{static_cast<std::uint32_t>(r), FieldElement::parse(value, ctx)});
    }
    if (!is.eof()) throw Error(Errc::ParseError, "bad matrix entry line");
    SparseMatrix m(ctx, rows);
    for (auto& e : col_entries) m.push_column(std::move(e));
    return m;
  }

 private:
  FieldCtx ctx_;
  std::size_t nrows_ = 0;
  std::vector<SparseVector> columns_;
};

}  // namespace tdpair
