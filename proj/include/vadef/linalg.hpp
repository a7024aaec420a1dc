#pragma once

// Exact Gauss-Jordan elimination on sparse rows.  Rows are LinearForms
// (column index -> coefficient); pivots are taken at the first nonzero
// column, so echelon forms are reproducible.

#include <map>
#include <vector>

#include "errors.hpp"
#include "linear_form.hpp"

namespace vadef {

using SparseVector = LinearForm;

struct ExactMatrix {
  std::size_t columns = 0;
  std::vector<SparseVector> rows;
};

/// Incrementally maintained row echelon form.
class Echelon {
 public:
  explicit Echelon(std::size_t columns = 0) : columns_(columns) {}

  /// v reduced against the current pivots; zero iff v lies in the span.
  SparseVector reduce(SparseVector v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      const auto& [col, c] = v.terms()[pos];
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      Scalar f = -c;
      v.axpy(f, rows_[it->second]);
      // entries before `pos` are untouched: pivot rows only reach later columns
    }
    return v;
  }

  /// Adds v; returns true when it was independent of the rows so far.
  bool insert(const SparseVector& v) {
    SparseVector r = reduce(v);
    if (r.is_zero()) return false;
    const Scalar lead = r.terms().front().second;
    r *= Scalar(1) / lead;
    pivots_.emplace(r.terms().front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t columns() const { return columns_; }

  /// Reduced echelon rows, sorted by pivot column.
  std::vector<SparseVector> reduced_rows() const {
    std::vector<SparseVector> out;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      SparseVector row = rows_[it->second];
      // clear every later pivot column; later rows are already reduced
      std::size_t pos = 1;
      while (pos < row.size()) {
        const auto& [col, c] = row.terms()[pos];
        auto p = pivots_.find(col);
        if (p == pivots_.end()) {
          ++pos;
          continue;
        }
        Scalar f = -c;
        row.axpy(f, reduced_.at(col));
      }
      reduced_[it->first] = row;
    }
    for (const auto& [col, idx] : pivots_) {
      (void)idx;
      out.push_back(reduced_.at(col));
    }
    reduced_.clear();
    return out;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    for (const auto& [col, idx] : pivots_) {
      (void)idx;
      out.push_back(col);
    }
    return out;
  }

 private:
  std::size_t columns_;
  std::vector<SparseVector> rows_;
  std::map<std::size_t, std::size_t> pivots_;
  mutable std::map<std::size_t, SparseVector> reduced_;
};

inline Echelon echelon(const ExactMatrix& m) {
  Echelon e(m.columns);
  for (const auto& r : m.rows) e.insert(r);
  return e;
}

inline std::size_t rank(const ExactMatrix& m) { return echelon(m).rank(); }

/// Reduced echelon basis of the row space.
inline std::vector<SparseVector> row_space_basis(const std::vector<SparseVector>& vs, std::size_t columns) {
  Echelon e(columns);
  for (const auto& v : vs) e.insert(v);
  return e.reduced_rows();
}

/// Basis of {x : r.x = 0 for all rows r}, one vector per free column in
/// increasing order, each with a 1 in its free column.
inline std::vector<SparseVector> nullspace(const ExactMatrix& m) {
  Echelon e = echelon(m);
  auto rows = e.reduced_rows();
  std::map<std::size_t, const SparseVector*> by_pivot;
  for (const auto& r : rows) by_pivot[r.terms().front().first] = &r;
  std::vector<SparseVector> out;
  for (std::size_t f = 0; f < m.columns; ++f) {
    if (by_pivot.count(f)) continue;
    SparseVector v = LinearForm::unknown(static_cast<UnknownId>(f));
    for (const auto& [p, row] : by_pivot) {
      Scalar c = row->coeff(static_cast<UnknownId>(f));
      if (!c.is_zero()) v += LinearForm::unknown(static_cast<UnknownId>(p), -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline bool in_span(const std::vector<SparseVector>& basis, const SparseVector& v, std::size_t columns) {
  Echelon e(columns);
  for (const auto& b : basis) e.insert(b);
  return e.contains(v);
}

/// dim(space) - dim(subspace) after checking that subspace lies in space.
inline std::size_t quotient_dim(const std::vector<SparseVector>& space, const std::vector<SparseVector>& subspace,
                                std::size_t columns) {
  Echelon big(columns), small(columns);
  for (const auto& v : space) big.insert(v);
  for (const auto& v : subspace) {
    if (!big.contains(v)) throw NotASubspace("a vector of the subspace lies outside the ambient space");
    small.insert(v);
  }
  return big.rank() - small.rank();
}

}  // namespace vadef
