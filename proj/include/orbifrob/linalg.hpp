#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbifrob/rational.hpp"
#include "orbifrob/sparse.hpp"

namespace orbifrob {

/// Row-major dense square matrix of exact rationals.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n = 0) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<Rational> data_;
};

/// Exact inverse by Gauss-Jordan with first-nonzero pivoting; nullopt if singular.
std::optional<DenseMatrix> inverse(const DenseMatrix& m);

/// Incrementally maintained reduced row echelon basis of a subspace.
///
/// Rows are kept fully reduced with pivot coefficient 1 and sorted by pivot,
/// so the basis is canonical for the spanned subspace and the coordinates of
/// any vector in the span are its entries at the pivot positions.
class RowEchelon {
 public:
  /// Reduces v against the basis; returns true if v enlarged the span.
  bool insert(Vec v);

  /// Residual of v after reduction (zero iff v is in the span).
  Vec reduce(Vec v) const;

  /// Coordinates of v in the row basis. Returns nullopt if v is not in the span.
  std::optional<std::vector<Rational>> coordinates(const Vec& v) const;

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a set of sparse rows.
std::size_t rank(const std::vector<Vec>& rows);

}  // namespace orbifrob
