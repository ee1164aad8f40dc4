#include "orbifrob/linalg.hpp"

#include <algorithm>

namespace orbifrob {

std::optional<DenseMatrix> inverse(const DenseMatrix& m) {
  const std::size_t n = m.size();
  DenseMatrix a = m;
  DenseMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(a(piv, col))) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const Rational scale = 1 / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_zero(a(col, c))) a(r, c) -= f * a(col, c);
        if (!is_zero(inv(col, c))) inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Vec RowEchelon::reduce(Vec v) const {
  for (std::size_t k = 0; k < rows_.size() && !v.empty(); ++k) {
    const Rational c = v.coeff(pivots_[k]);
    if (!is_zero(c)) v.add_scaled(rows_[k], -c);
  }
  return v;
}

bool RowEchelon::insert(Vec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t pivot = v.begin()->first;
  v *= 1 / v.begin()->second;
  for (auto& row : rows_) {
    const Rational c = row.coeff(pivot);
    if (!is_zero(c)) row.add_scaled(v, -c);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

std::optional<std::vector<Rational>> RowEchelon::coordinates(const Vec& v) const {
  std::vector<Rational> coords(rows_.size());
  Vec residual = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    coords[k] = v.coeff(pivots_[k]);
    if (!is_zero(coords[k])) residual.add_scaled(rows_[k], -coords[k]);
  }
  if (!residual.empty()) return std::nullopt;
  return coords;
}

std::size_t rank(const std::vector<Vec>& rows) {
  RowEchelon ech;
  for (const auto& r : rows) ech.insert(r);
  return ech.rank();
}

}  // namespace orbifrob
