#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nugrass/errors.hpp"

namespace nugrass {

/// Row-major dense matrix over a commutative field `F` (Rat or RatFunc).
/// `zero` carries the field context (e.g. the variable count of a RatFunc).
template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const F& zero)
      : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

  static DenseMatrix identity(std::size_t n, const F& zero, const F& one) {
    DenseMatrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& zero() const { return zero_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorCode::ShapeMismatch, "dense product dimensions");
    DenseMatrix r(rows_, o.cols_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t t = 0; t < cols_; ++t) {
        const F& a = (*this)(i, t);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const F& b = o(t, j);
          if (!is_zero(b)) r(i, j) = r(i, j) + a * b;
        }
      }
    return r;
  }

  /// Columns listed in `idx`, in that order.
  DenseMatrix columns(const std::vector<std::size_t>& idx) const {
    DenseMatrix r(rows_, idx.size(), zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
  }

  template <class G, class Fn>
  DenseMatrix<G> map(const G& zero, Fn&& fn) const {
    DenseMatrix<G> r(rows_, cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = fn((*this)(i, j));
    return r;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<DenseMatrix> inverse(const F& one) const {
    if (rows_ != cols_) fail(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
    const std::size_t n = rows_;
    DenseMatrix a = *this;
    DenseMatrix inv = identity(n, zero_, one);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r)
        if (!is_zero(a(r, c))) {
          piv = r;
          break;
        }
      if (piv == n) return std::nullopt;
      if (piv != c) {
        a.swap_rows(piv, c);
        inv.swap_rows(piv, c);
      }
      const F p = one / a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) = a(c, j) * p;
        inv(c, j) = inv(c, j) * p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || is_zero(a(r, c))) continue;
        const F f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          if (!is_zero(a(c, j))) a(r, j) = a(r, j) - f * a(c, j);
          if (!is_zero(inv(c, j))) inv(r, j) = inv(r, j) - f * inv(c, j);
        }
      }
    }
    return inv;
  }

  std::size_t rank() const {
    DenseMatrix a = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t r = rank; r < rows_; ++r)
        if (!is_zero(a(r, c))) {
          piv = r;
          break;
        }
      if (piv == rows_) continue;
      a.swap_rows(piv, rank);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (is_zero(a(r, c))) continue;
        const F f = a(r, c) / a(rank, c);
        for (std::size_t j = c; j < cols_; ++j) a(r, j) = a(r, j) - f * a(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

 private:
  static bool is_zero(const F& v) {
    if constexpr (requires { v.is_zero(); }) {
      return v.is_zero();
    } else {
      return v == 0;
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  F zero_{};
  std::vector<F> data_;
};

}  // namespace nugrass
