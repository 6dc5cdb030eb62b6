#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "regapprox/errors.hpp"

namespace regapprox {

/// Dense square matrix, row-major, 0-based storage. The public operations in
/// the rest of the library speak 1-based indices like the mathematics; this
/// type stays 0-based.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0)) {
    SquareMatrix m(n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  template <class F>
  auto map(F&& f) const -> SquareMatrix<std::invoke_result_t<F, const T&>> {
    SquareMatrix<std::invoke_result_t<F, const T&>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require_same_size(a, b);
    SquareMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    require_same_size(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    require_same_size(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend SquareMatrix operator*(const T& s, SquareMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  static void require_same_size(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw InvalidArgument("matrix", "dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Square-and-multiply exponentiation.
template <class T>
SquareMatrix<T> power(SquareMatrix<T> base, std::uint64_t n) {
  SquareMatrix<T> result = SquareMatrix<T>::identity(base.size());
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Determinant by Gaussian elimination over a field (exact for rationals).
template <class T>
T determinant(SquareMatrix<T> a) {
  const std::size_t n = a.size();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      T factor = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

}  // namespace regapprox
