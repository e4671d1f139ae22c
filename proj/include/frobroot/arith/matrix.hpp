#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T{}) : r_(rows), c_(cols), d_(rows * cols, fill) {}

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  T& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

  std::vector<T> col(size_t j) const {
    std::vector<T> v(r_);
    for (size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(size_t j, const std::vector<T>& v) {
    for (size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
  }
  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < r_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
    Matrix<decltype(fn(std::declval<const T&>()))> out(r_, c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix b(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  /// Columns side by side.
  Matrix hcat(const Matrix& o) const {
    if (o.r_ != r_) fail(ErrorKind::Internal, "arith", "hcat row mismatch");
    Matrix m(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
      for (size_t j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
    }
    return m;
  }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

}  // namespace frobroot::arith
