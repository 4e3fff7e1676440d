#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "k3qf/error.hpp"

namespace k3qf {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::dimension_mismatch, "ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(Errc::dimension_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    return from_rows(cols).transposed();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::dimension_mismatch, "matrix product shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x *= s;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
std::vector<T> operator*(const Matrix<T>& m, const std::vector<T>& x) {
  if (m.cols() != x.size()) throw Error(Errc::dimension_mismatch, "matrix-vector shape");
  std::vector<T> y(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

/// x^T G y
template <class T>
T bilinear(const Matrix<T>& gram, const std::vector<T>& x, const std::vector<T>& y) {
  if (gram.rows() != x.size() || gram.cols() != y.size())
    throw Error(Errc::dimension_mismatch, "bilinear form shape");
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    T row(0);
    for (std::size_t j = 0; j < y.size(); ++j) row += gram(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

/// Block-diagonal direct sum.
template <class T>
Matrix<T> block_diagonal(std::span<const Matrix<T>> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<T> out(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

}  // namespace k3qf
