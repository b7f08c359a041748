#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dser/ring.hpp"

namespace dser {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix of scalars over one ring.
class Matrix {
 public:
  Matrix() : ring_(&Ring::rationals()) {}
  Matrix(const Ring& ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_rows(const Ring& ring, const std::vector<std::vector<Scalar>>& rows);
  static Matrix column(const Vector& v);

  const Ring& ring() const noexcept { return *ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Vector col(std::size_t c) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_symmetric() const;

  /// Applies `fn` entrywise; the result lives in `target`.
  Matrix map(const Ring& target, const std::function<Scalar(const Scalar&)>& fn) const;

  /// First (row, col) where the matrices differ, scanning row-major.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& o) const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  const Ring* ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

Vector operator*(const Matrix& a, const Vector& v);

/// Division-free determinant (row-by-row expansion over column subsets).
Scalar determinant(const Matrix& a);
Matrix adjugate(const Matrix& a);
/// Inverse via the adjugate; the determinant must be a unit.
Matrix inverse(const Matrix& a);

}  // namespace dser
