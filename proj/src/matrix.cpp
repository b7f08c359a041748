#include <bit>
#include <sstream>

#include "dser/matrix.hpp"

namespace dser {

namespace {

void require_shape(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

void require_ring(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorCode::DescriptorMismatch, a.ring().descriptor() + " vs " + b.ring().descriptor());
}

}  // namespace

Matrix::Matrix(const Ring& ring, std::size_t rows, std::size_t cols)
    : ring_(&ring), rows_(rows), cols_(cols), data_(rows * cols, Scalar(ring, 0)) {}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(ring, 1);
  return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.front().size() : 0;
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require_shape(rows[i].size() == c, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!(rows[i][j].ring() == ring)) throw Error(ErrorCode::DescriptorMismatch, "entry outside " + ring.descriptor());
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::column(const Vector& v) {
  if (v.empty()) throw Error(ErrorCode::DimensionMismatch, "empty vector");
  Matrix m(v.front().ring(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(*ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  require_shape(r0 + rows <= rows_ && c0 + cols <= cols_, "block out of range");
  Matrix b(*ring_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_shape(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  require_ring(*this, b);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Vector Matrix::col(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix Matrix::map(const Ring& target, const std::function<Scalar(const Scalar&)>& fn) const {
  Matrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = fn(data_[i]);
    if (!(out.data_[i].ring() == target)) throw Error(ErrorCode::DescriptorMismatch, "map left the target ring");
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> Matrix::first_difference(const Matrix& o) const {
  require_shape(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in comparison");
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != o(i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_ring(a, b);
  require_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape mismatch in +");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i)
    if (!b.data_[i].is_zero()) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.data_)
    if (!x.is_zero()) x = -x;
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_ring(a, b);
  require_shape(a.cols_ == b.rows_, "shape mismatch in *");
  Matrix c(*a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      bool x_one = x.is_one();
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (y.is_zero()) continue;
        Scalar& dst = c(i, j);
        if (x_one) {
          dst = dst.is_zero() ? y : dst + y;
        } else if (y.is_one()) {
          dst = dst.is_zero() ? x : dst + x;
        } else {
          dst = dst.is_zero() ? x * y : dst + x * y;
        }
      }
    }
  }
  return c;
}

Matrix operator*(const Scalar& c, const Matrix& a) {
  Matrix out = a;
  for (auto& x : out.data_)
    if (!x.is_zero()) x = c * x;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring()) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

Vector operator*(const Matrix& a, const Vector& v) {
  require_shape(a.cols() == v.size(), "matrix-vector shape mismatch");
  Vector out(a.rows(), Scalar(a.ring(), 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Scalar determinant(const Matrix& a) {
  require_shape(a.is_square(), "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  const Ring& r = a.ring();
  if (n == 0) return Scalar(r, 1);
  if (n > 20) throw Error(ErrorCode::DimensionMismatch, "determinant supports n <= 20");
  // partial[mask]: signed sum over assignments of the first popcount(mask)
  // rows to the columns in mask.
  std::vector<Scalar> partial(std::size_t{1} << n, Scalar(r, 0));
  partial[0] = Scalar(r, 1);
  for (std::size_t mask = 0; mask < partial.size(); ++mask) {
    if (partial[mask].is_zero()) continue;
    std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const Scalar& entry = a(row, c);
      if (entry.is_zero()) continue;
      int larger = std::popcount(mask >> (c + 1));
      Scalar term = partial[mask] * entry;
      if (larger % 2) term = -term;
      partial[mask | (std::size_t{1} << c)] += term;
    }
  }
  return partial.back();
}

Matrix adjugate(const Matrix& a) {
  require_shape(a.is_square(), "adjugate of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix adj(a.ring(), n, n);
  if (n == 1) {
    adj(0, 0) = Scalar(a.ring(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix minor(a.ring(), n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      Scalar cof = determinant(minor);
      adj(j, i) = (i + j) % 2 ? -cof : cof;
    }
  }
  return adj;
}

Matrix inverse(const Matrix& a) {
  Scalar det = determinant(a);
  if (!det.is_unit()) throw Error(ErrorCode::NotAUnit, "determinant " + det.to_string() + " is not a unit");
  return det.inverse() * adjugate(a);
}

}  // namespace dser
