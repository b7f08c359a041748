#pragma once

// Quadratic space Q with Gram matrix phi (of B_q, so q(z) = z^t phi z / 2)
// and the ambient space Q + H(P) with coordinates ordered
// (z_1..z_n, x_1..x_m, f_1..f_m).

#include <memory>

#include "dser/matrix.hpp"

namespace dser {

class QuadraticSpace {
 public:
  /// Rejects non-symmetric (NotSymmetric) and singular (SingularForm) forms.
  static QuadraticSpace make(const Matrix& gram);

  std::size_t rank() const noexcept { return gram_.rows(); }
  const Ring& ring() const noexcept { return gram_.ring(); }
  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& gram_inverse() const noexcept { return gram_inv_; }

  Scalar bilinear(const Vector& u, const Vector& v) const;
  Scalar q_value(const Vector& u) const;

  bool is_diagonal() const;

 private:
  Matrix gram_, gram_inv_;
};

class AmbientSpace;
using SpacePtr = std::shared_ptr<const AmbientSpace>;

class AmbientSpace {
 public:
  AmbientSpace(QuadraticSpace q, std::size_t m);

  const QuadraticSpace& q_part() const noexcept { return q_; }
  const Ring& ring() const noexcept { return q_.ring(); }
  std::size_t n() const noexcept { return q_.rank(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return n() + 2 * m_; }
  const Matrix& phi() const noexcept { return q_.gram(); }
  const Matrix& psi() const noexcept { return psi_; }

  // Matrix positions of basis vectors; arguments are 1-based.
  std::size_t z_index(std::size_t j) const;
  std::size_t x_index(std::size_t i) const;
  std::size_t f_index(std::size_t i) const;

  Vector zero_vector() const;
  Vector basis(std::size_t index) const;

  Scalar bilinear(const Vector& u, const Vector& v) const;
  Scalar q_value(const Vector& u) const;

  /// T^t psi T = psi exactly (which forces T invertible).
  bool is_orthogonal(const Matrix& t) const;
  /// psi^{-1} T^t psi, the inverse of an orthogonal T.
  Matrix orthogonal_inverse(const Matrix& t) const;

  /// Human-readable "n=..,m=..,ring=..".
  std::string summary() const;

  friend bool operator==(const AmbientSpace& a, const AmbientSpace& b);

 private:
  QuadraticSpace q_;
  std::size_t m_;
  Matrix psi_, psi_inv_;
};

SpacePtr ambient(const QuadraticSpace& q, std::size_t m);
bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b);

/// alpha: Q -> P or beta: Q -> P*.
enum class Direction { ToP, ToPDual };

struct HomMatrix {
  Direction dir = Direction::ToP;
  Matrix entries;  // m x n

  friend bool operator==(const HomMatrix& a, const HomMatrix& b) {
    return a.dir == b.dir && a.entries == b.entries;
  }
};

HomMatrix zero_hom(const AmbientSpace& s, Direction dir);

/// phi^{-1} A^t (n x m).
Matrix dual_star(const AmbientSpace& s, const HomMatrix& h);

/// The hom of a coordinate generator: row i is y * phi_{j,.}, i.e. the map
/// z -> B(y z_j, z) x_i (or f_i). Its dual sends x_i / f_i to y z_j.
HomMatrix coord_hom(const AmbientSpace& s, Direction dir, std::size_t i, std::size_t j, const Scalar& y);

/// Reads y back from a hom of the shape produced by coord_hom; nullopt if
/// the hom has a different shape.
std::optional<Scalar> coordinate_scale(const AmbientSpace& s, const HomMatrix& h, std::size_t i, std::size_t j);

/// Projection pieces eta_i p_i alpha eta_j p_j (single entry of A) and
/// eta_j p_j alpha* eta_i p_i (single entry of alpha*).
HomMatrix projection_piece(const HomMatrix& h, std::size_t i, std::size_t j);
Matrix projection_dual_piece(const AmbientSpace& s, const HomMatrix& h, std::size_t i, std::size_t j);

/// Whether (alpha_ij)* agrees with alpha*_ij for every (i, j).
bool projection_duals_coincide(const AmbientSpace& s, const HomMatrix& h);

/// The hom and its dual as endomorphisms of the ambient module:
/// A sits in the x rows (or f rows) and z columns; alpha* in the z rows and
/// f columns (or x columns).
Matrix ambient_hom(const AmbientSpace& s, const HomMatrix& h);
Matrix ambient_dual(const AmbientSpace& s, const HomMatrix& h);

}  // namespace dser
