#include "dser/quad_space.hpp"

namespace dser {

QuadraticSpace QuadraticSpace::make(const Matrix& gram) {
  if (!gram.is_square() || gram.rows() == 0) throw Error(ErrorCode::NotSymmetric, "gram must be a non-empty square matrix");
  if (!gram.is_symmetric()) throw Error(ErrorCode::NotSymmetric, gram.to_string());
  Scalar det = determinant(gram);
  if (!det.is_unit()) throw Error(ErrorCode::SingularForm, "det = " + det.to_string());
  QuadraticSpace q;
  q.gram_ = gram;
  q.gram_inv_ = det.inverse() * adjugate(gram);
  return q;
}

Scalar QuadraticSpace::bilinear(const Vector& u, const Vector& v) const {
  if (u.size() != rank() || v.size() != rank()) throw Error(ErrorCode::DimensionMismatch, "vector length != rank");
  Scalar acc(ring(), 0);
  Vector gv = gram_ * v;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero()) acc += u[i] * gv[i];
  return acc;
}

Scalar QuadraticSpace::q_value(const Vector& u) const { return bilinear(u, u).half(); }

bool QuadraticSpace::is_diagonal() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (i != j && !gram_(i, j).is_zero()) return false;
  return true;
}

AmbientSpace::AmbientSpace(QuadraticSpace q, std::size_t m) : q_(std::move(q)), m_(m) {
  if (m_ == 0) throw Error(ErrorCode::DimensionMismatch, "hyperbolic rank must be >= 1");
  const Ring& r = q_.ring();
  psi_ = Matrix(r, dim(), dim());
  psi_inv_ = Matrix(r, dim(), dim());
  psi_.set_block(0, 0, q_.gram());
  psi_inv_.set_block(0, 0, q_.gram_inverse());
  for (std::size_t i = 1; i <= m_; ++i) {
    for (Matrix* p : {&psi_, &psi_inv_}) {
      (*p)(x_index(i), f_index(i)) = Scalar(r, 1);
      (*p)(f_index(i), x_index(i)) = Scalar(r, 1);
    }
  }
}

std::size_t AmbientSpace::z_index(std::size_t j) const {
  if (j < 1 || j > n()) throw Error(ErrorCode::IndexOutOfRange, "j = " + std::to_string(j));
  return j - 1;
}

std::size_t AmbientSpace::x_index(std::size_t i) const {
  if (i < 1 || i > m_) throw Error(ErrorCode::IndexOutOfRange, "i = " + std::to_string(i));
  return n() + i - 1;
}

std::size_t AmbientSpace::f_index(std::size_t i) const {
  if (i < 1 || i > m_) throw Error(ErrorCode::IndexOutOfRange, "i = " + std::to_string(i));
  return n() + m_ + i - 1;
}

Vector AmbientSpace::zero_vector() const { return Vector(dim(), Scalar(ring(), 0)); }

Vector AmbientSpace::basis(std::size_t index) const {
  Vector v = zero_vector();
  v.at(index) = Scalar(ring(), 1);
  return v;
}

Scalar AmbientSpace::bilinear(const Vector& u, const Vector& v) const {
  if (u.size() != dim() || v.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector length != n + 2m");
  Vector pv = psi_ * v;
  Scalar acc(ring(), 0);
  for (std::size_t i = 0; i < dim(); ++i)
    if (!u[i].is_zero() && !pv[i].is_zero()) acc += u[i] * pv[i];
  return acc;
}

Scalar AmbientSpace::q_value(const Vector& u) const { return bilinear(u, u).half(); }

bool AmbientSpace::is_orthogonal(const Matrix& t) const {
  if (t.rows() != dim() || t.cols() != dim()) throw Error(ErrorCode::DimensionMismatch, "expected a square matrix of size n + 2m");
  return t.transpose() * psi_ * t == psi_;
}

Matrix AmbientSpace::orthogonal_inverse(const Matrix& t) const { return psi_inv_ * t.transpose() * psi_; }

std::string AmbientSpace::summary() const {
  return "n=" + std::to_string(n()) + ",m=" + std::to_string(m_) + ",ring=" + ring().descriptor();
}

bool operator==(const AmbientSpace& a, const AmbientSpace& b) {
  return a.m_ == b.m_ && a.phi() == b.phi();
}

SpacePtr ambient(const QuadraticSpace& q, std::size_t m) { return std::make_shared<const AmbientSpace>(q, m); }

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b))
    throw Error(ErrorCode::SpaceMismatch, (a ? a->summary() : "null") + " vs " + (b ? b->summary() : "null"));
}

HomMatrix zero_hom(const AmbientSpace& s, Direction dir) { return HomMatrix{dir, Matrix(s.ring(), s.m(), s.n())}; }

namespace {

void check_hom(const AmbientSpace& s, const HomMatrix& h) {
  if (h.entries.rows() != s.m() || h.entries.cols() != s.n())
    throw Error(ErrorCode::DimensionMismatch, "hom must be m x n");
  if (!(h.entries.ring() == s.ring())) throw Error(ErrorCode::DescriptorMismatch, "hom over a different ring");
}

}  // namespace

Matrix dual_star(const AmbientSpace& s, const HomMatrix& h) {
  check_hom(s, h);
  return s.q_part().gram_inverse() * h.entries.transpose();
}

HomMatrix coord_hom(const AmbientSpace& s, Direction dir, std::size_t i, std::size_t j, const Scalar& y) {
  s.x_index(i);
  s.z_index(j);
  HomMatrix h = zero_hom(s, dir);
  for (std::size_t c = 0; c < s.n(); ++c)
    if (!s.phi()(j - 1, c).is_zero()) h.entries(i - 1, c) = y * s.phi()(j - 1, c);
  return h;
}

std::optional<Scalar> coordinate_scale(const AmbientSpace& s, const HomMatrix& h, std::size_t i, std::size_t j) {
  Scalar y = dual_star(s, h)(s.z_index(j), i - 1);
  if (coord_hom(s, h.dir, i, j, y) == h) return y;
  return std::nullopt;
}

HomMatrix projection_piece(const HomMatrix& h, std::size_t i, std::size_t j) {
  HomMatrix p{h.dir, Matrix(h.entries.ring(), h.entries.rows(), h.entries.cols())};
  p.entries(i - 1, j - 1) = h.entries(i - 1, j - 1);
  return p;
}

Matrix projection_dual_piece(const AmbientSpace& s, const HomMatrix& h, std::size_t i, std::size_t j) {
  Matrix d = dual_star(s, h);
  Matrix p(s.ring(), s.n(), s.m());
  p(j - 1, i - 1) = d(j - 1, i - 1);
  return p;
}

bool projection_duals_coincide(const AmbientSpace& s, const HomMatrix& h) {
  for (std::size_t i = 1; i <= s.m(); ++i)
    for (std::size_t j = 1; j <= s.n(); ++j)
      if (dual_star(s, projection_piece(h, i, j)) != projection_dual_piece(s, h, i, j)) return false;
  return true;
}

Matrix ambient_hom(const AmbientSpace& s, const HomMatrix& h) {
  check_hom(s, h);
  Matrix out(s.ring(), s.dim(), s.dim());
  out.set_block(h.dir == Direction::ToP ? s.x_index(1) : s.f_index(1), 0, h.entries);
  return out;
}

Matrix ambient_dual(const AmbientSpace& s, const HomMatrix& h) {
  Matrix out(s.ring(), s.dim(), s.dim());
  out.set_block(0, h.dir == Direction::ToP ? s.f_index(1) : s.x_index(1), dual_star(s, h));
  return out;
}

}  // namespace dser
