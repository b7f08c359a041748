#pragma once

#include <variant>

#include "dser/quad_space.hpp"

namespace dser {

/// Coordinate generator E(alpha_ij) or E*(beta_ij), parameterized by the
/// scale y of w_ij = y z_j (resp. v_ij = y z_j). Indices are 1-based.
struct CoordGen {
  Direction kind = Direction::ToP;
  std::size_t i = 1, j = 1;
  Scalar y;
};

struct FullGen {
  HomMatrix hom;
};

struct EichlerGen {
  Vector u, v;
  Scalar r;
};

struct BassGen {
  Vector p0;
  Scalar a0;
  Vector w0;
};

using Generator = std::variant<FullGen, CoordGen, EichlerGen, BassGen>;

std::string generator_kind_name(const Generator& g);

/// A matrix certified against T^t psi T = psi.
class OrthMatrix {
 public:
  /// Throws CertificationFailure when the matrix is not orthogonal.
  static OrthMatrix certify(SpacePtr space, Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  const SpacePtr& space() const noexcept { return space_; }
  OrthMatrix inverse() const;

  friend OrthMatrix operator*(const OrthMatrix& a, const OrthMatrix& b);
  friend bool operator==(const OrthMatrix& a, const OrthMatrix& b) { return a.m_ == b.m_; }

 private:
  OrthMatrix(SpacePtr s, Matrix m) : space_(std::move(s)), m_(std::move(m)) {}

  SpacePtr space_;
  Matrix m_;
};

OrthMatrix gen_full(const SpacePtr& s, const HomMatrix& h);
OrthMatrix gen_full_alpha(const SpacePtr& s, const Matrix& a);
OrthMatrix gen_full_beta_star(const SpacePtr& s, const Matrix& b);
OrthMatrix gen_coord(const SpacePtr& s, Direction kind, std::size_t i, std::size_t j, const Scalar& y);
/// Sigma_{u,v,r}(x) = x + u B(v,x) - v B(u,x) - u r B(u,x).
OrthMatrix gen_eichler(const SpacePtr& s, const Vector& u, const Vector& v, const Scalar& r);
/// sigma_{p0,a0,w0}(x) = x + p0 <w0,x> - w0 <p0,x> - p0 a0 <p0,x>.
OrthMatrix gen_bass(const SpacePtr& s, const Vector& p0, const Scalar& a0, const Vector& w0);

/// Certified matrix of any generator.
OrthMatrix generator_matrix(const SpacePtr& s, const Generator& g);
/// Generator with the inverse matrix.
Generator generator_inverse(const Generator& g);

struct Factor {
  std::variant<Generator, OrthMatrix> item;
  int exp = 1;
};

/// Ordered product of factors in one ambient space.
class Word {
 public:
  explicit Word(SpacePtr space) : space_(std::move(space)) {}
  static Word of(SpacePtr space, Generator g, int exp = 1);
  static Word of(const OrthMatrix& m);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }

  Word& push(Generator g, int exp = 1);
  Word& push(const OrthMatrix& m, int exp = 1);
  Word& append(const Word& w);

  friend Word operator*(const Word& a, const Word& b);

 private:
  SpacePtr space_;
  std::vector<Factor> factors_;
};

/// Uncertified matrix of a single factor (exponent applied).
Matrix factor_matrix(const AmbientSpace& s, const Factor& f);
OrthMatrix word_to_matrix(const Word& w);
Word word_inverse(const Word& w);
/// h g h^{-1}.
Word conjugate(const Word& g, const Word& h);

}  // namespace dser
