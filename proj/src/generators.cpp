#include "dser/generators.hpp"

namespace dser {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// I + H - H* - H H*/2 for the ambient hom H and its dual H*.
Matrix full_matrix(const AmbientSpace& s, const HomMatrix& h) {
  Matrix hm = ambient_hom(s, h);
  Matrix hd = ambient_dual(s, h);
  Matrix prod = hm * hd;
  Matrix out = Matrix::identity(s.ring(), s.dim()) + hm - hd;
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c)
      if (!prod(r, c).is_zero()) out(r, c) -= prod(r, c).half();
  return out;
}

// Direct entry writes for the coordinate generator: w = y z_j,
// u = x_i (or f_i), q(w) = y^2 phi_jj / 2.
Matrix coord_matrix(const AmbientSpace& s, const CoordGen& g) {
  std::size_t zj = s.z_index(g.j);
  std::size_t into = g.kind == Direction::ToP ? s.x_index(g.i) : s.f_index(g.i);
  std::size_t from = g.kind == Direction::ToP ? s.f_index(g.i) : s.x_index(g.i);
  Matrix out = Matrix::identity(s.ring(), s.dim());
  if (g.y.is_zero()) return out;
  out(zj, from) = -g.y;
  for (std::size_t c = 0; c < s.n(); ++c)
    if (!s.phi()(g.j - 1, c).is_zero()) out(into, c) = g.y * s.phi()(g.j - 1, c);
  out(into, from) = -(g.y * g.y * s.phi()(g.j - 1, g.j - 1)).half();
  return out;
}

void check_vector(const AmbientSpace& s, const Vector& v) {
  if (v.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "vector length != n + 2m");
  for (const auto& x : v)
    if (!(x.ring() == s.ring())) throw Error(ErrorCode::DescriptorMismatch, "vector over a different ring");
}

Matrix outer(const Vector& a, const Vector& b) {
  Matrix out(a.front().ring(), a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].is_zero()) continue;
    for (std::size_t c = 0; c < b.size(); ++c)
      if (!b[c].is_zero()) out(r, c) = a[r] * b[c];
  }
  return out;
}

Vector scaled(const Scalar& c, const Vector& v) {
  Vector out = v;
  for (auto& x : out) x = c * x;
  return out;
}

Matrix eichler_matrix(const AmbientSpace& s, const Vector& u, const Vector& v, const Scalar& r) {
  check_vector(s, u);
  check_vector(s, v);
  if (!s.q_value(u).is_zero()) throw Error(ErrorCode::NotIsotropic, "q(u) != 0");
  if (!s.bilinear(u, v).is_zero()) throw Error(ErrorCode::NotOrthogonalPair, "B(u,v) != 0");
  if (r != s.q_value(v)) throw Error(ErrorCode::WrongR, "r != q(v)");
  Vector psi_u = s.psi() * u;
  Vector psi_v = s.psi() * v;
  return Matrix::identity(s.ring(), s.dim()) + outer(u, psi_v) - outer(v, psi_u) - outer(scaled(r, u), psi_u);
}

Matrix bass_matrix(const AmbientSpace& s, const Vector& p0, const Scalar& a0, const Vector& w0) {
  check_vector(s, p0);
  check_vector(s, w0);
  if (!s.q_value(p0).is_zero()) throw Error(ErrorCode::NotIsotropic, "q(p0) != 0");
  if (!s.bilinear(w0, p0).is_zero()) throw Error(ErrorCode::NotOrthogonalPair, "<w0,p0> != 0");
  if (a0 != s.q_value(w0)) throw Error(ErrorCode::WrongR, "a0 != q(w0)");
  // Column by column: sigma(e_c) = e_c + p0 <w0,e_c> - w0 <p0,e_c> - p0 a0 <p0,e_c>.
  Matrix out = Matrix::identity(s.ring(), s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) {
    Vector e = s.basis(c);
    Scalar pw = s.bilinear(w0, e);
    Scalar pp = s.bilinear(p0, e);
    Scalar coef_p = pw - a0 * pp;
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Scalar add = p0[r] * coef_p - w0[r] * pp;
      if (!add.is_zero()) out(r, c) += add;
    }
  }
  return out;
}

Matrix raw_generator_matrix(const AmbientSpace& s, const Generator& g) {
  return std::visit(overloaded{
                        [&](const FullGen& f) { return full_matrix(s, f.hom); },
                        [&](const CoordGen& c) { return coord_matrix(s, c); },
                        [&](const EichlerGen& e) { return eichler_matrix(s, e.u, e.v, e.r); },
                        [&](const BassGen& b) { return bass_matrix(s, b.p0, b.a0, b.w0); },
                    },
                    g);
}

}  // namespace

std::string generator_kind_name(const Generator& g) {
  return std::visit(overloaded{
                        [](const FullGen& f) -> std::string { return f.hom.dir == Direction::ToP ? "FullAlpha" : "FullBetaStar"; },
                        [](const CoordGen& c) -> std::string { return c.kind == Direction::ToP ? "CoordAlpha" : "CoordBetaStar"; },
                        [](const EichlerGen&) -> std::string { return "Eichler"; },
                        [](const BassGen&) -> std::string { return "BassTransvection"; },
                    },
                    g);
}

OrthMatrix OrthMatrix::certify(SpacePtr space, Matrix m) {
  if (!space) throw Error(ErrorCode::SpaceMismatch, "null space");
  if (m.rows() != space->dim() || m.cols() != space->dim())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(space->dim()) + " x " + std::to_string(space->dim()));
  Matrix lhs = m.transpose() * space->psi() * m;
  if (auto diff = lhs.first_difference(space->psi())) {
    throw Error(ErrorCode::CertificationFailure, "T^t psi T differs from psi at (" + std::to_string(diff->first) + "," +
                                                     std::to_string(diff->second) + ")");
  }
  return OrthMatrix(std::move(space), std::move(m));
}

OrthMatrix OrthMatrix::inverse() const { return OrthMatrix(space_, space_->orthogonal_inverse(m_)); }

OrthMatrix operator*(const OrthMatrix& a, const OrthMatrix& b) {
  require_same_space(a.space_, b.space_);
  return OrthMatrix(a.space_, a.m_ * b.m_);
}

OrthMatrix gen_full(const SpacePtr& s, const HomMatrix& h) { return OrthMatrix::certify(s, full_matrix(*s, h)); }

OrthMatrix gen_full_alpha(const SpacePtr& s, const Matrix& a) { return gen_full(s, HomMatrix{Direction::ToP, a}); }

OrthMatrix gen_full_beta_star(const SpacePtr& s, const Matrix& b) { return gen_full(s, HomMatrix{Direction::ToPDual, b}); }

OrthMatrix gen_coord(const SpacePtr& s, Direction kind, std::size_t i, std::size_t j, const Scalar& y) {
  return OrthMatrix::certify(s, coord_matrix(*s, CoordGen{kind, i, j, y}));
}

OrthMatrix gen_eichler(const SpacePtr& s, const Vector& u, const Vector& v, const Scalar& r) {
  return OrthMatrix::certify(s, eichler_matrix(*s, u, v, r));
}

OrthMatrix gen_bass(const SpacePtr& s, const Vector& p0, const Scalar& a0, const Vector& w0) {
  return OrthMatrix::certify(s, bass_matrix(*s, p0, a0, w0));
}

OrthMatrix generator_matrix(const SpacePtr& s, const Generator& g) { return OrthMatrix::certify(s, raw_generator_matrix(*s, g)); }

Generator generator_inverse(const Generator& g) {
  return std::visit(overloaded{
                        [](const FullGen& f) -> Generator { return FullGen{HomMatrix{f.hom.dir, -f.hom.entries}}; },
                        [](const CoordGen& c) -> Generator { return CoordGen{c.kind, c.i, c.j, -c.y}; },
                        [](const EichlerGen& e) -> Generator {
                          Vector v = e.v;
                          for (auto& x : v) x = -x;
                          return EichlerGen{e.u, v, e.r};
                        },
                        [](const BassGen& b) -> Generator {
                          Vector w = b.w0;
                          for (auto& x : w) x = -x;
                          return BassGen{b.p0, b.a0, w};
                        },
                    },
                    g);
}

Word Word::of(SpacePtr space, Generator g, int exp) {
  Word w(std::move(space));
  w.push(std::move(g), exp);
  return w;
}

Word Word::of(const OrthMatrix& m) {
  Word w(m.space());
  w.push(m);
  return w;
}

Word& Word::push(Generator g, int exp) {
  if (exp != 1 && exp != -1) throw Error(ErrorCode::DimensionMismatch, "exponent must be +1 or -1");
  factors_.push_back(Factor{std::move(g), exp});
  return *this;
}

Word& Word::push(const OrthMatrix& m, int exp) {
  require_same_space(space_, m.space());
  if (exp != 1 && exp != -1) throw Error(ErrorCode::DimensionMismatch, "exponent must be +1 or -1");
  factors_.push_back(Factor{m, exp});
  return *this;
}

Word& Word::append(const Word& w) {
  require_same_space(space_, w.space_);
  factors_.insert(factors_.end(), w.factors_.begin(), w.factors_.end());
  return *this;
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  out.append(b);
  return out;
}

Matrix factor_matrix(const AmbientSpace& s, const Factor& f) {
  if (const auto* g = std::get_if<Generator>(&f.item))
    return raw_generator_matrix(s, f.exp == 1 ? *g : generator_inverse(*g));
  const auto& m = std::get<OrthMatrix>(f.item);
  return f.exp == 1 ? m.matrix() : s.orthogonal_inverse(m.matrix());
}

OrthMatrix word_to_matrix(const Word& w) {
  const AmbientSpace& s = *w.space();
  Matrix acc = Matrix::identity(s.ring(), s.dim());
  for (const auto& f : w.factors()) {
    if (const auto* m = std::get_if<OrthMatrix>(&f.item)) require_same_space(w.space(), m->space());
    acc = acc * factor_matrix(s, f);
  }
  return OrthMatrix::certify(w.space(), std::move(acc));
}

Word word_inverse(const Word& w) {
  Word out(w.space());
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it) {
    if (const auto* g = std::get_if<Generator>(&it->item))
      out.push(*g, -it->exp);
    else
      out.push(std::get<OrthMatrix>(it->item), -it->exp);
  }
  return out;
}

Word conjugate(const Word& g, const Word& h) { return h * g * word_inverse(h); }

}  // namespace dser
