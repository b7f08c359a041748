#include "doctest.h"

#include "test_support.hpp"

using namespace dser;
using namespace dser::testing;

namespace {

Matrix rows(const Ring& r, std::vector<std::vector<const char*>> text) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& row : text) {
    std::vector<Scalar> v;
    for (const char* t : row) v.push_back(S(r, t));
    out.push_back(v);
  }
  return Matrix::from_rows(r, out);
}

// Image of each basis vector under E_{alpha_ij} computed straight from the
// map (z - <f,x_i> w, x + <w,z> x_i - <f,x_i> q(w) x_i, f), w = y z_j.
Matrix coord_alpha_by_map(const AmbientSpace& s, std::size_t i, std::size_t j, const Scalar& y) {
  Vector w = s.zero_vector();
  w[s.z_index(j)] = y;
  Scalar qw = s.q_value(w);
  Matrix out(s.ring(), s.dim(), s.dim());
  for (std::size_t c = 0; c < s.dim(); ++c) {
    Vector e = s.basis(c);
    Scalar fx = c == s.f_index(i) ? Scalar(s.ring(), 1) : Scalar(s.ring(), 0);
    Vector zpart = s.zero_vector();
    for (std::size_t k = 0; k < s.n(); ++k) zpart[k] = e[k];
    Scalar wz = s.bilinear(w, zpart);
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Scalar v = e[r];
      if (r < s.n()) v -= fx * w[r];
      if (r == s.x_index(i)) v += wz - fx * qw;
      out(r, c) = v;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("gen_full_alpha and gen_full_beta_star examples") {
  const Ring& r = Ring::parse("Q[a,b]");
  SpacePtr s = space_of(r, {{2}}, 1);
  CHECK(gen_full_alpha(s, Matrix(r, 1, 1)).matrix().is_identity());
  CHECK(gen_full_beta_star(s, Matrix(r, 1, 1)).matrix().is_identity());
  CHECK(gen_full_alpha(s, rows(r, {{"a"}})).matrix() ==
        rows(r, {{"1", "0", "-1/2*a"}, {"a", "1", "-1/4*a^2"}, {"0", "0", "1"}}));
  CHECK(gen_full_beta_star(s, rows(r, {{"b"}})).matrix() ==
        rows(r, {{"1", "-1/2*b", "0"}, {"0", "1", "0"}, {"b", "-1/4*b^2", "1"}}));
}

TEST_CASE("full generators are orthogonal with determinant one") {
  Sampler rng(12);
  for (const char* d : {"Q", "Q[x,y]", "GF(10007)", "Q[s,x][1/s]"}) {
    const Ring& r = Ring::parse(d);
    for (int t = 0; t < 25; ++t) {
      SpacePtr s = random_space(rng, r, pick(rng, 3), pick(rng, 3));
      HomMatrix h = random_hom(rng, *s, random_dir(rng), 2);
      OrthMatrix e = gen_full(s, h);
      REQUIRE(s->is_orthogonal(e.matrix()));
      REQUIRE(determinant(e.matrix()).is_one());
    }
  }
}

TEST_CASE("gen_coord") {
  const Ring& q = Ring::rationals();
  SpacePtr s = space_of(q, {{2}}, 1);
  CHECK(gen_coord(s, Direction::ToP, 1, 1, Scalar(q, 0)).matrix().is_identity());
  Matrix e11 = gen_coord(s, Direction::ToP, 1, 1, Scalar(q, 1)).matrix();
  CHECK(e11 == rows(q, {{"1", "0", "-1"}, {"2", "1", "-1"}, {"0", "0", "1"}}));
  CHECK(e11.transpose() * s->psi() * e11 == s->psi());
  // The matrix with 1 in place of 2 fails the orthogonality test.
  CHECK_FALSE(s->is_orthogonal(rows(q, {{"1", "0", "-1"}, {"1", "1", "-1"}, {"0", "0", "1"}})));

  CHECK_THROWS_WITH_AS(gen_coord(s, Direction::ToP, 2, 1, Scalar(q, 1)), doctest::Contains("IndexOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(gen_coord(s, Direction::ToP, 1, 0, Scalar(q, 1)), doctest::Contains("IndexOutOfRange"), Error);

  Sampler rng(13);
  const Ring& r = Ring::parse("Q[x,y]");
  for (int t = 0; t < 40; ++t) {
    SpacePtr sp = random_space(rng, r, pick(rng, 3), pick(rng, 3));
    std::size_t i = pick(rng, sp->m()), j = pick(rng, sp->n());
    Scalar y = rng.scalar(r, 2);
    Direction dir = random_dir(rng);
    Matrix g = gen_coord(sp, dir, i, j, y).matrix();
    REQUIRE(g == gen_full(sp, coord_hom(*sp, dir, i, j, y)).matrix());
    if (dir == Direction::ToP) REQUIRE(g == coord_alpha_by_map(*sp, i, j, y));
  }
}

TEST_CASE("gen_coord is a one-parameter subgroup") {
  Sampler rng(14);
  const Ring& r = Ring::parse("Q[x,y]");
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      SpacePtr s = random_space(rng, r, n, m);
      for (Direction dir : {Direction::ToP, Direction::ToPDual}) {
        for (std::size_t i = 1; i <= m; ++i) {
          for (std::size_t j = 1; j <= n; ++j) {
            Scalar y1 = rng.scalar(r, 2), y2 = rng.scalar(r, 2);
            REQUIRE(gen_coord(s, dir, i, j, y1).matrix() * gen_coord(s, dir, i, j, y2).matrix() ==
                    gen_coord(s, dir, i, j, y1 + y2).matrix());
          }
        }
      }
    }
  }
}

TEST_CASE("gen_eichler") {
  const Ring& q = Ring::rationals();
  SpacePtr s = space_of(q, {{2}}, 1);
  Vector zero = s->zero_vector();
  CHECK(gen_eichler(s, zero, zero, Scalar(q, 0)).matrix().is_identity());

  Vector x1 = s->basis(s->x_index(1)), z1 = s->basis(s->z_index(1)), f1 = s->basis(s->f_index(1));
  CHECK(gen_eichler(s, x1, z1, Scalar(q, 1)) == gen_coord(s, Direction::ToP, 1, 1, Scalar(q, 1)));
  CHECK(gen_eichler(s, f1, z1, Scalar(q, 1)) == gen_coord(s, Direction::ToPDual, 1, 1, Scalar(q, 1)));

  CHECK_THROWS_WITH_AS(gen_eichler(s, z1, zero, Scalar(q, 0)), doctest::Contains("NotIsotropic"), Error);
  CHECK_THROWS_WITH_AS(gen_eichler(s, x1, f1, Scalar(q, 0)), doctest::Contains("NotOrthogonalPair"), Error);
  CHECK_THROWS_WITH_AS(gen_eichler(s, x1, z1, Scalar(q, 2)), doctest::Contains("WrongR"), Error);

  Sampler rng(15);
  const Ring& r = Ring::parse("Q[x,y]");
  for (int t = 0; t < 60; ++t) {
    SpacePtr sp = random_space(rng, r, pick(rng, 3), pick(rng, 3));
    EichlerDraw e = random_eichler(rng, sp);
    Vector neg = e.v;
    for (auto& c : neg) c = -c;
    REQUIRE((gen_eichler(sp, e.u, e.v, e.r) * gen_eichler(sp, e.u, neg, e.r)).matrix().is_identity());
  }
}

TEST_CASE("gen_bass") {
  const Ring& q = Ring::rationals();
  SpacePtr s = space_of(q, {{2, 1}, {1, 4}}, 2);
  Vector zero = s->zero_vector();
  Vector x2 = s->basis(s->x_index(2));
  CHECK(gen_bass(s, x2, Scalar(q, 0), zero).matrix().is_identity());
  Vector w = s->zero_vector();
  w[s->z_index(2)] = S(q, "3/2");
  Scalar a0 = s->bilinear(w, w).half();
  CHECK(gen_bass(s, x2, a0, w) == gen_coord(s, Direction::ToP, 2, 2, S(q, "3/2")));

  Sampler rng(16);
  for (const char* d : {"Q[x]", "GF(10007)", "Q[s,x][1/s]"}) {
    const Ring& r = Ring::parse(d);
    for (int t = 0; t < 35; ++t) {
      SpacePtr sp = random_space(rng, r, pick(rng, 3), pick(rng, 3));
      EichlerDraw e = random_eichler(rng, sp);
      REQUIRE(gen_bass(sp, e.u, e.r, e.v) == gen_eichler(sp, e.u, e.v, e.r));
    }
  }
}

TEST_CASE("every generator family is orthogonal") {
  Sampler rng(17);
  for (const char* d : {"Q", "Q[x,y]", "GF(10007)"}) {
    const Ring& r = Ring::parse(d);
    for (int t = 0; t < 60; ++t) {
      SpacePtr s = random_space(rng, r, pick(rng, 4), pick(rng, 4));
      Generator g = random_generator(rng, s);
      REQUIRE(s->is_orthogonal(generator_matrix(s, g).matrix()));
    }
  }
}

TEST_CASE("words") {
  const Ring& r = Ring::parse("Q[x]");
  Sampler rng(18);
  SpacePtr s = random_space(rng, r, 2, 2);
  CHECK(word_to_matrix(Word(s)).matrix().is_identity());

  for (int t = 0; t < 20; ++t) {
    Word w(s);
    for (int k = 0; k < 6; ++k) w.push(random_generator(rng, s), rng.coin() ? 1 : -1);
    REQUIRE(word_to_matrix(w * word_inverse(w)).matrix().is_identity());

    // Independent fold: certified factor matrices, inverses by psi^{-1} T^t psi.
    Matrix fold = Matrix::identity(r, s->dim());
    for (const auto& f : w.factors()) {
      OrthMatrix m = generator_matrix(s, std::get<Generator>(f.item));
      fold = fold * (f.exp == 1 ? m.matrix() : m.inverse().matrix());
    }
    REQUIRE(word_to_matrix(w).matrix() == fold);

    Word h = random_coord_word(rng, s, 2);
    Matrix hm = word_to_matrix(h).matrix();
    REQUIRE(word_to_matrix(conjugate(w, h)).matrix() == hm * fold * s->orthogonal_inverse(hm));
  }

  SpacePtr other = random_space(rng, r, 1, 1);
  Word a(s), b(other);
  b.push(CoordGen{Direction::ToP, 1, 1, Scalar(r, 1)});
  CHECK_THROWS_WITH_AS(a * b, doctest::Contains("SpaceMismatch"), Error);
  CHECK_THROWS_WITH_AS(a.push(word_to_matrix(b)), doctest::Contains("SpaceMismatch"), Error);

  Word with_matrix(s);
  OrthMatrix m = word_to_matrix(random_coord_word(rng, s, 3));
  with_matrix.push(m).push(m, -1);
  CHECK(word_to_matrix(with_matrix).matrix().is_identity());
}

TEST_CASE("certification rejects non-orthogonal matrices") {
  const Ring& q = Ring::rationals();
  SpacePtr s = space_of(q, {{2}}, 1);
  Matrix bad = Matrix::identity(q, 3);
  bad(0, 1) = Scalar(q, 1);
  CHECK_THROWS_WITH_AS(OrthMatrix::certify(s, bad), doctest::Contains("CertificationFailure"), Error);
}
