#include "dser/draws.hpp"

namespace dser {

Matrix random_gram(Sampler& rng, const Ring& r, std::size_t n) {
  for (;;) {
    Matrix g(r, n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar::from_rational(r, rng.nonzero_rational(3));
    if (n > 1 && rng.coin()) {
      std::size_t a = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
      std::size_t b = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
      if (a != b) {
        Scalar c = Scalar::from_rational(r, rng.small_rational(2));
        g(a, b) = c;
        g(b, a) = c;
      }
    }
    if (determinant(g).is_unit()) return g;
  }
}

SpacePtr random_space(Sampler& rng, const Ring& r, std::size_t n, std::size_t m) {
  return ambient(QuadraticSpace::make(random_gram(rng, r, n)), m);
}

Matrix random_matrix(Sampler& rng, const Ring& r, std::size_t rows, std::size_t cols, unsigned deg) {
  Matrix out(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rng.scalar(r, deg);
  return out;
}

HomMatrix random_hom(Sampler& rng, const AmbientSpace& s, Direction dir, unsigned deg) {
  return HomMatrix{dir, random_matrix(rng, s.ring(), s.m(), s.n(), deg)};
}

Direction random_dir(Sampler& rng) { return rng.coin() ? Direction::ToP : Direction::ToPDual; }

std::size_t pick(Sampler& rng, std::size_t hi) { return static_cast<std::size_t>(rng.uniform(1, static_cast<int>(hi))); }

Word random_coord_word(Sampler& rng, const SpacePtr& s, int length, unsigned deg) {
  Word w(s);
  for (int k = 0; k < length; ++k)
    w.push(CoordGen{random_dir(rng), pick(rng, s->m()), pick(rng, s->n()), rng.scalar(s->ring(), deg)}, rng.coin() ? 1 : -1);
  return w;
}

Word random_theta(Sampler& rng, const SpacePtr& s, int length, const std::string& var) {
  const Ring& r = s->ring();
  Scalar x = Scalar::variable(r, var);
  auto denom = [&] { return Scalar::s_power(r, -rng.uniform(0, 1)); };
  std::vector<CoordGen> gens;
  for (int k = 0; k < length; ++k)
    gens.push_back(CoordGen{random_dir(rng), pick(rng, s->m()), pick(rng, s->n()), rng.nonzero_scalar(r, 1, {var}) * x * denom()});
  if (length >= 3 && rng.coin()) {
    CoordGen& last = gens.back();
    last.kind = gens.front().kind;
    last.i = gens.front().i;
    last.j = gens.front().j;
    Scalar c = rng.nonzero_scalar(r, 0) * denom();
    gens.front().y += c;
    last.y -= c;
  }
  Word w(s);
  for (const auto& g : gens) w.push(g);
  return w;
}

Vector random_vector(Sampler& rng, const Ring& r, std::size_t len, unsigned deg) {
  Vector v;
  v.reserve(len);
  for (std::size_t k = 0; k < len; ++k) v.push_back(rng.scalar(r, deg));
  return v;
}

IsotropicFamily random_isotropic_family(Sampler& rng, const SpacePtr& s, unsigned deg) {
  // u in the span of the x's (or the f's), v and w in Q plus the same span;
  // then all three moved by one short random isometry.
  bool use_x = rng.coin();
  Vector u = s->zero_vector(), v = s->zero_vector(), w = s->zero_vector();
  for (std::size_t j = 1; j <= s->n(); ++j) {
    v[s->z_index(j)] = rng.scalar(s->ring(), deg);
    w[s->z_index(j)] = rng.scalar(s->ring(), deg);
  }
  for (std::size_t i = 1; i <= s->m(); ++i) {
    std::size_t at = use_x ? s->x_index(i) : s->f_index(i);
    u[at] = rng.scalar(s->ring(), deg);
    v[at] = rng.scalar(s->ring(), deg);
    w[at] = rng.scalar(s->ring(), deg);
  }
  if (rng.coin()) {
    Matrix g = word_to_matrix(random_coord_word(rng, s, rng.uniform(1, 2), deg)).matrix();
    u = g * u;
    v = g * v;
    w = g * w;
  }
  return IsotropicFamily{std::move(u), std::move(v), std::move(w)};
}

EichlerDraw random_eichler(Sampler& rng, const SpacePtr& s, unsigned deg) {
  IsotropicFamily f = random_isotropic_family(rng, s, deg);
  Scalar r = s->q_value(f.v);
  return EichlerDraw{std::move(f.u), std::move(f.v), std::move(r)};
}

Generator random_generator(Sampler& rng, const SpacePtr& s, unsigned deg) {
  return random_generator_of(rng, s, rng.uniform(0, 4), deg);
}

Generator random_generator_of(Sampler& rng, const SpacePtr& s, int family, unsigned deg) {
  switch (family) {
    case 0:
      return FullGen{random_hom(rng, *s, Direction::ToP, deg)};
    case 1:
      return FullGen{random_hom(rng, *s, Direction::ToPDual, deg)};
    case 2:
      return CoordGen{random_dir(rng), pick(rng, s->m()), pick(rng, s->n()), rng.scalar(s->ring(), deg)};
    case 3: {
      EichlerDraw e = random_eichler(rng, s, deg);
      return EichlerGen{e.u, e.v, e.r};
    }
    default: {
      EichlerDraw e = random_eichler(rng, s, deg);
      return BassGen{e.u, e.r, e.v};
    }
  }
}

}  // namespace dser
