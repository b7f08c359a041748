#pragma once

// Seeded draws of spaces, homs, words and admissible Eichler data, shared by
// the identity suites and the tests.

#include "dser/generators.hpp"
#include "dser/sampling.hpp"

namespace dser {

/// Symmetric Gram matrix with rational constant entries and unit
/// determinant: a nonzero diagonal plus, sometimes, one off-diagonal pair.
Matrix random_gram(Sampler& rng, const Ring& r, std::size_t n);
SpacePtr random_space(Sampler& rng, const Ring& r, std::size_t n, std::size_t m);
Matrix random_matrix(Sampler& rng, const Ring& r, std::size_t rows, std::size_t cols, unsigned deg = 1);
Vector random_vector(Sampler& rng, const Ring& r, std::size_t len, unsigned deg = 1);
HomMatrix random_hom(Sampler& rng, const AmbientSpace& s, Direction dir, unsigned deg = 1);
Direction random_dir(Sampler& rng);
/// Uniform in 1..hi.
std::size_t pick(Sampler& rng, std::size_t hi);
Word random_coord_word(Sampler& rng, const SpacePtr& s, int length, unsigned deg = 1);
/// Coordinate word over a localization with theta(0) = Id: parameters are
/// multiples of `var` with at most one 1/s, and for length >= 3 sometimes a
/// constant on the first factor cancelled by the last.
Word random_theta(Sampler& rng, const SpacePtr& s, int length, const std::string& var = "X");

struct EichlerDraw {
  Vector u, v;
  Scalar r;
};
/// u isotropic with B(u, v) = B(u, w) = 0.
struct IsotropicFamily {
  Vector u, v, w;
};
IsotropicFamily random_isotropic_family(Sampler& rng, const SpacePtr& s, unsigned deg = 1);

/// Admissible (u, v, q(v)): u isotropic and B(u, v) = 0.
EichlerDraw random_eichler(Sampler& rng, const SpacePtr& s, unsigned deg = 1);
/// Any generator family, parameters admissible.
Generator random_generator(Sampler& rng, const SpacePtr& s, unsigned deg = 1);
/// family: 0 full alpha, 1 full beta*, 2 coordinate, 3 Eichler, 4 Bass.
Generator random_generator_of(Sampler& rng, const SpacePtr& s, int family, unsigned deg = 1);

}  // namespace dser
