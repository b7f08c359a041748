#pragma once

// Seeded random draws used by the identity suites and the tests. Draws are
// made as small rationals and then mapped into the active ring, so the same
// seed produces corresponding samples over Q and over GF(p).

#include <cstdint>
#include <random>

#include "dser/ring.hpp"

namespace dser {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }

  /// Numerator in [-bound, bound], denominator in {1, 2, 3, 4}.
  mpq_class small_rational(int bound = 5);
  mpq_class nonzero_rational(int bound = 5);

  /// Random element of `ring`: a small rational constant, or (over
  /// polynomial rings) a sparse polynomial of total degree <= max_degree in
  /// the ring's variables, excluding any listed in `avoid`.
  Scalar scalar(const Ring& ring, unsigned max_degree = 1, const std::vector<std::string>& avoid = {});
  Scalar nonzero_scalar(const Ring& ring, unsigned max_degree = 1, const std::vector<std::string>& avoid = {});

 private:
  std::mt19937_64 engine_;
};

}  // namespace dser
