#include <algorithm>

#include "dser/sampling.hpp"

namespace dser {

int Sampler::uniform(int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

mpq_class Sampler::small_rational(int bound) {
  mpq_class q(uniform(-bound, bound), uniform(1, 4));
  q.canonicalize();
  return q;
}

mpq_class Sampler::nonzero_rational(int bound) {
  int n = uniform(1, bound);
  if (coin()) n = -n;
  mpq_class q(n, uniform(1, 4));
  q.canonicalize();
  return q;
}

Scalar Sampler::scalar(const Ring& ring, unsigned max_degree, const std::vector<std::string>& avoid) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (std::find(avoid.begin(), avoid.end(), ring.variables()[i]) == avoid.end()) vars.push_back(i);
  }
  if (vars.empty() || max_degree == 0 || uniform(0, 2) == 0) return Scalar::from_rational(ring, small_rational());
  int nterms = uniform(1, 3);
  std::vector<Term> terms;
  for (int t = 0; t < nterms; ++t) {
    Exponents e(ring.nvars(), 0);
    int deg = uniform(0, static_cast<int>(max_degree));
    for (int d = 0; d < deg; ++d) e[vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]] += 1;
    terms.push_back(Term{std::move(e), ring.field().reduce(small_rational())});
  }
  return Scalar(ring, Poly::from_terms(ring.field(), ring.nvars(), std::move(terms)));
}

Scalar Sampler::nonzero_scalar(const Ring& ring, unsigned max_degree, const std::vector<std::string>& avoid) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Scalar x = scalar(ring, max_degree, avoid);
    if (!x.is_zero()) return x;
  }
  return Scalar::from_rational(ring, nonzero_rational());
}

}  // namespace dser
