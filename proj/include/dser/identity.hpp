#pragma once

// Exact checks of the splitting, generation, commutator, nested-commutator,
// bridge and Eichler identities. Each check returns an IdentityReport whose
// verdict is plain entrywise equality of the two sides.

#include <cstdint>
#include <optional>
#include <string>

#include "dser/generators.hpp"

namespace dser {

struct Witness {
  std::size_t row = 0, col = 0;
  std::string lhs, rhs;
};

struct IdentityReport {
  std::string id;
  std::size_t case_index = 0;
  std::string space;
  std::uint64_t seed = 0;
  std::string lhs_digest, rhs_digest;
  bool equal = true;
  std::optional<Witness> witness;
  /// Measurements are recorded but never fail a suite.
  bool measurement = false;
  std::string note;
};

/// 64-bit FNV-1a of the matrix text, as 16 hex digits.
std::string digest(const Matrix& m);

IdentityReport compare_matrices(std::string id, const AmbientSpace& s, const Matrix& lhs, const Matrix& rhs);

/// [g, h] = g h g^{-1} h^{-1}.
Word commutator(const Word& g, const Word& h);

/// E(a1 + a2) = E(a1/2) E(a2) E(a1/2) = E(a2/2) E(a1) E(a2/2).
IdentityReport check_splitting(const SpacePtr& s, const HomMatrix& a1, const HomMatrix& a2);

/// The palindrome E(a11/2) E(a21/2) ... E(a_mn) ... E(a11/2) of 2mn - 1
/// coordinate factors (j outer, i inner), with y_ij = (alpha*)_{ji}.
Word factor_generators(const SpacePtr& s, const HomMatrix& h);

// Commutators of two coordinate generators with distinct hyperbolic indices.
enum class Family { AA, ABstar, BstarBstar };

std::string family_name(Family f);
Direction first_kind(Family f);
Direction second_kind(Family f);

struct PairParams {
  std::size_t i = 1, j = 1, k = 2, l = 1;
  Scalar y1, y2;
};

/// I + H2 D1 - H1 D2 with H, D the ambient hom and dual of each piece. This
/// is the common shape of all three displayed closed forms.
Matrix commutator_closed_form(const AmbientSpace& s, Family f, const PairParams& p);
Word pair_commutator(const SpacePtr& s, Family f, const PairParams& p);

IdentityReport check_commutator_family(const SpacePtr& s, Family f, const PairParams& p);
/// [E(a y1), E(b y2)] = [E(c y1), E(d y2)] when ab = cd.
IdentityReport check_scaling_corollary(const SpacePtr& s, Family f, const Scalar& a, const Scalar& b, const Scalar& c,
                                       const Scalar& d, const PairParams& p);

/// Same kind, same hyperbolic index: the bracket is trivial.
IdentityReport check_same_index_trivial(const SpacePtr& s, Direction kind, const PairParams& p);
/// Mixed kinds with i = k: records whether the bracket is trivial.
IdentityReport measure_mixed_same_index(const SpacePtr& s, const PairParams& p);

// Nested brackets [E_ij, [E_kl, E_pq]].
enum class NestedVariant { I, II, III, IV };

std::string variant_name(NestedVariant v);

struct NestedParams {
  std::size_t i = 1, j = 1, k = 2, l = 1, p = 1, q = 1;
  Scalar y1, y2, y3;
};

struct NestedShape {
  Direction outer, inner_first, inner_second, result;
};
NestedShape nested_shape(NestedVariant v);

/// The composite hom (lambda, mu, nu or xi) at (k, j), and its scale.
HomMatrix nested_composite(const AmbientSpace& s, NestedVariant v, const NestedParams& p);
Word nested_bracket(const SpacePtr& s, NestedVariant v, const NestedParams& p);

IdentityReport check_nested_family(const SpacePtr& s, NestedVariant v, const NestedParams& p);
/// Nested brackets with scales (a, b, c) and (d, e, f) agree when
/// abc = def and a^2 bc = d^2 ef.
IdentityReport check_nested_scaling(const SpacePtr& s, NestedVariant v, const Scalar& a, const Scalar& b, const Scalar& c,
                                    const Scalar& d, const Scalar& e, const Scalar& f, const NestedParams& p);

/// gen_coord = gen_eichler = gen_bass on matching parameters.
IdentityReport check_bridges(const SpacePtr& s, Direction kind, std::size_t i, std::size_t j, const Scalar& y);

// Eichler properties on an isotropic u with B(u, v) = B(u, w) = 0.
IdentityReport check_eichler_membership(const SpacePtr& s, const Vector& u, const Vector& v);
/// Sigma_{u,v} Sigma_{u,w} = Sigma_{u, v+w, q(v) + q(w) + B(v,w)}.
IdentityReport check_eichler_product(const SpacePtr& s, const Vector& u, const Vector& v, const Vector& w);
IdentityReport check_eichler_inverse(const SpacePtr& s, const Vector& u, const Vector& v);
/// sigma Sigma_{u,v} sigma^{-1} = Sigma_{sigma u, sigma v}.
IdentityReport check_eichler_conjugation(const SpacePtr& s, const Vector& u, const Vector& v, const Word& sigma);

}  // namespace dser
