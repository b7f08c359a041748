#pragma once

// Polynomial-parameter words, regrouping into conjugates, dilation with
// denominator clearing, and the telescoping factorization.
//
// Words here live over a ring containing a distinguished variable (default
// "X"); dilation works over a localization at s and produces factors whose
// parameters all have s-order at least a floor (1 unless stated), hence lie
// in the unlocalized ring.

#include <functional>
#include <utility>

#include "dser/generators.hpp"

namespace dser {

/// Applies `fn` to every scalar parameter; the result lives in `target`.
Word map_word_scalars(const Word& w, const SpacePtr& target, const std::function<Scalar(const Scalar&)>& fn);

/// The same form over another ring (entries moved with `convert`).
SpacePtr change_ring(const SpacePtr& s, const Ring& target);
Word change_ring(const Word& w, const SpacePtr& target);

Matrix substitute_matrix(const Matrix& m, const std::string& var, const Scalar& value);

/// var -> value in every parameter.
Word specialize_word(const Word& w, const std::string& var, const Scalar& value);

/// theta(0)^{-1} theta(X).
Word normalize_theta(const Word& w, const std::string& var = "X");

struct Regrouped {
  std::vector<Word> conjugates;  // r_i b_i r_i^{-1}
  Word tail;                     // a_1 ... a_n
};
/// prod a_i b_i = prod r_i b_i r_i^{-1} * prod a_i, r_i = a_1 ... a_i.
Regrouped regroup(const std::vector<Word>& a, const std::vector<Word>& b);

struct ConjugatePiece {
  Word gamma;   // constant-term generators (adjacent equal coordinates merged)
  CoordGen arg; // X * alpha'(X)
};
/// Writes a word of coordinate generators with theta(0) = Id as
/// prod gamma_k E(X alpha'_k(X)) gamma_k^{-1}.
std::vector<ConjugatePiece> conjugate_factor(const Word& w, const std::string& var = "X");
Word reassemble(const SpacePtr& s, const std::vector<ConjugatePiece>& pieces);

/// Least k with x in s^k A (negative for denominators); kInfiniteOrder for zero.
int s_order_of(const Scalar& x);
/// Minimum s-order over the parameters of a coordinate word.
int min_s_order(const Word& w);

enum class DilationCase { Trivial, SameKindDistinct, SameKindSameIndex, MixedDistinct, MixedSameIndex };
std::string dilation_case_name(DilationCase c);

DilationCase classify(const CoordGen& g, const CoordGen& t);
/// Denominator exponent of the conjugator: max(0, -s_order(y)).
int conjugator_r(const CoordGen& g);
/// Smallest admissible budget: r + 2f except 3r + 4f + 2 for mixed kinds
/// with a shared hyperbolic index.
int dilation_d_min(DilationCase c, int r, int floor = 1);
/// The most any case needs; used for nested budgets.
int worst_d_min(int r, int floor);
/// Factor-count bound per case.
std::size_t dilation_bound(DilationCase c);

/// Rewrites g t g^{-1} as coordinate factors with s-order >= floor. The
/// target's s-order must be at least d >= d_min. Not verified here.
std::vector<CoordGen> dilate_conjugation(const AmbientSpace& s, const CoordGen& g, const CoordGen& t, int d, int floor = 1);

struct DilationInput {
  Scalar a;
  int r = 0;
  Direction kind_x = Direction::ToP;
  std::size_t i = 1, j = 1;
  Direction kind_y = Direction::ToP;
  std::size_t k = 1, l = 1;
  Scalar x;
  int d = 0;
};

struct DilationWitness {
  DilationInput input;
  DilationCase dcase = DilationCase::Trivial;
  int d = 0;
  Word word;
  int min_s_order = 0;
  bool verified = false;
};

/// E(a/s^r X_ij) E(s^d x Y_kl) E(a/s^r X_ij)^{-1} as a verified witness.
/// Throws BudgetTooSmall, RankTooSmall, NonUnitPairing, RewriteFailure.
DilationWitness dilate_generator(const SpacePtr& s, const DilationInput& in);

/// Budget needed to conjugate an s-order-d target by `xi` with outputs of
/// s-order >= floor.
int required_budget(const std::vector<CoordGen>& xi, int floor = 1);
std::vector<CoordGen> as_coord_factors(const Word& w);

struct RewriteResult {
  int d_required = 0;
  Word out;
};
/// xi E(s^d x Z_ij) xi^{-1} as coordinate factors of s-order >= 1.
RewriteResult conjugate_rewrite(const Word& xi, Direction kind, std::size_t i, std::size_t j, const Scalar& x, int d);
/// Same, for an arbitrary target generator (its s-order must cover the budget).
RewriteResult conjugate_rewrite(const Word& xi, const CoordGen& target, int floor = 1);

struct ThetaDilation {
  int d = 0;
  Word out;       // over the localization, every parameter of s-order >= 1
  Word out_base;  // the same word over the unlocalized ring
  bool verified = false;
};
/// For theta_s over A_s[X] with theta_s(0) = Id, finds d and a word over
/// A[X] equal to theta_s(s^d X).
ThetaDilation dilate_theta(const Word& theta, const std::string& var = "X");

struct Share {
  Scalar d, b;
};
/// kappa_i = theta(S_i X) theta(S_{i+1} X)^{-1}, S_i = sum_{k>=i} d_k b_k.
/// Their ordered product is theta(X).
std::vector<OrthMatrix> telescope(const OrthMatrix& theta, const std::vector<Share>& shares, const std::string& var = "X");

}  // namespace dser
