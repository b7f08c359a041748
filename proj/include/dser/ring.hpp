#pragma once

// Exact scalar arithmetic: rationals, odd prime fields, multivariate
// polynomial rings over either, and localizations of those polynomial rings
// at the powers of one distinguished element s.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <climits>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dser/error.hpp"

namespace dser {

/// The coefficient field: Q when the characteristic is 0, otherwise Z/p.
/// Elements of Z/p are kept as integers in [0, p) inside an mpq_class.
class Field {
 public:
  explicit Field(unsigned long p = 0) : p_(p) {}

  unsigned long characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  /// Maps a rational number into the field. Throws NotAUnit when the
  /// denominator vanishes mod p.
  mpq_class reduce(const mpq_class& x) const;

  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;

  static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
  bool operator==(const Field&) const = default;

 private:
  unsigned long p_;
};

using Exponents = boost::container::small_vector<std::uint32_t, 6>;

struct Term {
  Exponents exps;
  mpq_class coeff;
};

/// Graded-lex comparison of exponent vectors (total degree, then the first
/// variable dominates). Returns <0, 0, >0.
int grlex_compare(const Exponents& a, const Exponents& b) noexcept;

/// Sparse polynomial with terms in strictly decreasing grlex order and no
/// zero coefficients. The representation is canonical, so == is equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(const Field& f, std::size_t nvars, const mpq_class& c);
  static Poly monomial(const Field& f, Exponents exps, const mpq_class& c);
  static Poly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Coefficient of the constant monomial (zero if absent).
  mpq_class constant_coeff() const;
  std::uint32_t total_degree() const noexcept;

  static Poly add(const Field& f, const Poly& a, const Poly& b);
  static Poly sub(const Field& f, const Poly& a, const Poly& b);
  static Poly neg(const Field& f, const Poly& a);
  static Poly mul(const Field& f, const Poly& a, const Poly& b);
  static Poly scale(const Field& f, const Poly& a, const mpq_class& c);
  static Poly pow(const Field& f, const Poly& a, unsigned e);

  /// Exact quotient a / d, or nullopt when d does not divide a. A single
  /// divisor is its own Groebner basis, so the grlex division algorithm
  /// decides membership in (d).
  static std::optional<Poly> divide_exact(const Field& f, const Poly& a, const Poly& d);

  bool operator==(const Poly& o) const;

  std::string to_string(const Field& f, const std::vector<std::string>& names) const;

  /// Builds a polynomial from arbitrary terms (unsorted, duplicates allowed).
  static Poly from_terms(const Field& f, std::size_t nvars, std::vector<Term> terms);

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// A coefficient ring. Rings are interned: every distinct descriptor maps to
/// one immutable object that lives for the whole process, so rings compare
/// by address.
class Ring {
 public:
  enum class Kind { Rationals, PrimeField, Polynomial, Localization };

  static const Ring& rationals();
  static const Ring& prime_field(unsigned long p);
  static const Ring& polynomial(const Ring& field, const std::vector<std::string>& vars);
  /// Localization of a polynomial ring at the powers of `s`, which must be a
  /// non-constant polynomial of that ring.
  static const Ring& localization(const Ring& poly_ring, std::string_view s);
  /// Parses "Q", "GF(p)", "Q[x,y]", "GF(p)[s,X][1/s]" and friends.
  static const Ring& parse(std::string_view descriptor);

  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  Kind kind() const noexcept { return kind_; }
  const Field& field() const noexcept { return field_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  std::optional<std::size_t> variable_index(std::string_view name) const;
  bool is_localization() const noexcept { return kind_ == Kind::Localization; }
  /// Localization: the polynomial ring. Polynomial: the coefficient field.
  /// Fields: nullptr.
  const Ring* base() const noexcept { return base_; }
  /// The distinguished element (localizations only).
  const Poly& s() const;
  const std::string& descriptor() const noexcept { return descriptor_; }

  bool operator==(const Ring& o) const noexcept { return this == &o; }

 private:
  Ring() = default;
  static const Ring& intern(Ring&& proto);

  Kind kind_ = Kind::Rationals;
  Field field_;
  std::vector<std::string> vars_;
  const Ring* base_ = nullptr;
  Poly s_;
  bool s_is_variable_ = false;
  std::string descriptor_;

  friend class Scalar;
};

/// Marker for the s-order of zero.
inline constexpr int kInfiniteOrder = INT_MAX;

/// An exact ring element: numerator / s^k with k >= 0 (k is always 0 outside
/// localizations). Canonical: when k > 0, s does not divide the numerator.
class Scalar {
 public:
  /// Zero of the rationals.
  Scalar();
  Scalar(const Ring& ring, long value);
  Scalar(const Ring& ring, Poly numerator, int s_exponent = 0);

  static Scalar from_rational(const Ring& ring, const mpq_class& q);
  static Scalar variable(const Ring& ring, std::string_view name);
  /// s itself (localizations only).
  static Scalar s_element(const Ring& ring);
  /// s^e for any integer e (localizations only).
  static Scalar s_power(const Ring& ring, int e);
  static Scalar parse(const Ring& ring, std::string_view text);

  const Ring& ring() const noexcept { return *ring_; }
  const Poly& numerator() const noexcept { return num_; }
  int s_exponent() const noexcept { return k_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const;
  bool is_unit() const;
  /// Throws NotAUnit for non-units.
  Scalar inverse() const;
  Scalar pow(unsigned e) const;
  Scalar half() const;

  /// Largest k with this in s^k * A (negative when a denominator remains);
  /// kInfiniteOrder for zero. Localizations only.
  int s_order() const;

  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void canonicalize();

  const Ring* ring_;
  Poly num_;
  int k_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Result of s_normalize: the canonical fraction and its s-order.
struct SNormalized {
  Scalar value;
  int s_order;
};
SNormalized s_normalize(const Scalar& x);

/// Ring homomorphism determined by images of the variables. Every variable
/// occurring in `p` must be bound (UnboundVariable otherwise); all images
/// must share one target ring whose coefficient field matches. In a
/// localization, the image of s must be a unit of the target.
Scalar substitute(const Scalar& p, const std::map<std::string, Scalar>& assignment);

/// Assignment sending every variable of `ring` to itself.
std::map<std::string, Scalar> identity_assignment(const Ring& ring);

/// Moves a value between a polynomial ring and its localization (either
/// direction; the way down requires a trivial denominator).
Scalar convert(const Scalar& x, const Ring& target);

}  // namespace dser
