#include <algorithm>
#include <sstream>

#include "dser/ring.hpp"

namespace dser {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SingularForm: return "SingularForm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotOrthogonalPair: return "NotOrthogonalPair";
    case ErrorCode::WrongR: return "WrongR";
    case ErrorCode::CertificationFailure: return "CertificationFailure";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::DirectionMismatch: return "DirectionMismatch";
    case ErrorCode::IndexClash: return "IndexClash";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::RewriteFailure: return "RewriteFailure";
    case ErrorCode::NonUnitPairing: return "NonUnitPairing";
    case ErrorCode::PartitionOfUnityFailed: return "PartitionOfUnityFailed";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Field

mpq_class Field::reduce(const mpq_class& x) const {
  if (p_ == 0) return x;
  mpz_class p(p_);
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw Error(ErrorCode::NotAUnit, "denominator vanishes modulo " + p.get_str());
  if (den != 1) {
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    num = (num * dinv) % p;
  }
  return mpq_class(num);
}

mpq_class Field::add(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return mpq_class(r);
}

mpq_class Field::sub(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return mpq_class(r);
}

mpq_class Field::mul(const mpq_class& a, const mpq_class& b) const {
  if (p_ == 0) return a * b;
  mpz_class r = (a.get_num() * b.get_num()) % p_;
  return mpq_class(r);
}

mpq_class Field::neg(const mpq_class& a) const {
  if (p_ == 0) return -a;
  if (sgn(a) == 0) return a;
  return mpq_class(mpz_class(p_) - a.get_num());
}

mpq_class Field::inv(const mpq_class& a) const {
  if (sgn(a) == 0) throw Error(ErrorCode::NotAUnit, "inverse of zero");
  if (p_ == 0) return 1 / a;
  mpz_class r;
  mpz_class p(p_);
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t());
  return mpq_class(r);
}

// ---------------------------------------------------------------- Poly

int grlex_compare(const Exponents& a, const Exponents& b) noexcept {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool term_greater(const Term& x, const Term& y) { return grlex_compare(x.exps, y.exps) > 0; }

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool divides(const Exponents& d, const Exponents& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (d[i] > a[i]) return false;
  return true;
}

}  // namespace

Poly Poly::constant(const Field& f, std::size_t nvars, const mpq_class& c) {
  Poly p(nvars);
  mpq_class r = f.reduce(c);
  if (sgn(r) != 0) p.terms_.push_back(Term{Exponents(nvars, 0), r});
  return p;
}

Poly Poly::monomial(const Field& f, Exponents exps, const mpq_class& c) {
  Poly p(exps.size());
  mpq_class r = f.reduce(c);
  if (sgn(r) != 0) p.terms_.push_back(Term{std::move(exps), r});
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  p.terms_.push_back(Term{std::move(e), mpq_class(1)});
  return p;
}

bool Poly::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.front().exps)
    if (e != 0) return false;
  return true;
}

mpq_class Poly::constant_coeff() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  for (auto e : last.exps)
    if (e != 0) return 0;
  return last.coeff;
}

std::uint32_t Poly::total_degree() const noexcept {
  if (terms_.empty()) return 0;
  std::uint32_t d = 0;
  for (auto e : terms_.front().exps) d += e;
  return d;
}

Poly Poly::from_terms(const Field& f, std::size_t nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly out(nvars);
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exps == t.exps) {
      out.terms_.back().coeff = f.add(out.terms_.back().coeff, t.coeff);
      if (sgn(out.terms_.back().coeff) == 0) out.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

Poly Poly::add(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.nvars_, b.nvars_));
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = grlex_compare(a.terms_[i].exps, b.terms_[j].exps);
    if (c > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      mpq_class s = f.add(a.terms_[i].coeff, b.terms_[j].coeff);
      if (sgn(s) != 0) out.terms_.push_back(Term{a.terms_[i].exps, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
  return out;
}

Poly Poly::neg(const Field& f, const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms_) t.coeff = f.neg(t.coeff);
  return out;
}

Poly Poly::sub(const Field& f, const Poly& a, const Poly& b) { return add(f, a, neg(f, b)); }

Poly Poly::scale(const Field& f, const Poly& a, const mpq_class& c) {
  if (sgn(c) == 0) return Poly(a.nvars_);
  Poly out = a;
  for (auto& t : out.terms_) t.coeff = f.mul(t.coeff, c);
  return out;
}

Poly Poly::mul(const Field& f, const Poly& a, const Poly& b) {
  std::size_t nv = std::max(a.nvars_, b.nvars_);
  if (a.is_zero() || b.is_zero()) return Poly(nv);
  // Multiplying by a single term preserves the order.
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& mono = a.terms_.size() == 1 ? a : b;
    const Poly& other = a.terms_.size() == 1 ? b : a;
    const Term& m = mono.terms_.front();
    Poly out(nv);
    out.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) {
      mpq_class c = f.mul(t.coeff, m.coeff);
      if (sgn(c) != 0) out.terms_.push_back(Term{add_exps(t.exps, m.exps), std::move(c)});
    }
    return out;
  }
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back(Term{add_exps(x.exps, y.exps), f.mul(x.coeff, y.coeff)});
  return from_terms(f, nv, std::move(prod));
}

Poly Poly::pow(const Field& f, const Poly& a, unsigned e) {
  Poly result = constant(f, a.nvars_, 1);
  Poly base = a;
  while (e > 0) {
    if (e & 1u) result = mul(f, result, base);
    e >>= 1u;
    if (e > 0) base = mul(f, base, base);
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Field& f, const Poly& a, const Poly& d) {
  if (d.is_zero()) throw Error(ErrorCode::NotAUnit, "division by zero polynomial");
  Poly q(a.nvars_);
  if (a.is_zero()) return q;
  const Term& lead = d.terms_.front();
  mpq_class lead_inv = f.inv(lead.coeff);
  if (d.terms_.size() == 1) {
    Poly out(a.nvars_);
    out.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      if (!divides(lead.exps, t.exps)) return std::nullopt;
      Exponents e(t.exps.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.exps[i] - lead.exps[i];
      out.terms_.push_back(Term{std::move(e), f.mul(t.coeff, lead_inv)});
    }
    return out;
  }
  Poly r = a;
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const Term& lt = r.terms_.front();
    if (!divides(lead.exps, lt.exps)) return std::nullopt;
    Exponents e(lt.exps.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lt.exps[i] - lead.exps[i];
    mpq_class c = f.mul(lt.coeff, lead_inv);
    Poly t = monomial(f, e, c);
    qterms.push_back(Term{std::move(e), c});
    r = sub(f, r, mul(f, t, d));
  }
  return from_terms(f, a.nvars_, std::move(qterms));
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

std::string Poly::to_string(const Field& f, const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coeff;
    bool negative = f.is_rational() && sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (any) mono << "*";
      mono << names[i];
      if (t.exps[i] > 1) mono << "^" << t.exps[i];
      any = true;
    }
    if (!any) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono.str();
    } else {
      os << c.get_str() << "*" << mono.str();
    }
  }
  return os.str();
}

}  // namespace dser
