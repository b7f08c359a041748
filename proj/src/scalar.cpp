#include <cctype>
#include <ostream>

#include "dser/ring.hpp"

namespace dser {

namespace {

void require_same(const Scalar& a, const Scalar& b) {
  if (!(a.ring() == b.ring()))
    throw Error(ErrorCode::DescriptorMismatch, a.ring().descriptor() + " vs " + b.ring().descriptor());
}

// Number of times s divides p (p nonzero), and the cofactor.
std::pair<int, Poly> strip_s(const Field& f, const Poly& p, const Poly& s) {
  int e = 0;
  Poly cur = p;
  while (true) {
    auto q = Poly::divide_exact(f, cur, s);
    if (!q) break;
    cur = std::move(*q);
    ++e;
  }
  return {e, std::move(cur)};
}

}  // namespace

Scalar::Scalar() : ring_(&Ring::rationals()) {}

Scalar::Scalar(const Ring& ring, long value)
    : ring_(&ring), num_(Poly::constant(ring.field(), ring.nvars(), mpq_class(value))) {}

Scalar::Scalar(const Ring& ring, Poly numerator, int s_exponent)
    : ring_(&ring), num_(std::move(numerator)), k_(s_exponent) {
  if (num_.nvars() != ring.nvars() && !num_.is_zero())
    throw Error(ErrorCode::DescriptorMismatch, "numerator has the wrong number of variables for " + ring.descriptor());
  if (num_.is_zero()) num_ = Poly(ring.nvars());
  if (k_ < 0) {
    if (!ring.is_localization()) throw Error(ErrorCode::NotAUnit, "negative s-exponent outside a localization");
    num_ = Poly::mul(ring.field(), num_, Poly::pow(ring.field(), ring.s(), static_cast<unsigned>(-k_)));
    k_ = 0;
  }
  if (k_ > 0 && !ring.is_localization()) throw Error(ErrorCode::NotAUnit, "s-denominator outside a localization");
  canonicalize();
}

Scalar Scalar::from_rational(const Ring& ring, const mpq_class& q) {
  return Scalar(ring, Poly::constant(ring.field(), ring.nvars(), q));
}

Scalar Scalar::variable(const Ring& ring, std::string_view name) {
  auto idx = ring.variable_index(name);
  if (!idx) throw Error(ErrorCode::UnboundVariable, "no variable '" + std::string(name) + "' in " + ring.descriptor());
  return Scalar(ring, Poly::variable(ring.nvars(), *idx));
}

Scalar Scalar::s_element(const Ring& ring) { return Scalar(ring, ring.s()); }

Scalar Scalar::s_power(const Ring& ring, int e) {
  if (e >= 0) return Scalar(ring, Poly::pow(ring.field(), ring.s(), static_cast<unsigned>(e)));
  return Scalar(ring, Poly::constant(ring.field(), ring.nvars(), 1), -e);
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    k_ = 0;
    return;
  }
  const Field& f = ring_->field();
  while (k_ > 0) {
    auto q = Poly::divide_exact(f, num_, ring_->s());
    if (!q) break;
    num_ = std::move(*q);
    --k_;
  }
}

bool Scalar::is_one() const { return k_ == 0 && num_.is_constant() && num_.constant_coeff() == 1; }

bool Scalar::is_unit() const {
  if (num_.is_zero()) return false;
  if (num_.is_constant()) return true;
  if (!ring_->is_localization()) return false;
  auto [e, rest] = strip_s(ring_->field(), num_, ring_->s());
  return e > 0 && rest.is_constant();
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::NotAUnit, to_string() + " is not a unit of " + ring_->descriptor());
  const Field& f = ring_->field();
  int e = 0;
  Poly unit = num_;
  if (!num_.is_constant()) {
    auto stripped = strip_s(f, num_, ring_->s());
    e = stripped.first;
    unit = std::move(stripped.second);
  }
  mpq_class c = f.inv(unit.constant_coeff());
  // (c^-1 * s^e / s^k)^-1 = c * s^(k-e)
  return Scalar(*ring_, Poly::constant(f, ring_->nvars(), c), e - k_);
}

Scalar Scalar::pow(unsigned e) const {
  return Scalar(*ring_, Poly::pow(ring_->field(), num_, e), static_cast<int>(k_ * e));
}

Scalar Scalar::half() const {
  const Field& f = ring_->field();
  return Scalar(*ring_, Poly::scale(f, num_, f.inv(mpq_class(2))), k_);
}

int Scalar::s_order() const {
  if (!ring_->is_localization()) throw Error(ErrorCode::InvalidDescriptor, "s-order needs a localization");
  if (num_.is_zero()) return kInfiniteOrder;
  if (k_ > 0) return -k_;
  return strip_s(ring_->field(), num_, ring_->s()).first;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  const Ring& r = a.ring();
  const Field& f = r.field();
  if (a.k_ == b.k_) return Scalar(r, Poly::add(f, a.num_, b.num_), a.k_);
  const Scalar& lo = a.k_ < b.k_ ? a : b;
  const Scalar& hi = a.k_ < b.k_ ? b : a;
  Poly lifted = Poly::mul(f, lo.num_, Poly::pow(f, r.s(), static_cast<unsigned>(hi.k_ - lo.k_)));
  return Scalar(r, Poly::add(f, lifted, hi.num_), hi.k_);
}

Scalar operator-(const Scalar& a) {
  return Scalar(a.ring(), Poly::neg(a.ring().field(), a.num_), a.k_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return Scalar(a.ring(), Poly::mul(a.ring().field(), a.num_, b.num_), a.k_ + b.k_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return a.k_ == b.k_ && a.num_ == b.num_;
}

std::string Scalar::to_string() const {
  std::string n = num_.to_string(ring_->field(), ring_->variables());
  if (k_ == 0) return n;
  std::string s = ring_->s().to_string(ring_->field(), ring_->variables());
  if (!ring_->s_is_variable_) s = "(" + s + ")";
  std::string out = "(" + n + ")/" + s;
  if (k_ > 1) out += "^" + std::to_string(k_);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

SNormalized s_normalize(const Scalar& x) { return SNormalized{x, x.s_order()}; }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        Scalar d = unary();
        v = v * d.inverse();
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Scalar atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class n(std::string(text_.substr(start, pos_ - start)));
      return Scalar::from_rational(ring_, mpq_class(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (!ring_.variable_index(name)) fail("unknown variable '" + std::string(name) + "'");
      return Scalar::variable(ring_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(const Ring& ring, std::string_view text) { return Parser(ring, text).parse(); }

// ---------------------------------------------------------------- maps

Scalar substitute(const Scalar& p, const std::map<std::string, Scalar>& assignment) {
  const Ring& src = p.ring();
  const Ring* target = assignment.empty() ? &src : &assignment.begin()->second.ring();
  for (const auto& [name, v] : assignment) {
    if (!(v.ring() == *target))
      throw Error(ErrorCode::DescriptorMismatch, "assignment values live in different rings");
  }
  if (!(target->field() == src.field()))
    throw Error(ErrorCode::DescriptorMismatch, "coefficient fields differ: " + src.descriptor() + " -> " + target->descriptor());

  std::vector<const Scalar*> images(src.nvars(), nullptr);
  for (std::size_t i = 0; i < src.nvars(); ++i) {
    auto it = assignment.find(src.variables()[i]);
    if (it != assignment.end()) images[i] = &it->second;
  }
  auto eval = [&](const Poly& poly) {
    Scalar acc(*target, 0);
    for (const auto& t : poly.terms()) {
      Scalar mono = Scalar::from_rational(*target, t.coeff);
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (t.exps[i] == 0) continue;
        if (!images[i]) throw Error(ErrorCode::UnboundVariable, "variable '" + src.variables()[i] + "' is not bound");
        mono = mono * images[i]->pow(t.exps[i]);
      }
      acc = acc + mono;
    }
    return acc;
  };
  Scalar value = eval(p.numerator());
  if (p.s_exponent() > 0) {
    Scalar s_image = eval(src.s());
    value = value * s_image.inverse().pow(static_cast<unsigned>(p.s_exponent()));
  }
  return value;
}

std::map<std::string, Scalar> identity_assignment(const Ring& ring) {
  std::map<std::string, Scalar> out;
  for (const auto& v : ring.variables()) out.emplace(v, Scalar::variable(ring, v));
  return out;
}

Scalar convert(const Scalar& x, const Ring& target) {
  const Ring& src = x.ring();
  if (src == target) return x;
  if (target.is_localization() && target.base() == &src) return Scalar(target, x.numerator(), 0);
  if (src.is_localization() && src.base() == &target) {
    if (x.s_exponent() != 0)
      throw Error(ErrorCode::NotAUnit, x.to_string() + " has a denominator; cannot leave " + src.descriptor());
    return Scalar(target, x.numerator(), 0);
  }
  if (src.nvars() == 0 && src.field() == target.field())
    return Scalar::from_rational(target, x.numerator().constant_coeff());
  throw Error(ErrorCode::DescriptorMismatch, "no conversion from " + src.descriptor() + " to " + target.descriptor());
}

}  // namespace dser
