#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <set>

#include "dser/ring.hpp"

namespace dser {

namespace {

bool is_odd_prime(unsigned long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const Ring& Ring::intern(Ring&& proto) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Ring>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(proto.descriptor_);
  if (it != table.end()) return *it->second;
  std::unique_ptr<Ring> r(new Ring());
  r->kind_ = proto.kind_;
  r->field_ = proto.field_;
  r->vars_ = std::move(proto.vars_);
  r->base_ = proto.base_;
  r->s_ = std::move(proto.s_);
  r->s_is_variable_ = proto.s_is_variable_;
  r->descriptor_ = proto.descriptor_;
  const Ring& ref = *r;
  table.emplace(ref.descriptor_, std::move(r));
  return ref;
}

const Ring& Ring::rationals() {
  static const Ring& q = []() -> const Ring& {
    Ring proto;
    proto.kind_ = Kind::Rationals;
    proto.descriptor_ = "Q";
    return intern(std::move(proto));
  }();
  return q;
}

const Ring& Ring::prime_field(unsigned long p) {
  if (!is_odd_prime(p))
    throw Error(ErrorCode::InvalidDescriptor, "characteristic must be an odd prime, got " + std::to_string(p));
  Ring proto;
  proto.kind_ = Kind::PrimeField;
  proto.field_ = Field(p);
  proto.descriptor_ = "GF(" + std::to_string(p) + ")";
  return intern(std::move(proto));
}

const Ring& Ring::polynomial(const Ring& field, const std::vector<std::string>& vars) {
  if (field.kind_ != Kind::Rationals && field.kind_ != Kind::PrimeField)
    throw Error(ErrorCode::InvalidDescriptor, "polynomial coefficients must be Q or GF(p)");
  if (vars.empty()) throw Error(ErrorCode::InvalidDescriptor, "polynomial ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!is_identifier(v)) throw Error(ErrorCode::InvalidDescriptor, "bad variable name '" + v + "'");
    if (!seen.insert(v).second) throw Error(ErrorCode::InvalidDescriptor, "duplicate variable '" + v + "'");
  }
  Ring proto;
  proto.kind_ = Kind::Polynomial;
  proto.field_ = field.field_;
  proto.vars_ = vars;
  proto.base_ = &field;
  proto.descriptor_ = field.descriptor_ + "[";
  for (std::size_t i = 0; i < vars.size(); ++i) proto.descriptor_ += (i ? "," : "") + vars[i];
  proto.descriptor_ += "]";
  return intern(std::move(proto));
}

const Ring& Ring::localization(const Ring& poly_ring, std::string_view s) {
  if (poly_ring.kind_ != Kind::Polynomial)
    throw Error(ErrorCode::InvalidDescriptor, "only polynomial rings can be localized");
  Scalar sv = Scalar::parse(poly_ring, s);
  if (sv.numerator().is_constant())
    throw Error(ErrorCode::InvalidDescriptor, "s must be a non-constant polynomial");
  Ring proto;
  proto.kind_ = Kind::Localization;
  proto.field_ = poly_ring.field_;
  proto.vars_ = poly_ring.vars_;
  proto.base_ = &poly_ring;
  proto.s_ = sv.numerator();
  const auto& terms = proto.s_.terms();
  if (terms.size() == 1 && terms.front().coeff == 1 && proto.s_.total_degree() == 1) proto.s_is_variable_ = true;
  proto.descriptor_ = poly_ring.descriptor_ + "[1/" + sv.to_string() + "]";
  return intern(std::move(proto));
}

const Ring& Ring::parse(std::string_view text) {
  std::string d = trim(text);
  std::size_t pos = 0;
  const Ring* ring = nullptr;
  if (d.rfind("GF(", 0) == 0) {
    std::size_t close = d.find(')');
    if (close == std::string::npos) throw Error(ErrorCode::InvalidDescriptor, "unterminated GF(");
    std::string num = trim(std::string_view(d).substr(3, close - 3));
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(ErrorCode::InvalidDescriptor, "bad characteristic '" + num + "'");
    ring = &prime_field(std::stoul(num));
    pos = close + 1;
  } else if (d.rfind("QQ", 0) == 0) {
    ring = &rationals();
    pos = 2;
  } else if (d.rfind("Q", 0) == 0) {
    ring = &rationals();
    pos = 1;
  } else {
    throw Error(ErrorCode::InvalidDescriptor, "unknown ring '" + d + "'");
  }
  while (pos < d.size()) {
    if (std::isspace(static_cast<unsigned char>(d[pos]))) {
      ++pos;
      continue;
    }
    if (d[pos] != '[') throw Error(ErrorCode::InvalidDescriptor, "expected '[' in '" + d + "'");
    int depth = 0;
    std::size_t close = pos;
    for (; close < d.size(); ++close) {
      if (d[close] == '[') ++depth;
      if (d[close] == ']' && --depth == 0) break;
    }
    if (close >= d.size()) throw Error(ErrorCode::InvalidDescriptor, "unbalanced brackets in '" + d + "'");
    std::string inner = trim(std::string_view(d).substr(pos + 1, close - pos - 1));
    if (inner.rfind("1/", 0) == 0) {
      ring = &localization(*ring, std::string_view(inner).substr(2));
    } else {
      if (ring->kind_ != Kind::Rationals && ring->kind_ != Kind::PrimeField)
        throw Error(ErrorCode::InvalidDescriptor, "nested polynomial rings are not supported");
      std::vector<std::string> vars;
      std::size_t start = 0;
      while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        if (comma == std::string::npos) comma = inner.size();
        vars.push_back(trim(std::string_view(inner).substr(start, comma - start)));
        start = comma + 1;
      }
      ring = &polynomial(*ring, vars);
    }
    pos = close + 1;
  }
  return *ring;
}

std::optional<std::size_t> Ring::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

const Poly& Ring::s() const {
  if (kind_ != Kind::Localization) throw Error(ErrorCode::InvalidDescriptor, descriptor_ + " is not a localization");
  return s_;
}

}  // namespace dser
