#include "dser/local_global.hpp"

#include <algorithm>

namespace dser {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vector map_vector(const Vector& v, const std::function<Scalar(const Scalar&)>& fn) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(fn(x));
  return out;
}

using Coords = std::vector<CoordGen>;

CoordGen negated(const CoordGen& g) { return CoordGen{g.kind, g.i, g.j, -g.y}; }

bool same_coordinate(const CoordGen& a, const CoordGen& b) { return a.kind == b.kind && a.i == b.i && a.j == b.j; }

// Adjacent factors on one coordinate combine: E(y1) E(y2) = E(y1 + y2).
Coords merged(const Coords& in) {
  Coords out;
  for (const auto& g : in) {
    if (!out.empty() && same_coordinate(out.back(), g)) {
      out.back().y += g.y;
      if (out.back().y.is_zero()) out.pop_back();
    } else if (!g.y.is_zero()) {
      out.push_back(g);
    }
  }
  return out;
}

Coords inverse_of(const Coords& in) {
  Coords out;
  for (auto it = in.rbegin(); it != in.rend(); ++it) out.push_back(negated(*it));
  return out;
}

void append(Coords& dst, const Coords& src) { dst.insert(dst.end(), src.begin(), src.end()); }

Coords bracket(const CoordGen& g, const CoordGen& h) { return {g, h, negated(g), negated(h)}; }

Scalar spow(const Ring& r, int e) { return Scalar::s_power(r, e); }

// [g, h] rewritten by the scaling corollary as [g s^e, h s^{-e}].
Coords rescaled_bracket(const CoordGen& g, const CoordGen& h, int e) {
  const Ring& r = g.y.ring();
  return bracket(CoordGen{g.kind, g.i, g.j, g.y * spow(r, e)}, CoordGen{h.kind, h.i, h.j, h.y * spow(r, -e)});
}

// Composite first o second* o outer as a coordinate generator at
// (first.i, outer.j) of first's kind.
CoordGen composite(const AmbientSpace& s, const CoordGen& outer, const CoordGen& first, const CoordGen& second) {
  Matrix m = coord_hom(s, first.kind, first.i, first.j, first.y).entries *
             dual_star(s, coord_hom(s, second.kind, second.i, second.j, second.y)) *
             coord_hom(s, outer.kind, outer.i, outer.j, outer.y).entries;
  std::optional<Scalar> y = coordinate_scale(s, HomMatrix{first.kind, m}, first.i, outer.j);
  if (!y) throw Error(ErrorCode::RewriteFailure, "nested composite is not a coordinate map");
  return CoordGen{first.kind, first.i, outer.j, *y};
}

Matrix coord_matrix(const SpacePtr& s, const CoordGen& g) { return gen_coord(s, g.kind, g.i, g.j, g.y).matrix(); }

Word to_word(const SpacePtr& s, const Coords& c) {
  Word w(s);
  for (const auto& g : c) w.push(g);
  return w;
}

}  // namespace

Word map_word_scalars(const Word& w, const SpacePtr& target, const std::function<Scalar(const Scalar&)>& fn) {
  Word out(target);
  const Ring& tr = target->ring();
  for (const auto& f : w.factors()) {
    if (const auto* m = std::get_if<OrthMatrix>(&f.item)) {
      out.push(OrthMatrix::certify(target, m->matrix().map(tr, fn)), f.exp);
      continue;
    }
    Generator g = std::visit(
        overloaded{
            [&](const FullGen& x) -> Generator { return FullGen{HomMatrix{x.hom.dir, x.hom.entries.map(tr, fn)}}; },
            [&](const CoordGen& x) -> Generator { return CoordGen{x.kind, x.i, x.j, fn(x.y)}; },
            [&](const EichlerGen& x) -> Generator { return EichlerGen{map_vector(x.u, fn), map_vector(x.v, fn), fn(x.r)}; },
            [&](const BassGen& x) -> Generator { return BassGen{map_vector(x.p0, fn), fn(x.a0), map_vector(x.w0, fn)}; },
        },
        std::get<Generator>(f.item));
    out.push(std::move(g), f.exp);
  }
  return out;
}

SpacePtr change_ring(const SpacePtr& s, const Ring& target) {
  if (s->ring() == target) return s;
  Matrix phi = s->phi().map(target, [&](const Scalar& x) { return convert(x, target); });
  return ambient(QuadraticSpace::make(phi), s->m());
}

Word change_ring(const Word& w, const SpacePtr& target) {
  const Ring& tr = target->ring();
  return map_word_scalars(w, target, [&](const Scalar& x) { return convert(x, tr); });
}

Matrix substitute_matrix(const Matrix& m, const std::string& var, const Scalar& value) {
  auto asg = identity_assignment(m.ring());
  asg[var] = value;
  return m.map(m.ring(), [&](const Scalar& x) { return substitute(x, asg); });
}

Word specialize_word(const Word& w, const std::string& var, const Scalar& value) {
  auto asg = identity_assignment(w.space()->ring());
  if (!asg.count(var)) throw Error(ErrorCode::UnboundVariable, var + " is not a variable of " + w.space()->ring().descriptor());
  asg[var] = value;
  return map_word_scalars(w, w.space(), [&](const Scalar& x) { return substitute(x, asg); });
}

Word normalize_theta(const Word& w, const std::string& var) {
  Word at_zero = specialize_word(w, var, Scalar(w.space()->ring(), 0));
  return word_inverse(at_zero) * w;
}

Regrouped regroup(const std::vector<Word>& a, const std::vector<Word>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  if (a.empty()) throw Error(ErrorCode::LengthMismatch, "empty lists");
  Regrouped out{{}, Word(a.front().space())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.tail.append(a[i]);
    out.conjugates.push_back(conjugate(b[i], out.tail));
  }
  return out;
}

std::vector<CoordGen> as_coord_factors(const Word& w) {
  Coords out;
  for (const auto& f : w.factors()) {
    const auto* g = std::get_if<Generator>(&f.item);
    const auto* c = g ? std::get_if<CoordGen>(g) : nullptr;
    if (!c) throw Error(ErrorCode::HypothesisViolated, "expected coordinate generators only");
    out.push_back(f.exp == 1 ? *c : negated(*c));
  }
  return out;
}

std::vector<ConjugatePiece> conjugate_factor(const Word& w, const std::string& var) {
  const SpacePtr& s = w.space();
  if (!word_to_matrix(specialize_word(w, var, Scalar(s->ring(), 0))).matrix().is_identity())
    throw Error(ErrorCode::NotNormalized, "theta(0) != Id");
  Coords factors = as_coord_factors(w);
  auto asg = identity_assignment(s->ring());
  asg[var] = Scalar(s->ring(), 0);
  std::vector<ConjugatePiece> out;
  Coords gamma;  // a_1 ... a_k before merging
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const CoordGen& g = factors[k];
    Scalar c = substitute(g.y, asg);
    if (k > 0) {
      const CoordGen& prev = factors[k - 1];
      gamma.push_back(CoordGen{prev.kind, prev.i, prev.j, substitute(prev.y, asg).half()});
    }
    gamma.push_back(CoordGen{g.kind, g.i, g.j, c.half()});
    out.push_back(ConjugatePiece{to_word(s, merged(gamma)), CoordGen{g.kind, g.i, g.j, g.y - c}});
  }
  return out;
}

Word reassemble(const SpacePtr& s, const std::vector<ConjugatePiece>& pieces) {
  Word out(s);
  for (const auto& p : pieces) out.append(conjugate(Word::of(s, p.arg), p.gamma));
  return out;
}

int s_order_of(const Scalar& x) { return x.s_order(); }

int min_s_order(const Word& w) {
  int lo = kInfiniteOrder;
  for (const auto& g : as_coord_factors(w)) lo = std::min(lo, g.y.s_order());
  return lo;
}

std::string dilation_case_name(DilationCase c) {
  switch (c) {
    case DilationCase::Trivial:
      return "trivial";
    case DilationCase::SameKindDistinct:
      return "1a";
    case DilationCase::SameKindSameIndex:
      return "1b";
    case DilationCase::MixedDistinct:
      return "2a";
    default:
      return "2b";
  }
}

DilationCase classify(const CoordGen& g, const CoordGen& t) {
  if (g.y.is_zero() || t.y.is_zero()) return DilationCase::Trivial;
  if (g.kind == t.kind) return g.i == t.i ? DilationCase::SameKindSameIndex : DilationCase::SameKindDistinct;
  return g.i == t.i ? DilationCase::MixedSameIndex : DilationCase::MixedDistinct;
}

int conjugator_r(const CoordGen& g) {
  if (g.y.is_zero()) return 0;
  return std::max(0, -g.y.s_order());
}

int dilation_d_min(DilationCase c, int r, int floor) {
  return c == DilationCase::MixedSameIndex ? 3 * r + 4 * floor + 2 : r + 2 * floor;
}

int worst_d_min(int r, int floor) { return dilation_d_min(DilationCase::MixedSameIndex, r, floor); }

std::size_t dilation_bound(DilationCase c) {
  switch (c) {
    case DilationCase::Trivial:
    case DilationCase::SameKindSameIndex:
      return 1;
    case DilationCase::SameKindDistinct:
    case DilationCase::MixedDistinct:
      return 5;
    default:
      return 52;
  }
}

namespace {

// Mixed kinds, shared hyperbolic index i. With k' != i, a partner column Q
// with phi_{lQ} a unit, and d = N1 + N2 + N3:
//   A = E(s^N1, K_g, k', l), B = E(s^N2 x, K_t, i, l),
//   G = E(s^N3 / phi_lQ, K_t, k', Q), D = [B, G],
//   t = [A, D] [E(y_t / 2), A]   (nested identity with composite = y_t).
// Conjugating each bracket by g uses the nested identities once more, with
// the inner brackets flipped so that every index hypothesis holds.
Coords dilate_mixed_same_index(const AmbientSpace& s, const CoordGen& g, const CoordGen& t, int d, int r, int f) {
  if (s.m() < 2) throw Error(ErrorCode::RankTooSmall, "mixed kinds with i = k need m >= 2");
  const Ring& ring = s.ring();
  std::size_t i = g.i, l = t.j;
  std::size_t kp = i == 1 ? 2 : 1;
  std::optional<std::size_t> partner;
  if (s.phi()(l - 1, l - 1).is_unit()) {
    partner = l;
  } else {
    for (std::size_t q = 1; q <= s.n() && !partner; ++q)
      if (s.phi()(l - 1, q - 1).is_unit()) partner = q;
  }
  if (!partner) throw Error(ErrorCode::NonUnitPairing, "no unit entry in row " + std::to_string(l) + " of phi");
  std::size_t qq = *partner;

  int n1 = r + 2 * f;
  int n2 = (d - n1 + 1) / 2;
  int n3 = d - n1 - n2;
  int e = r + f;
  Scalar x = t.y * spow(ring, -d);

  CoordGen a_gen{g.kind, kp, l, spow(ring, n1)};
  CoordGen b_gen{t.kind, i, l, spow(ring, n2) * x};
  CoordGen g_gen{t.kind, kp, qq, spow(ring, n3) * s.phi()(l - 1, qq - 1).inverse()};
  CoordGen half_t{t.kind, i, l, t.y.half()};

  // g A g^{-1} = [g, A] A.
  Coords wa = rescaled_bracket(g, a_gen, e);
  wa.push_back(a_gen);

  // g D g^{-1} = D [g, D']^{-1} with D' = [G, B]; [g, D'] = E(xi)[g, E(xi/2)].
  CoordGen xi = composite(s, g, g_gen, b_gen);
  Coords gdp{xi};
  append(gdp, rescaled_bracket(g, CoordGen{xi.kind, xi.i, xi.j, xi.y.half()}, e));
  Coords wd = bracket(b_gen, g_gen);
  append(wd, inverse_of(gdp));

  // g C2 g^{-1} = C2 [g, D'']^{-1} with C2 = [E(y_t/2), A], D'' = [A, E(y_t/2)].
  CoordGen mu = composite(s, g, a_gen, half_t);
  Coords gdpp{mu};
  append(gdpp, rescaled_bracket(g, CoordGen{mu.kind, mu.i, mu.j, mu.y.half()}, e));
  Coords wc2 = bracket(half_t, a_gen);
  append(wc2, inverse_of(gdpp));

  Coords out = wa;
  append(out, wd);
  append(out, inverse_of(wa));
  append(out, inverse_of(wd));
  append(out, wc2);
  return out;
}

}  // namespace

std::vector<CoordGen> dilate_conjugation(const AmbientSpace& s, const CoordGen& g, const CoordGen& t, int d, int floor) {
  if (t.y.is_zero()) return {};
  DilationCase c = classify(g, t);
  int r = conjugator_r(g);
  if (c != DilationCase::Trivial && d < dilation_d_min(c, r, floor))
    throw Error(ErrorCode::BudgetTooSmall, "d = " + std::to_string(d) + " < d_min = " + std::to_string(dilation_d_min(c, r, floor)) +
                                               " (case " + dilation_case_name(c) + ")");
  if (t.y.s_order() < std::max(d, floor))
    throw Error(ErrorCode::BudgetTooSmall, "target s-order " + std::to_string(t.y.s_order()) + " below budget " + std::to_string(d));
  switch (c) {
    case DilationCase::Trivial:
    case DilationCase::SameKindSameIndex:
      return {t};
    case DilationCase::SameKindDistinct:
    case DilationCase::MixedDistinct: {
      // g t g^{-1} = [g, t] t, and [g, t] = [g s^{r+f}, t s^{-(r+f)}].
      Coords out = rescaled_bracket(g, t, r + floor);
      out.push_back(t);
      return out;
    }
    default:
      return dilate_mixed_same_index(s, g, t, d, r, floor);
  }
}

DilationWitness dilate_generator(const SpacePtr& s, const DilationInput& in) {
  const Ring& ring = s->ring();
  if (!ring.is_localization()) throw Error(ErrorCode::InvalidDescriptor, "dilation needs a localization");
  if (in.r < 0 || in.d < 0) throw Error(ErrorCode::BudgetTooSmall, "r and d must be non-negative");
  CoordGen g{in.kind_x, in.i, in.j, in.a * spow(ring, -in.r)};
  CoordGen t{in.kind_y, in.k, in.l, in.x * spow(ring, in.d)};
  s->x_index(in.i);
  s->z_index(in.j);
  s->x_index(in.k);
  s->z_index(in.l);
  DilationWitness w{in, classify(g, t), in.d, Word(s), kInfiniteOrder, false};
  if (w.dcase != DilationCase::Trivial && in.d < dilation_d_min(w.dcase, in.r))
    throw Error(ErrorCode::BudgetTooSmall, "d = " + std::to_string(in.d) + " < d_min = " +
                                               std::to_string(dilation_d_min(w.dcase, in.r)) + " (case " +
                                               dilation_case_name(w.dcase) + ")");
  // The conjugator may carry fewer denominators than r; the stated r is
  // the budget basis, so rescale with it.
  Coords out;
  if (w.dcase == DilationCase::Trivial || w.dcase == DilationCase::SameKindSameIndex) {
    if (!t.y.is_zero()) out.push_back(t);
  } else if (w.dcase == DilationCase::MixedSameIndex) {
    out = dilate_mixed_same_index(*s, g, t, in.d, in.r, 1);
  } else {
    out = rescaled_bracket(g, t, in.r + 1);
    out.push_back(t);
  }
  w.word = to_word(s, out);
  Matrix lhs = word_to_matrix(w.word).matrix();
  Matrix rhs = coord_matrix(s, g) * coord_matrix(s, t) * coord_matrix(s, negated(g));
  if (auto diff = lhs.first_difference(rhs)) {
    throw Error(ErrorCode::RewriteFailure, "product differs at (" + std::to_string(diff->first) + "," +
                                               std::to_string(diff->second) + "): " + lhs(diff->first, diff->second).to_string() +
                                               " vs " + rhs(diff->first, diff->second).to_string());
  }
  w.min_s_order = out.empty() ? kInfiniteOrder : min_s_order(w.word);
  w.verified = w.min_s_order >= 1;
  return w;
}

namespace {

// floors[k] = budget needed by xi_1..xi_k for outputs of s-order >= floor.
std::vector<int> budget_ladder(const Coords& xi, int floor) {
  std::vector<int> floors{floor};
  for (const auto& g : xi) floors.push_back(worst_d_min(conjugator_r(g), floors.back()));
  return floors;
}

void rewrite_into(const AmbientSpace& s, const Coords& xi, std::size_t len, const std::vector<int>& floors, const CoordGen& t,
                  Coords& out) {
  if (t.y.is_zero()) return;
  if (len == 0) {
    out.push_back(t);
    return;
  }
  int inner = floors[len - 1];
  Coords mus = merged(dilate_conjugation(s, xi[len - 1], t, floors[len], inner));
  for (const auto& mu : mus) rewrite_into(s, xi, len - 1, floors, mu, out);
}

}  // namespace

int required_budget(const std::vector<CoordGen>& xi, int floor) { return budget_ladder(xi, floor).back(); }

RewriteResult conjugate_rewrite(const Word& xi, const CoordGen& target, int floor) {
  Coords factors = as_coord_factors(xi);
  std::vector<int> floors = budget_ladder(factors, floor);
  RewriteResult res{floors.back(), Word(xi.space())};
  if (!target.y.is_zero() && target.y.s_order() < floors.back())
    throw Error(ErrorCode::BudgetTooSmall, "target s-order " + std::to_string(target.y.s_order()) + " below required " +
                                               std::to_string(floors.back()));
  Coords out;
  rewrite_into(*xi.space(), factors, factors.size(), floors, target, out);
  res.out = to_word(xi.space(), merged(out));
  return res;
}

RewriteResult conjugate_rewrite(const Word& xi, Direction kind, std::size_t i, std::size_t j, const Scalar& x, int d) {
  const Ring& ring = xi.space()->ring();
  if (!ring.is_localization()) throw Error(ErrorCode::InvalidDescriptor, "rewriting needs a localization");
  int need = required_budget(as_coord_factors(xi));
  if (d < need) throw Error(ErrorCode::BudgetTooSmall, "d = " + std::to_string(d) + " < required " + std::to_string(need));
  return conjugate_rewrite(xi, CoordGen{kind, i, j, x * spow(ring, d)});
}

ThetaDilation dilate_theta(const Word& theta, const std::string& var) {
  const SpacePtr& s = theta.space();
  const Ring& ring = s->ring();
  if (!ring.is_localization()) throw Error(ErrorCode::InvalidDescriptor, "theta must live over a localization");
  std::vector<ConjugatePiece> pieces = conjugate_factor(theta, var);

  Scalar xv = Scalar::variable(ring, var);
  auto target_at = [&](const CoordGen& arg, int d) {
    auto asg = identity_assignment(ring);
    asg[var] = spow(ring, d) * xv;
    return CoordGen{arg.kind, arg.i, arg.j, substitute(arg.y, asg)};
  };

  // One d for all pieces: target s-orders grow with d, budgets do not.
  int d = 1;
  std::vector<Coords> gammas;
  for (const auto& p : pieces) {
    gammas.push_back(as_coord_factors(p.gamma));
    if (p.arg.y.is_zero()) continue;
    int need = required_budget(gammas.back());
    int dk = std::max(d, 1);
    while (target_at(p.arg, dk).y.s_order() < need) ++dk;
    d = std::max(d, dk);
  }

  ThetaDilation res{d, Word(s), Word(s), false};
  Coords out;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (pieces[k].arg.y.is_zero()) continue;
    append(out, as_coord_factors(conjugate_rewrite(pieces[k].gamma, target_at(pieces[k].arg, d)).out));
  }
  res.out = to_word(s, merged(out));

  Matrix expect = word_to_matrix(specialize_word(theta, var, spow(ring, d) * xv)).matrix();
  Matrix got = word_to_matrix(res.out).matrix();
  if (auto diff = got.first_difference(expect))
    throw Error(ErrorCode::RewriteFailure, "theta(s^d X) differs at (" + std::to_string(diff->first) + "," +
                                               std::to_string(diff->second) + ")");
  int lo = res.out.empty() ? kInfiniteOrder : min_s_order(res.out);
  res.out_base = change_ring(res.out, change_ring(s, *ring.base()));
  res.verified = lo >= 1;
  return res;
}

std::vector<OrthMatrix> telescope(const OrthMatrix& theta, const std::vector<Share>& shares, const std::string& var) {
  const SpacePtr& s = theta.space();
  const Ring& ring = s->ring();
  if (shares.empty()) throw Error(ErrorCode::PartitionOfUnityFailed, "no shares");
  Scalar total(ring, 0);
  for (const auto& sh : shares) total += sh.d * sh.b;
  if (!total.is_one()) throw Error(ErrorCode::PartitionOfUnityFailed, "sum d_i b_i = " + total.to_string());
  Scalar xv = Scalar::variable(ring, var);
  if (!substitute_matrix(theta.matrix(), var, Scalar(ring, 0)).is_identity())
    throw Error(ErrorCode::NotNormalized, "theta(0) != Id");

  // tails[i] = S_i = sum_{k >= i} d_k b_k; tails.back() = 0.
  std::vector<Scalar> tails(shares.size() + 1, Scalar(ring, 0));
  for (std::size_t i = shares.size(); i-- > 0;) tails[i] = tails[i + 1] + shares[i].d * shares[i].b;

  std::vector<Matrix> at;
  for (const auto& t : tails) at.push_back(substitute_matrix(theta.matrix(), var, t * xv));
  std::vector<OrthMatrix> out;
  for (std::size_t i = 0; i < shares.size(); ++i)
    out.push_back(OrthMatrix::certify(s, at[i] * s->orthogonal_inverse(at[i + 1])));
  return out;
}

}  // namespace dser
