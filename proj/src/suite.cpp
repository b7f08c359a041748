#include "dser/suite.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "dser/draws.hpp"

namespace dser {

namespace {

constexpr Direction kDirs[] = {Direction::ToP, Direction::ToPDual};
constexpr Family kFamilies[] = {Family::AA, Family::ABstar, Family::BstarBstar};
constexpr NestedVariant kVariants[] = {NestedVariant::I, NestedVariant::II, NestedVariant::III, NestedVariant::IV};
const char* const kGeneratorFamilies[] = {"FullAlpha", "FullBetaStar", "Coordinate", "Eichler", "BassTransvection"};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, const std::string& id, std::size_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) h = (h ^ c) * 0x100000001b3ULL;
  return splitmix(splitmix(seed ^ h) + index);
}

std::string field_prefix(const Ring& r) {
  const std::string& d = r.descriptor();
  return d.substr(0, d.find('['));
}

IdentityReport flag(IdentityReport rep, const std::string& observed, const std::string& required, const std::string& note) {
  rep.equal = false;
  if (!rep.witness) rep.witness = Witness{0, 0, observed, required};
  rep.note = rep.note.empty() ? note : rep.note + "; " + note;
  return rep;
}

struct Runner {
  const SuiteConfig& cfg;
  const Ring& ring;
  SuiteResult& out;

  // Draws a space over `r` with m >= min_m, or the fixed one moved to `r`.
  SpacePtr space(Sampler& rng, const Ring& r, std::size_t min_m, std::size_t n_fixed = 0, std::size_t m_fixed = 0) const {
    if (cfg.space) {
      if (cfg.space->m() < min_m) return nullptr;
      return change_ring(cfg.space, r);
    }
    std::size_t n = n_fixed ? n_fixed : pick(rng, cfg.n_max);
    std::size_t m = m_fixed ? m_fixed : min_m + static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cfg.m_max - min_m)));
    return random_space(rng, r, n, m);
  }

  // Runs `samples` cases of one id; `body` returns the report for a case, or
  // nullopt when the fixed space cannot host it.
  void cases(const std::string& id, const std::function<std::optional<IdentityReport>(Sampler&)>& body) {
    for (std::size_t c = 0; c < cfg.samples; ++c) {
      std::uint64_t seed = case_seed(cfg.seed, id, c);
      Sampler rng(seed);
      IdentityReport rep;
      try {
        auto got = body(rng);
        if (!got) {
          rep.measurement = true;
          rep.note = "skipped: the fixed space has too small a hyperbolic rank";
        } else {
          rep = std::move(*got);
        }
      } catch (const Error& e) {
        rep = IdentityReport{};
        rep = flag(rep, "error", "none", e.what());
      }
      rep.id = id;
      rep.case_index = c;
      rep.seed = seed;
      out.reports.push_back(std::move(rep));
    }
  }

  Scalar sample(Sampler& rng, const Ring& r) const { return rng.scalar(r, 1); }
  Scalar unit(Sampler& rng, const Ring& r) const { return Scalar::from_rational(r, rng.nonzero_rational()); }

  PairParams pair(Sampler& rng, const AmbientSpace& s, bool distinct) const {
    PairParams p;
    p.i = pick(rng, s.m());
    if (distinct) {
      do {
        p.k = pick(rng, s.m());
      } while (p.k == p.i);
    } else {
      p.k = p.i;
    }
    p.j = pick(rng, s.n());
    p.l = pick(rng, s.n());
    p.y1 = sample(rng, s.ring());
    p.y2 = sample(rng, s.ring());
    return p;
  }

  NestedParams nested(Sampler& rng, const AmbientSpace& s) const {
    NestedParams p;
    p.i = pick(rng, s.m());
    do {
      p.k = pick(rng, s.m());
    } while (p.k == p.i);
    // p = i gives a nonzero composite; any p != k is admissible.
    if (rng.uniform(0, 3) > 0) {
      p.p = p.i;
    } else {
      do {
        p.p = pick(rng, s.m());
      } while (p.p == p.k);
    }
    p.j = pick(rng, s.n());
    p.l = pick(rng, s.n());
    p.q = pick(rng, s.n());
    p.y1 = sample(rng, s.ring());
    p.y2 = sample(rng, s.ring());
    p.y3 = sample(rng, s.ring());
    return p;
  }

  void membership() {
    for (int fam = 0; fam < 5; ++fam) {
      cases(std::string("membership.") + kGeneratorFamilies[fam], [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 1);
        Generator g = random_generator_of(rng, s, fam);
        Matrix t = factor_matrix(*s, Factor{g, 1});
        if (cfg.corrupt && fam == 0) t(0, t.cols() - 1) += Scalar(ring, 1);
        return compare_matrices("", *s, t.transpose() * s->psi() * t, s->psi());
      });
    }
  }

  void splitting() {
    for (Direction d : kDirs) {
      cases("splitting." + direction_name(d), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 1);
        return check_splitting(s, random_hom(rng, *s, d), random_hom(rng, *s, d));
      });
    }
  }

  void generation() {
    for (Direction d : kDirs) {
      cases("generation." + direction_name(d), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 1);
        HomMatrix h = random_hom(rng, *s, d);
        Word w = factor_generators(s, h);
        IdentityReport rep = compare_matrices("", *s, word_to_matrix(w).matrix(), gen_full(s, h).matrix());
        bool held = projection_duals_coincide(*s, h);
        ++out.coincidence_checked;
        out.coincidence_held += held ? 1 : 0;
        rep.note = held ? "projection duals coincide" : "projection duals differ";
        std::size_t expect = 2 * s->m() * s->n() - 1;
        if (w.size() != expect) rep = flag(rep, std::to_string(w.size()), std::to_string(expect), "factor count");
        return rep;
      });
    }
  }

  void commutators() {
    for (Family f : kFamilies) {
      cases("commutators." + family_name(f), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 2);
        if (!s) return std::nullopt;
        return check_commutator_family(s, f, pair(rng, *s, true));
      });
    }
    cases("commutators.same-index", [&](Sampler& rng) -> std::optional<IdentityReport> {
      SpacePtr s = space(rng, ring, 1);
      Direction d = random_dir(rng);
      return check_same_index_trivial(s, d, pair(rng, *s, false));
    });
    cases("commutators.mixed-same-index", [&](Sampler& rng) -> std::optional<IdentityReport> {
      SpacePtr s = space(rng, ring, 1);
      return measure_mixed_same_index(s, pair(rng, *s, false));
    });
  }

  void scaling() {
    for (Family f : kFamilies) {
      cases("scaling." + family_name(f), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 2);
        if (!s) return std::nullopt;
        PairParams p = pair(rng, *s, true);
        Scalar a = sample(rng, ring), b = sample(rng, ring), c = unit(rng, ring);
        return check_scaling_corollary(s, f, a, b, c, a * b * c.inverse(), p);
      });
    }
  }

  void nested_identities() {
    for (NestedVariant v : kVariants) {
      cases("nested." + variant_name(v), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 2);
        if (!s) return std::nullopt;
        return check_nested_family(s, v, nested(rng, *s));
      });
    }
  }

  void nested_scaling() {
    for (NestedVariant v : kVariants) {
      cases("nested-scaling." + variant_name(v), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 2);
        if (!s) return std::nullopt;
        NestedParams p = nested(rng, *s);
        // abc = def and a^2 bc = d^2 ef force d = a (for abc != 0), then ef = bc.
        Scalar a = sample(rng, ring), b = sample(rng, ring), c = sample(rng, ring), e = unit(rng, ring);
        return check_nested_scaling(s, v, a, b, c, a, e, b * c * e.inverse(), p);
      });
    }
  }

  void bridges() {
    cases("bridges", [&](Sampler& rng) -> std::optional<IdentityReport> {
      SpacePtr s = space(rng, ring, 1);
      Direction d = random_dir(rng);
      std::size_t i = pick(rng, s->m()), j = pick(rng, s->n());
      return check_bridges(s, d, i, j, sample(rng, ring));
    });
  }

  void eichler() {
    using Check = std::function<IdentityReport(Sampler&, const SpacePtr&, const IsotropicFamily&)>;
    std::vector<std::pair<std::string, Check>> props{
        {"membership", [](Sampler&, const SpacePtr& s, const IsotropicFamily& f) { return check_eichler_membership(s, f.u, f.v); }},
        {"product", [](Sampler&, const SpacePtr& s, const IsotropicFamily& f) { return check_eichler_product(s, f.u, f.v, f.w); }},
        {"inverse", [](Sampler&, const SpacePtr& s, const IsotropicFamily& f) { return check_eichler_inverse(s, f.u, f.v); }},
        {"conjugation",
         [](Sampler& rng, const SpacePtr& s, const IsotropicFamily& f) {
           return check_eichler_conjugation(s, f.u, f.v, random_coord_word(rng, s, rng.uniform(1, 3)));
         }},
    };
    for (const auto& [name, check] : props) {
      cases("eichler-props." + name, [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, ring, 1);
        IsotropicFamily fam = random_isotropic_family(rng, s);
        return check(rng, s, fam);
      });
    }
  }

  void dilation() {
    const Ring& loc = dilation_ring(ring);
    struct Shape {
      DilationCase c;
      bool same_kind, same_index;
    };
    const Shape shapes[] = {{DilationCase::SameKindDistinct, true, false},
                            {DilationCase::SameKindSameIndex, true, true},
                            {DilationCase::MixedDistinct, false, false},
                            {DilationCase::MixedSameIndex, false, true}};
    for (const Shape& sh : shapes) {
      cases("dilation." + dilation_case_name(sh.c), [&](Sampler& rng) -> std::optional<IdentityReport> {
        SpacePtr s = space(rng, loc, sh.same_index && sh.same_kind ? 1 : 2);
        if (!s) return std::nullopt;
        DilationInput in;
        in.a = rng.nonzero_scalar(loc, 1, {"X", "s"});
        in.r = rng.uniform(0, 2);
        in.kind_x = random_dir(rng);
        in.kind_y = sh.same_kind ? in.kind_x : (in.kind_x == Direction::ToP ? Direction::ToPDual : Direction::ToP);
        in.i = pick(rng, s->m());
        if (sh.same_index) {
          in.k = in.i;
        } else {
          do {
            in.k = pick(rng, s->m());
          } while (in.k == in.i);
        }
        in.j = pick(rng, s->n());
        in.l = pick(rng, s->n());
        in.x = rng.nonzero_scalar(loc, 1, {"X", "s"});
        int d_min = dilation_d_min(sh.c, in.r);

        auto run = [&](int d) {
          DilationInput at = in;
          at.d = d;
          return dilate_generator(s, at);
        };
        auto oracle = [&](int d) {
          CoordGen g{in.kind_x, in.i, in.j, in.a * Scalar::s_power(loc, -in.r)};
          Matrix gm = gen_coord(s, g.kind, g.i, g.j, g.y).matrix();
          return gm * gen_coord(s, in.kind_y, in.k, in.l, in.x * Scalar::s_power(loc, d)).matrix() *
                 gen_coord(s, g.kind, g.i, g.j, -g.y).matrix();
        };

        DilationWitness w0 = run(d_min);
        IdentityReport rep = compare_matrices("", *s, word_to_matrix(w0.word).matrix(), oracle(d_min));
        rep.note = "d=" + std::to_string(d_min) + " factors=" + std::to_string(w0.word.size());
        if (w0.dcase != sh.c) return flag(rep, dilation_case_name(w0.dcase), dilation_case_name(sh.c), "case");
        DilationWitness w3 = run(d_min + 3);
        IdentityReport rep3 = compare_matrices("", *s, word_to_matrix(w3.word).matrix(), oracle(d_min + 3));
        if (!rep3.equal) return flag(rep3, "", "", "at d_min + 3");
        for (const DilationWitness* w : {&w0, &w3}) {
          if (!w->verified || w->min_s_order < 1) return flag(rep, std::to_string(w->min_s_order), ">= 1", "min s-order");
          if (w->word.size() > dilation_bound(sh.c))
            return flag(rep, std::to_string(w->word.size()), "<= " + std::to_string(dilation_bound(sh.c)), "factor bound");
        }
        int prev = w0.min_s_order;
        for (int step : {2, 4}) {
          int cur = run(d_min + step).min_s_order;
          if (cur < prev) return flag(rep, std::to_string(cur), ">= " + std::to_string(prev), "monotonicity at d_min + " + std::to_string(step));
          prev = cur;
        }
        return rep;
      });
    }

  }

  void theta_dilation() {
    const Ring& loc = dilation_ring(ring);
    cases("theta-dilation", [&](Sampler& rng) -> std::optional<IdentityReport> {
      SpacePtr s = space(rng, loc, 1, 1, 2);
      Word theta = random_theta(rng, s, rng.uniform(1, 3));
      ThetaDilation res = dilate_theta(theta);
      Scalar scaled = Scalar::s_power(loc, res.d) * Scalar::variable(loc, "X");
      IdentityReport rep =
          compare_matrices("", *s, word_to_matrix(res.out).matrix(), word_to_matrix(specialize_word(theta, "X", scaled)).matrix());
      rep.note = "d=" + std::to_string(res.d) + " factors=" + std::to_string(res.out.size());
      if (!res.verified) return flag(rep, "unverified", "verified", "min s-order");
      if (!word_to_matrix(specialize_word(res.out, "X", Scalar(loc, 0))).matrix().is_identity())
        return flag(rep, "out(0) != Id", "Id", "specialization");
      if (res.out_base.space()->ring() != *loc.base()) return flag(rep, res.out_base.space()->ring().descriptor(), loc.base()->descriptor(), "base ring");
      return rep;
    });
  }

  void telescoping() {
    const Ring& poly = telescope_ring(ring);
    cases("telescope", [&](Sampler& rng) -> std::optional<IdentityReport> {
      SpacePtr s = space(rng, poly, 1);
      Word theta = normalize_theta(random_coord_word(rng, s, rng.uniform(1, 3), 2));
      OrthMatrix t = word_to_matrix(theta);
      int r = rng.uniform(1, 4);
      std::vector<Share> shares;
      Scalar rest(poly, 1);
      for (int k = 0; k + 1 < r; ++k) {
        Share sh{rng.scalar(poly, 1, {"X"}), rng.scalar(poly, 1, {"X"})};
        rest -= sh.d * sh.b;
        shares.push_back(sh);
      }
      Scalar c = unit(rng, poly);
      shares.push_back(Share{c, rest * c.inverse()});
      Matrix prod = Matrix::identity(poly, s->dim());
      for (const auto& k : telescope(t, shares)) prod = prod * k.matrix();
      IdentityReport rep = compare_matrices("", *s, prod, t.matrix());
      rep.note = "shares=" + std::to_string(r);
      return rep;
    });
  }
};

bool selected(const SuiteConfig& cfg, const std::string& group) {
  return cfg.identities.empty() || std::find(cfg.identities.begin(), cfg.identities.end(), group) != cfg.identities.end();
}

}  // namespace

const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> groups{"membership", "splitting", "generation",    "commutators", "scaling",  "nested",
                                               "nested-scaling", "bridges", "eichler-props", "dilation", "theta-dilation", "telescope"};
  return groups;
}

std::size_t SuiteResult::violations() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const IdentityReport& r) { return !r.measurement && !r.equal; }));
}

const Ring& dilation_ring(const Ring& r) { return Ring::parse(field_prefix(r) + "[s,x,X][1/s]"); }

const Ring& telescope_ring(const Ring& r) { return Ring::parse(field_prefix(r) + "[x,X]"); }

SuiteResult run_suite(const SuiteConfig& cfg) {
  for (const auto& id : cfg.identities)
    if (std::find(suite_groups().begin(), suite_groups().end(), id) == suite_groups().end())
      throw Error(ErrorCode::InvalidDescriptor, "unknown identity group \"" + id + "\"");
  if (cfg.n_max < 1 || cfg.m_max < 1) throw Error(ErrorCode::RankTooSmall, "n_max and m_max must be at least 1");
  const Ring& ring = cfg.space ? cfg.space->ring() : Ring::parse(cfg.ring);
  bool needs_two = false;
  for (const char* g : {"commutators", "scaling", "nested", "nested-scaling", "dilation"}) needs_two |= selected(cfg, g);
  if (!cfg.space && needs_two && cfg.m_max < 2) throw Error(ErrorCode::RankTooSmall, "the selected identities need m_max >= 2");

  SuiteResult out;
  Runner run{cfg, ring, out};
  const std::vector<std::pair<std::string, void (Runner::*)()>> table{
      {"membership", &Runner::membership},   {"splitting", &Runner::splitting},
      {"generation", &Runner::generation},   {"commutators", &Runner::commutators},
      {"scaling", &Runner::scaling},         {"nested", &Runner::nested_identities},
      {"nested-scaling", &Runner::nested_scaling}, {"bridges", &Runner::bridges},
      {"eichler-props", &Runner::eichler},   {"dilation", &Runner::dilation},
      {"theta-dilation", &Runner::theta_dilation},
      {"telescope", &Runner::telescoping},
  };
  for (const auto& [group, fn] : table)
    if (selected(cfg, group)) (run.*fn)();
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const IdentityReport& a, const IdentityReport& b) {
    return a.id != b.id ? a.id < b.id : a.case_index < b.case_index;
  });
  return out;
}

Json suite_summary(const SuiteConfig& cfg, const SuiteResult& r) {
  Json ids = Json::object();
  std::map<std::string, std::array<std::size_t, 3>> counts;  // equal, violated, measured
  for (const auto& rep : r.reports) {
    auto& c = counts[rep.id];
    ++c[rep.measurement ? 2 : (rep.equal ? 0 : 1)];
  }
  for (const auto& [id, c] : counts) ids[id] = Json{{"equal", c[0]}, {"violated", c[1]}, {"measured", c[2]}};
  Json s;
  s["ring"] = cfg.space ? cfg.space->ring().descriptor() : cfg.ring;
  s["seed"] = cfg.seed;
  s["samples"] = cfg.samples;
  s["reports"] = r.reports.size();
  s["violations"] = r.violations();
  s["ids"] = std::move(ids);
  s["projection_dual_coincidence"] = Json{{"checked", r.coincidence_checked}, {"held", r.coincidence_held}};
  return Json{{"summary", std::move(s)}};
}

}  // namespace dser
