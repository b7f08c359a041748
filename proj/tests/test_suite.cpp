#include "doctest.h"

#include "dser/suite.hpp"

using namespace dser;

namespace {

std::string dump(const SuiteConfig& cfg, const SuiteResult& r) {
  std::string out;
  for (const auto& rep : r.reports) out += to_json(rep).dump() + "\n";
  return out + suite_summary(cfg, r).dump() + "\n";
}

}  // namespace

TEST_CASE("every group passes on a small run") {
  for (const char* ring : {"Q", "GF(10007)", "Q[a]"}) {
    SuiteConfig cfg;
    cfg.ring = ring;
    cfg.samples = 4;
    cfg.seed = 5;
    SuiteResult r = run_suite(cfg);
    CAPTURE(ring);
    for (const auto& rep : r.reports) {
      CAPTURE(rep.id);
      CAPTURE(rep.note);
      CHECK((rep.equal || rep.measurement));
    }
    CHECK(r.violations() == 0);
    CHECK(r.coincidence_checked == 8);
  }
}

TEST_CASE("reports are sorted and deterministic") {
  SuiteConfig cfg;
  cfg.samples = 3;
  cfg.identities = {"splitting", "bridges", "generation"};
  SuiteResult a = run_suite(cfg), b = run_suite(cfg);
  CHECK(dump(cfg, a) == dump(cfg, b));
  for (std::size_t k = 1; k < a.reports.size(); ++k) {
    const auto& p = a.reports[k - 1];
    const auto& q = a.reports[k];
    CHECK((p.id < q.id || (p.id == q.id && p.case_index < q.case_index)));
  }
  // A case depends only on (seed, id, index), not on which groups ran.
  SuiteConfig only = cfg;
  only.identities = {"bridges"};
  SuiteResult c = run_suite(only);
  CHECK(to_json(c.reports.front()).dump() == to_json(a.reports.front()).dump());
  cfg.seed = 2;
  CHECK(dump(cfg, run_suite(cfg)) != dump(cfg, a));
}

TEST_CASE("the corruption fixture fails with a witness") {
  SuiteConfig cfg;
  cfg.samples = 2;
  cfg.identities = {"membership"};
  cfg.corrupt = true;
  SuiteResult r = run_suite(cfg);
  CHECK(r.violations() == 2);
  for (const auto& rep : r.reports) {
    if (rep.equal) continue;
    CHECK(rep.id == "membership.FullAlpha");
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->lhs != rep.witness->rhs);
  }
}

TEST_CASE("a fixed space is used for every case") {
  const Ring& q = Ring::rationals();
  SuiteConfig cfg;
  cfg.space = ambient(QuadraticSpace::make(Matrix::from_rows(q, {{Scalar(q, 2), Scalar(q, 1)}, {Scalar(q, 1), Scalar(q, 3)}})), 1);
  cfg.samples = 2;
  cfg.identities = {"generation", "commutators"};
  SuiteResult r = run_suite(cfg);
  CHECK(r.violations() == 0);
  std::size_t skipped = 0;
  for (const auto& rep : r.reports) skipped += rep.measurement && rep.note.rfind("skipped", 0) == 0 ? 1 : 0;
  CHECK(skipped == 6);
  // Non-diagonal form: the projection duals need not agree.
  CHECK(r.coincidence_checked == 4);
}

TEST_CASE("bad configs are rejected") {
  SuiteConfig cfg;
  cfg.identities = {"nonsense"};
  CHECK_THROWS_AS(run_suite(cfg), Error);
  cfg.identities = {"nested"};
  cfg.m_max = 1;
  CHECK_THROWS_AS(run_suite(cfg), Error);
  cfg.ring = "R";
  cfg.m_max = 2;
  CHECK_THROWS_AS(run_suite(cfg), Error);
}

TEST_CASE("helper rings") {
  CHECK(dilation_ring(Ring::parse("GF(10007)")).descriptor() == "GF(10007)[s,x,X][1/s]");
  CHECK(telescope_ring(Ring::parse("Q[a]")).descriptor() == "Q[x,X]");
}
