// Acceptance run: every criterion at zero tolerance, one line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>

#include "dser/suite.hpp"

using namespace dser;

namespace {

struct Part {
  std::vector<std::string> groups;
  std::size_t samples;
};

struct Criterion {
  int number;
  std::string name;
  std::vector<Part> parts;
  double limit_s;
};

struct Outcome {
  std::size_t cases = 0, violations = 0, measured = 0;
  double seconds = 0;
  // id -> verdict string per case, for the cross-ring comparison
  std::map<std::string, std::vector<std::string>> verdicts;
  std::string first_failure;
};

constexpr std::uint64_t kSeed = 20240601;

Outcome run(const Criterion& c, const std::string& ring) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (const Part& p : c.parts) {
    SuiteConfig cfg;
    cfg.ring = ring;
    cfg.seed = kSeed;
    cfg.n_max = 4;
    cfg.m_max = 4;
    cfg.identities = p.groups;
    cfg.samples = p.samples;
    SuiteResult r = run_suite(cfg);
    for (const auto& rep : r.reports) {
      ++o.cases;
      if (rep.measurement) {
        ++o.measured;
      } else if (!rep.equal) {
        ++o.violations;
        if (o.first_failure.empty()) o.first_failure = to_json(rep).dump();
      }
      o.verdicts[rep.id].push_back(to_json(rep)["verdict"].get<std::string>());
    }
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

bool line(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %-22s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(), detail.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "membership", {{{"membership"}, 500}}, 10},
      {2, "splitting", {{{"splitting"}, 200}}, 10},
      {3, "generation", {{{"generation"}, 100}}, 20},
      {4, "commutator families", {{{"commutators"}, 300}, {{"scaling"}, 200}}, 60},
      {5, "nested families", {{{"nested"}, 200}, {{"nested-scaling"}, 100}}, 120},
      {6, "bridges and Eichler", {{{"bridges"}, 200}, {{"eichler-props"}, 100}}, 30},
      {7, "dilation", {{{"dilation"}, 50}}, 120},
      {8, "theta dilation", {{{"theta-dilation"}, 25}}, 180},
      {9, "telescoping", {{{"telescope"}, 50}}, 60},
  };

  bool all = true;
  std::vector<Outcome> over_q;
  double budget = 0;
  for (const auto& c : criteria) {
    budget += c.limit_s;
    Outcome o;
    try {
      o = run(c, "Q");
    } catch (const std::exception& e) {
      all &= line(c.number, c.name, false, std::string("error: ") + e.what());
      over_q.push_back(o);
      continue;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu cases, %zu violations, %zu measured, %.2f s (limit %.0f s)", o.cases, o.violations,
                  o.measured, o.seconds, c.limit_s);
    std::string detail = buf;
    if (!o.first_failure.empty()) detail += "\n      first failure: " + o.first_failure;
    all &= line(c.number, c.name, o.violations == 0 && o.seconds <= c.limit_s, detail);
    over_q.push_back(std::move(o));
  }

  // Criterion 10: the same seeds over GF(10007) give the same verdicts.
  {
    double seconds = 0;
    std::size_t cases = 0, violations = 0, mismatched = 0;
    std::string note;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
      Outcome o;
      try {
        o = run(criteria[k], "GF(10007)");
      } catch (const std::exception& e) {
        note = std::string("error: ") + e.what();
        ++violations;
        continue;
      }
      seconds += o.seconds;
      cases += o.cases;
      violations += o.violations;
      if (o.verdicts != over_q[k].verdicts) {
        ++mismatched;
        if (note.empty()) note = "verdicts differ in criterion " + std::to_string(criteria[k].number);
      }
      if (note.empty() && !o.first_failure.empty()) note = "first failure: " + o.first_failure;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "GF(10007): %zu cases, %zu violations, %zu criteria with differing verdicts, %.2f s (limit %.0f s)",
                  cases, violations, mismatched, seconds, 2 * budget);
    std::string detail = buf;
    if (!note.empty()) detail += "\n      " + note;
    all &= line(10, "cross-ring", violations == 0 && mismatched == 0 && seconds <= 2 * budget, detail);
  }
  return all ? 0 : 1;
}
