#pragma once

// Seeded identity suites. Every case draws from its own generator seeded by
// (seed, identity id, case index), so a report depends only on those three
// values and the config, never on which other suites ran.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dser/io.hpp"

namespace dser {

struct SuiteConfig {
  std::string ring = "Q";
  std::size_t n_max = 3, m_max = 3;
  std::uint64_t seed = 1;
  /// Group names (see suite_groups()); empty selects all.
  std::vector<std::string> identities;
  std::size_t samples = 100;
  /// A fixed space instead of random ones (--gram / --hyperbolic-rank).
  SpacePtr space;
  /// Test fixture: perturbs one generator matrix entry in the membership
  /// suite so the run must fail.
  bool corrupt = false;
};

/// membership, splitting, generation, commutators, scaling, nested,
/// nested-scaling, bridges, eichler-props, dilation, theta-dilation, telescope.
const std::vector<std::string>& suite_groups();

struct SuiteResult {
  std::vector<IdentityReport> reports;  // sorted by (id, case)
  std::size_t coincidence_checked = 0, coincidence_held = 0;
  std::size_t violations() const;
};

/// Throws Error(InvalidDescriptor / RankTooSmall) on an unusable config.
SuiteResult run_suite(const SuiteConfig& cfg);

/// {"summary": {...}} with per-id counts and the projection-dual coincidence tally.
Json suite_summary(const SuiteConfig& cfg, const SuiteResult& r);

/// The localization used by the dilation suites: <field>[s,x,X][1/s].
const Ring& dilation_ring(const Ring& r);
/// The polynomial ring used by the telescoping suite: <field>[x,X].
const Ring& telescope_ring(const Ring& r);

}  // namespace dser
