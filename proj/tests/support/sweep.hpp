#pragma once

// Random-shape corpora shared by the property tests and the acceptance suite.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pinvup/harness/corpus.hpp"
#include "pinvup/harness/rng.hpp"

namespace pinvup::testing {

struct SweepLimits {
  std::size_t max_m = 30;
  std::size_t max_n = 30;
  std::size_t max_block = 12;
};

struct SweepOptions {
  std::uint64_t seed = 20240611;
  SweepLimits limits;
  std::optional<harness::RankPattern> pattern;  // default: cycles through all four
  std::optional<bool> rows;                     // default: alternates every four instances
};

/// Instance `id` of a sweep: shape, pattern and mode drawn deterministically,
/// matrices from the harness generator.
inline harness::Instance sweep_instance(const SweepOptions& opt, std::size_t id) {
  harness::Xoshiro256 rng(harness::instance_seed(opt.seed ^ 0x5eedULL, id));
  harness::CorpusSpec spec;
  spec.m = 1 + rng.below(opt.limits.max_m);
  spec.n = 1 + rng.below(opt.limits.max_n);
  spec.p = 1 + rng.below(opt.limits.max_block);
  spec.q = spec.p;
  static constexpr harness::RankPattern kPatterns[] = {harness::RankPattern::Full, harness::RankPattern::InRange,
                                                       harness::RankPattern::ZeroCols, harness::RankPattern::Mixed};
  spec.pattern = opt.pattern.value_or(kPatterns[id % 4]);
  spec.rows = opt.rows.value_or((id / 4) % 2 == 1);
  spec.seed = opt.seed;
  return harness::generate_instance(spec, id);
}

}  // namespace pinvup::testing
