#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pinvup/matrix.hpp"

namespace pinvup::harness {

enum class RankPattern { Full, InRange, ZeroCols, Mixed };

/// Per-column construction rule of a generated block.
///   Fresh     'f'  independent uniform entries
///   InRange   'r'  A·w for random w
///   Zero      'z'  exact zeros
///   Dependent 'd'  A·w plus a random combination of the earlier block columns
enum class ColumnTag : char { Fresh = 'f', InRange = 'r', Zero = 'z', Dependent = 'd' };

std::string_view to_string(RankPattern pattern) noexcept;
std::optional<RankPattern> rank_pattern_from_string(std::string_view name) noexcept;
/// Parses a tag string such as "frzd"; throws std::invalid_argument on other characters.
std::vector<ColumnTag> parse_tags(std::string_view tags);
std::string tags_to_string(const std::vector<ColumnTag>& tags);

/// Deterministic description of a corpus.
///
/// Column mode (rows == false) appends p columns to an m×n matrix; row mode
/// appends q rows. For the mixed pattern `tags` fixes the per-column rules;
/// when empty each instance draws its tags uniformly from {f, r, z, d}.
/// `a_rank` of zero means a generic (full-rank) base matrix, otherwise the
/// base is a product of m×a_rank and a_rank×n factors.
struct CorpusSpec {
  std::size_t m = 4;
  std::size_t n = 2;
  std::size_t p = 2;
  std::size_t q = 2;
  RankPattern pattern = RankPattern::Full;
  std::vector<ColumnTag> tags;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::size_t count = 1;
  bool rows = false;
  std::size_t a_rank = 0;

  std::size_t block_size() const noexcept { return rows ? q : p; }
  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

struct Instance {
  std::size_t id = 0;
  Matrix a;
  Matrix block;  // H (m×p) in column mode, Aₓ (q×n) in row mode
  bool rows = false;
  std::vector<ColumnTag> tags;
};

/// Instances 0..count-1. Instance i draws everything from
/// Xoshiro256(instance_seed(spec.seed, i)), so corpora are reproducible.
std::vector<Instance> generate(const CorpusSpec& spec);
Instance generate_instance(const CorpusSpec& spec, std::size_t id);

void to_json(nlohmann::json& j, const CorpusSpec& spec);
void from_json(const nlohmann::json& j, CorpusSpec& spec);
CorpusSpec load_corpus_spec(const std::string& path);

}  // namespace pinvup::harness
