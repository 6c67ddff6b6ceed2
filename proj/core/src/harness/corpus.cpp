#include "pinvup/harness/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pinvup/harness/rng.hpp"

namespace pinvup::harness {

namespace {

constexpr std::array<ColumnTag, 4> kAllTags = {ColumnTag::Fresh, ColumnTag::InRange, ColumnTag::Zero,
                                              ColumnTag::Dependent};

Matrix uniform_matrix(Xoshiro256& rng, std::size_t rows, std::size_t cols, double scale) {
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = scale * rng.uniform(-1.0, 1.0);
  }
  return out;
}

// Base matrix and block in column form: `rows`×`cols` base, `tags.size()` new columns.
std::pair<Matrix, Matrix> column_problem(Xoshiro256& rng, std::size_t rows, std::size_t cols,
                                         std::size_t rank, const std::vector<ColumnTag>& tags,
                                         double scale) {
  Matrix a = rank == 0 ? uniform_matrix(rng, rows, cols, scale)
                       : matmul(uniform_matrix(rng, rows, rank, scale), uniform_matrix(rng, rank, cols, 1.0));
  Matrix block(rows, tags.size());
  for (std::size_t j = 0; j < tags.size(); ++j) {
    Matrix col(rows, 1);
    switch (tags[j]) {
      case ColumnTag::Fresh:
        col = uniform_matrix(rng, rows, 1, scale);
        break;
      case ColumnTag::InRange:
        col = matmul(a, uniform_matrix(rng, cols, 1, 1.0));
        break;
      case ColumnTag::Zero:
        break;
      case ColumnTag::Dependent: {
        col = matmul(a, uniform_matrix(rng, cols, 1, 1.0));
        for (std::size_t prev = 0; prev < j; ++prev) {
          const double w = rng.uniform(-1.0, 1.0);
          for (std::size_t i = 0; i < rows; ++i) col(i, 0) += w * block(i, prev);
        }
        break;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) block(i, j) = col(i, 0);
  }
  return {std::move(a), std::move(block)};
}

}  // namespace

std::string_view to_string(RankPattern pattern) noexcept {
  switch (pattern) {
    case RankPattern::Full: return "full";
    case RankPattern::InRange: return "in_range";
    case RankPattern::ZeroCols: return "zero_cols";
    case RankPattern::Mixed: return "mixed";
  }
  return "full";
}

std::optional<RankPattern> rank_pattern_from_string(std::string_view name) noexcept {
  for (auto p : {RankPattern::Full, RankPattern::InRange, RankPattern::ZeroCols, RankPattern::Mixed}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::vector<ColumnTag> parse_tags(std::string_view tags) {
  std::vector<ColumnTag> out;
  for (char ch : tags) {
    switch (ch) {
      case 'f': case 'r': case 'z': case 'd':
        out.push_back(static_cast<ColumnTag>(ch));
        break;
      default:
        throw std::invalid_argument(std::string("unknown column tag '") + ch + "' (expected f, r, z or d)");
    }
  }
  return out;
}

std::string tags_to_string(const std::vector<ColumnTag>& tags) {
  std::string out;
  for (auto t : tags) out.push_back(static_cast<char>(t));
  return out;
}

void CorpusSpec::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("corpus spec: " + msg); };
  if (m == 0 || n == 0) fail("m and n must be at least 1");
  if (block_size() == 0) fail(rows ? "q must be at least 1" : "p must be at least 1");
  if (count == 0) fail("count must be at least 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) fail("scale must be positive");
  if (a_rank > std::min(m, n)) fail("a_rank exceeds min(m, n)");
  if (!tags.empty()) {
    if (pattern != RankPattern::Mixed) fail("tags are only meaningful for the mixed pattern");
    if (tags.size() != block_size()) fail("tag count must equal the block size");
  }
}

Instance generate_instance(const CorpusSpec& spec, std::size_t id) {
  spec.validate();
  Xoshiro256 rng(instance_seed(spec.seed, id));
  const std::size_t count = spec.block_size();

  std::vector<ColumnTag> tags;
  switch (spec.pattern) {
    case RankPattern::Full: tags.assign(count, ColumnTag::Fresh); break;
    case RankPattern::InRange: tags.assign(count, ColumnTag::InRange); break;
    case RankPattern::ZeroCols: tags.assign(count, ColumnTag::Zero); break;
    case RankPattern::Mixed:
      if (!spec.tags.empty()) {
        tags = spec.tags;
      } else {
        for (std::size_t j = 0; j < count; ++j) tags.push_back(kAllTags[rng.below(kAllTags.size())]);
      }
      break;
  }

  Instance inst;
  inst.id = id;
  inst.rows = spec.rows;
  inst.tags = tags;
  if (!spec.rows) {
    auto [a, h] = column_problem(rng, spec.m, spec.n, spec.a_rank, tags, spec.scale);
    inst.a = std::move(a);
    inst.block = std::move(h);
  } else {
    // Rows of Aₓ are columns appended to Aᵀ.
    auto [at, ht] = column_problem(rng, spec.n, spec.m, spec.a_rank, tags, spec.scale);
    inst.a = transpose(at);
    inst.block = transpose(ht);
  }
  return inst;
}

std::vector<Instance> generate(const CorpusSpec& spec) {
  spec.validate();
  std::vector<Instance> out;
  out.reserve(spec.count);
  for (std::size_t id = 0; id < spec.count; ++id) out.push_back(generate_instance(spec, id));
  return out;
}

void to_json(nlohmann::json& j, const CorpusSpec& spec) {
  j = nlohmann::json{{"m", spec.m},         {"n", spec.n},
                     {"p", spec.p},         {"q", spec.q},
                     {"pattern", to_string(spec.pattern)},
                     {"tags", tags_to_string(spec.tags)},
                     {"seed", spec.seed},   {"scale", spec.scale},
                     {"count", spec.count}, {"rows", spec.rows},
                     {"a_rank", spec.a_rank}};
}

void from_json(const nlohmann::json& j, CorpusSpec& spec) {
  CorpusSpec out;
  out.m = j.value("m", out.m);
  out.n = j.value("n", out.n);
  out.p = j.value("p", out.p);
  out.q = j.value("q", out.q);
  const std::string pattern = j.value("pattern", std::string(to_string(out.pattern)));
  auto parsed = rank_pattern_from_string(pattern);
  if (!parsed) throw std::invalid_argument("corpus spec: unknown pattern '" + pattern + "'");
  out.pattern = *parsed;
  out.tags = parse_tags(j.value("tags", std::string()));
  out.seed = j.value("seed", out.seed);
  out.scale = j.value("scale", out.scale);
  out.count = j.value("count", out.count);
  out.rows = j.value("rows", out.rows);
  out.a_rank = j.value("a_rank", out.a_rank);
  out.validate();
  spec = std::move(out);
}

CorpusSpec load_corpus_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j.get<CorpusSpec>();
}

}  // namespace pinvup::harness
