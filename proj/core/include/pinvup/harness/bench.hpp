#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pinvup/harness/corpus.hpp"
#include "pinvup/harness/report.hpp"
#include "pinvup/tolerance.hpp"

namespace pinvup::harness {

struct BenchRow {
  std::string method;  // block_invchol, block_chol, greville_p_iter
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t reps = 0;
  double median_us = 0.0;
  double min_us = 0.0;
  double checksum = 0.0;  // sum of the resulting pseudoinverse entries
};

struct BenchReport {
  std::vector<BenchRow> rows;
  RunReport verification;  // correctness of the benchmarked instance

  const BenchRow* find(const std::string& method) const;
};

/// Times instance 0 of `spec`: the one-pass update with each backend and the
/// p-step Greville recursion, all from the same starting state.
BenchReport bench(const CorpusSpec& spec, std::size_t repetitions, const Tolerance& tol = {});

/// Header: method,m,n,p,reps,median_us,min_us,checksum
void write_bench_csv(std::ostream& out, const BenchReport& report);

}  // namespace pinvup::harness
