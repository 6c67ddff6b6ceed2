#include "pinvup/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "pinvup/block_update.hpp"
#include "pinvup/harness/verify.hpp"

namespace pinvup::harness {

namespace {

double checksum(const Matrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v;
  return s;
}

BenchRow time_method(std::string method, std::size_t reps, const std::function<Matrix()>& run) {
  std::vector<double> samples;
  samples.reserve(reps);
  Matrix last;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    last = run();
    samples.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(samples.begin(), samples.end());
  BenchRow row;
  row.method = std::move(method);
  row.reps = reps;
  row.median_us = reps % 2 ? samples[reps / 2] : 0.5 * (samples[reps / 2 - 1] + samples[reps / 2]);
  row.min_us = samples.front();
  row.checksum = checksum(last);
  return row;
}

}  // namespace

const BenchRow* BenchReport::find(const std::string& method) const {
  for (const auto& row : rows) {
    if (row.method == method) return &row;
  }
  return nullptr;
}

BenchReport bench(const CorpusSpec& spec, std::size_t repetitions, const Tolerance& tol) {
  if (repetitions == 0) throw std::invalid_argument("bench: repetitions must be at least 1");
  const Instance inst = generate_instance(spec, 0);
  const PinvState base = PinvState::from_matrix(inst.a, tol);
  const bool rows = inst.rows;

  auto block_update = [&](Backend backend) {
    return [&, backend] {
      UpdateResult r = rows ? append_rows(base, inst.block, tol, backend, Verification::Off)
                            : append_columns(base, inst.block, tol, backend, Verification::Off);
      return r.state.a_plus();
    };
  };

  BenchReport report;
  report.rows.push_back(time_method("block_invchol", repetitions, block_update(Backend::InverseCholesky)));
  report.rows.push_back(time_method("block_chol", repetitions, block_update(Backend::LibraryCholesky)));
  report.rows.push_back(time_method("greville_p_iter", repetitions,
                                    [&] { return greville_oracle(base, inst.block, rows, tol); }));
  for (auto& row : report.rows) {
    row.m = base.rows();
    row.n = base.cols();
    row.p = spec.block_size();
  }

  VerifyOptions options{tol, Backend::InverseCholesky};
  report.verification.instances.push_back(verify_instance(base, inst.block, rows, 0, options));
  report.verification.finalize();
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "method,m,n,p,reps,median_us,min_us,checksum\n";
  for (const auto& row : report.rows) {
    out << row.method << ',' << row.m << ',' << row.n << ',' << row.p << ',' << row.reps << ','
        << std::setprecision(6) << row.median_us << ',' << row.min_us << ',' << std::setprecision(17)
        << row.checksum << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

}  // namespace pinvup::harness
