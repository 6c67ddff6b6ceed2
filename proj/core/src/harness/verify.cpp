#include "pinvup/harness/verify.hpp"

#include <chrono>

namespace pinvup::harness {

namespace {

double micros_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Matrix greville_oracle(const PinvState& base, const Matrix& block, bool rows, const Tolerance& tol) {
  if (!rows) {
    PinvState state = base;
    for (std::size_t j = 0; j < block.cols(); ++j) state = greville_append_column(state, block.col(j), tol);
    return state.a_plus();
  }
  PinvState state(transpose(base.a()), transpose(base.a_plus()));
  const Matrix cols = transpose(block);
  for (std::size_t j = 0; j < cols.cols(); ++j) state = greville_append_column(state, cols.col(j), tol);
  return transpose(state.a_plus());
}

InstanceReport verify_instance(const PinvState& base, const Matrix& block, bool rows, std::size_t id,
                               const VerifyOptions& options) {
  InstanceReport out;
  out.id = id;
  out.m = base.rows();
  out.n = base.cols();
  out.p = rows ? block.rows() : block.cols();
  out.rows = rows;

  UpdateResult result = rows ? append_rows(base, block, options.tol, options.backend)
                             : append_columns(base, block, options.tol, options.backend);
  out.t_block_us = std::chrono::duration<double, std::micro>(result.report.elapsed).count();
  out.branches = result.report.branches;
  out.mp = result.report.mp;

  const auto start = std::chrono::steady_clock::now();
  const Matrix oracle = greville_oracle(base, block, rows, options.tol);
  out.t_oracle_us = micros_since(start);

  out.oracle_dev = max_abs_diff(result.state.a_plus(), oracle);
  out.bound = options.tol.accept_bound(frob_norm(result.state.a()));
  out.pass = out.oracle_dev <= out.bound && out.mp.max() <= out.bound && result.report.consistent() &&
             result.report.columns_processed == out.p;
  return out;
}

InstanceReport verify_instance(const Instance& instance, const VerifyOptions& options) {
  const PinvState base = PinvState::from_matrix(instance.a, options.tol);
  return verify_instance(base, instance.block, instance.rows, instance.id, options);
}

RunReport verify_corpus(const CorpusSpec& spec, const VerifyOptions& options) {
  spec.validate();
  RunReport report;
  for (std::size_t id = 0; id < spec.count; ++id) {
    report.instances.push_back(verify_instance(generate_instance(spec, id), options));
  }
  report.finalize();
  return report;
}

RunReport verify_matrices(const Matrix& a, const Matrix& block, const std::optional<Matrix>& a_plus,
                          bool rows, const VerifyOptions& options) {
  const PinvState base = a_plus ? PinvState(a, *a_plus) : PinvState::from_matrix(a, options.tol);
  RunReport report;
  report.instances.push_back(verify_instance(base, block, rows, 0, options));
  report.finalize();
  return report;
}

}  // namespace pinvup::harness
