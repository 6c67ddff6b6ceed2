#pragma once

#include <optional>

#include "pinvup/block_update.hpp"
#include "pinvup/harness/corpus.hpp"
#include "pinvup/harness/report.hpp"
#include "pinvup/tolerance.hpp"

namespace pinvup::harness {

struct VerifyOptions {
  Tolerance tol;
  Backend backend = Backend::InverseCholesky;
};

/// Greville oracle for a block append: the state for A extended one column
/// (or, in row mode, one row through the transposed problem) at a time.
Matrix greville_oracle(const PinvState& base, const Matrix& block, bool rows, const Tolerance& tol);

/// Runs the block update on one instance starting from `base` and checks it
/// against the oracle and the Moore–Penrose conditions.
InstanceReport verify_instance(const PinvState& base, const Matrix& block, bool rows, std::size_t id,
                               const VerifyOptions& options);
/// As above with the base pseudoinverse computed by greville_full_pinv.
InstanceReport verify_instance(const Instance& instance, const VerifyOptions& options);

RunReport verify_corpus(const CorpusSpec& spec, const VerifyOptions& options);

/// Verification of a single file-supplied problem. When `a_plus` is given
/// it is used as the starting pseudoinverse as-is.
RunReport verify_matrices(const Matrix& a, const Matrix& block, const std::optional<Matrix>& a_plus,
                          bool rows, const VerifyOptions& options);

}  // namespace pinvup::harness
