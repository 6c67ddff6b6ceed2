#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "pinvup/greville.hpp"
#include "pinvup/invchol.hpp"
#include "pinvup/matrix.hpp"
#include "pinvup/tolerance.hpp"

namespace pinvup {

/// Which update rule committed a while-loop pass.
///
/// The three CZero tags name the dependent-block formula that was used
/// when every remaining column lay in the current range:
///   CZero_DtD  (I + DᵀD)⁻¹·D̃
///   CZero_DtH  (I + D̃·H)⁻¹·D̃
///   CZero_HDt  D̃·(I + H·D̃)⁻¹
/// FullRank_Cpinv means every remaining column had a non-zero residual and
/// Bᵀ = C⁺ was applied in one step. Mixed_Restart covers everything else: a
/// full-rank prefix and/or a run of dependent columns was committed and the
/// loop restarted on what was left.
enum class BranchTag { CZero_DtD, CZero_DtH, CZero_HDt, FullRank_Cpinv, Mixed_Restart };

enum class CZeroFormula { DtD, DtH, HDt };

std::string_view to_string(BranchTag tag) noexcept;
std::optional<BranchTag> branch_tag_from_string(std::string_view name) noexcept;
std::string_view to_string(CZeroFormula formula) noexcept;

struct DispatchBranch {
  BranchTag tag = BranchTag::Mixed_Restart;
  std::size_t k_reached = 0;  // columns committed through the inverse-Cholesky factor
  std::size_t delta = 0;      // columns committed through the dependent-block formula

  friend bool operator==(const DispatchBranch&, const DispatchBranch&) = default;
};

enum class Backend {
  InverseCholesky,  // incremental G with G·Gᵀ = (CᵀC)⁻¹
  LibraryCholesky,  // Ω = chol(CᵀC), Bᵀ = Ω⁻ᵀ·Ω⁻¹·Cᵀ; scan only when that fails
};

std::string_view to_string(Backend backend) noexcept;

struct BlockUpdateReport {
  std::vector<DispatchBranch> branches;  // one per while-loop pass
  MpResiduals mp;                        // of the returned state; zero when not verified
  std::size_t columns_processed = 0;     // columns (or rows) appended
  std::chrono::nanoseconds elapsed{0};   // update only, excludes verification

  /// Σ (k_reached + delta) == columns_processed and every pass made progress.
  bool consistent() const noexcept;
};

struct UpdateResult {
  PinvState state;
  BlockUpdateReport report;
};

enum class Verification { On, Off };

struct DcPair {
  Matrix d;  // A⁺·H, n×p
  Matrix c;  // H − A·D, m×p
};

DcPair compute_d_c(const PinvState& state, const Matrix& h_block);

/// D̃ = Dᵀ·A⁺ (p×m).
Matrix d_tilde(const PinvState& state, const Matrix& d);

/// Picks the dependent-block formula for an m-row matrix with n current
/// columns receiving p columns:
///   DtD if m ≥ max(n, p), else DtH if n ≥ m ≥ p, else HDt (m ≤ p).
/// Overlapping boundaries resolve in that order.
CZeroFormula select_c_zero_formula(std::size_t m, std::size_t n, std::size_t p) noexcept;

/// Bᵀ (p×m) for a block H whose columns all lie in range(A), given D = A⁺H.
Matrix b_for_c_zero(const PinvState& state, const Matrix& h_block, const Matrix& d);
/// As b_for_c_zero with the formula forced.
Matrix b_for_c_zero_using(const PinvState& state, const Matrix& h_block, const Matrix& d,
                          CZeroFormula formula);

/// Row dual: B (n×q) for rows Aₓ lying in the row space of A, given
/// Dᵀ = Aₓ·A⁺ (q×m). The formula choice uses select_c_zero_formula(n, m, q).
Matrix b_rows_for_c_zero_using(const PinvState& state, const Matrix& ax_block, const Matrix& d_t,
                               CZeroFormula formula);

/// Pseudoinverse of [A | H] from the state for A, in one pass over H.
UpdateResult append_columns(const PinvState& state, const Matrix& h_block, const Tolerance& tol = {},
                            Backend backend = Backend::InverseCholesky,
                            Verification verification = Verification::On);

/// Pseudoinverse of [A ; Aₓ] from the state for A, in one pass over Aₓ.
UpdateResult append_rows(const PinvState& state, const Matrix& ax_block, const Tolerance& tol = {},
                         Backend backend = Backend::InverseCholesky,
                         Verification verification = Verification::On);

}  // namespace pinvup
