#pragma once

namespace pinvup {

/// Thresholds shared by every update routine.
///
/// `zero_sq` bounds the squared Euclidean norm below which a residual column
/// is treated as zero. With `relative` set the bound is scaled by the squared
/// norm of the column the residual was computed from.
/// `residual_rel` is the acceptance bound for verification: a defect is
/// accepted when it is at most residual_rel·(1 + ‖reference‖_F).
struct Tolerance {
  double zero_sq = 1e-10;
  double residual_rel = 1e-8;
  bool relative = false;

  /// Throws std::invalid_argument unless both thresholds are positive and finite.
  void validate() const;

  /// True when a residual of squared norm `sq` (from a source column of
  /// squared norm `source_sq`) counts as zero.
  bool is_zero(double sq, double source_sq) const noexcept {
    if (relative) {
      return sq == 0.0 || sq < zero_sq * source_sq;
    }
    return sq < zero_sq;
  }

  /// residual_rel·(1 + reference_norm)
  double accept_bound(double reference_norm) const noexcept {
    return residual_rel * (1.0 + reference_norm);
  }
};

}  // namespace pinvup
