#pragma once

#include "pinvup/matrix.hpp"
#include "pinvup/tolerance.hpp"

namespace pinvup {

/// Frobenius norms of the four Moore–Penrose defects of a candidate X for A:
///   r1 = ‖AXA − A‖, r2 = ‖XAX − X‖, r3 = ‖(AX)ᵀ − AX‖, r4 = ‖(XA)ᵀ − XA‖.
struct MpResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  double max() const noexcept;
};

MpResiduals mp_residuals(const Matrix& a, const Matrix& x);

/// A matrix paired with its pseudoinverse. Shapes are checked on
/// construction; the numerical relationship is checked by `verified`.
class PinvState {
 public:
  PinvState() = default;
  PinvState(Matrix a, Matrix a_plus);

  /// Builds the state with the column-by-column Greville recursion.
  static PinvState from_matrix(Matrix a, const Tolerance& tol = {});
  /// Builds the state from a supplied pseudoinverse, throwing
  /// std::invalid_argument when any MP residual exceeds tol.accept_bound(‖a‖_F).
  static PinvState verified(Matrix a, Matrix a_plus, const Tolerance& tol = {});

  const Matrix& a() const noexcept { return a_; }
  const Matrix& a_plus() const noexcept { return a_plus_; }
  std::size_t rows() const noexcept { return a_.rows(); }
  std::size_t cols() const noexcept { return a_.cols(); }

  MpResiduals residuals() const { return mp_residuals(a_, a_plus_); }
  bool satisfies(const Tolerance& tol) const;

 private:
  Matrix a_;
  Matrix a_plus_;
};

/// Pseudoinverse of a single column v: vᵀ/(vᵀv), or the zero row when v is zero under tol.
Matrix column_pinv(const Matrix& v, const Tolerance& tol);

/// One Greville step: the state for [A | h] from the state for A.
PinvState greville_append_column(const PinvState& state, const Matrix& h, const Tolerance& tol);

/// Full pseudoinverse by running the single-column recursion over every column of a.
Matrix greville_full_pinv(const Matrix& a, const Tolerance& tol = {});

/// Range projector A·A⁺.
Matrix projector(const PinvState& state);

}  // namespace pinvup
