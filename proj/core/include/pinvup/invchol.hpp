#pragma once

#include <cstddef>
#include <optional>

#include "pinvup/matrix.hpp"
#include "pinvup/tolerance.hpp"

namespace pinvup {

/// Upper-triangular G with G·Gᵀ = (CᵀC)⁻¹ for the columns C it summarises.
///
/// G is the inverse transpose of the Cholesky factor of CᵀC. It grows one
/// column at a time through `extend`; the columns are kept by value so the
/// projection onto span(C) can be applied without forming an m×m matrix.
class InvCholFactor {
 public:
  /// Factor over zero columns of length `rows`.
  static InvCholFactor empty(std::size_t rows);

  const Matrix& g() const noexcept { return g_; }
  const Matrix& cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return g_.rows(); }
  std::size_t rows() const noexcept { return cols_.rows(); }

 private:
  friend struct InvCholAccess;
  InvCholFactor(Matrix g, Matrix cols) : g_(std::move(g)), cols_(std::move(cols)) {}

  Matrix g_;
  Matrix cols_;
};

/// Outcome of trying to add a column to a factor.
///
/// When the residual c̃ is zero under the tolerance `factor` is empty and the
/// caller takes the dependent-column path; `k_reached` still reports how many
/// columns the unchanged factor holds.
struct ExtendResult {
  std::optional<InvCholFactor> factor;
  Matrix c_tilde;
  double eta = 0.0;
  std::size_t k_reached = 0;

  bool zero_signal() const noexcept { return !factor.has_value(); }
};

/// G₁ = [1/√(c₁ᵀc₁)], or the zero signal when c₁ is zero.
ExtendResult init_g1(const Matrix& c1, const Tolerance& tol);

/// Residual of ck against span(factor.cols()):
///   c̃ = ck − C·G·Gᵀ·Cᵀ·ck, evaluated right to left in O(m·k).
Matrix c_tilde(const InvCholFactor& factor, const Matrix& ck);

/// Appends ck to the factor:
///   η = 1/√(c̃ᵀc̃), u = −η·G·Gᵀ·Cᵀ·ck, G' = [G u; 0 η].
/// `reference_sq` is the squared norm used by a relative tolerance; it
/// defaults to ‖ck‖² and block updates pass the norm of the original column.
ExtendResult extend(const InvCholFactor& factor, const Matrix& ck, const Tolerance& tol,
                    std::optional<double> reference_sq = std::nullopt);

/// Bᵀ = G·Gᵀ·Cᵀ, the pseudoinverse of the (full column rank) summarised columns.
Matrix b_from_g(const InvCholFactor& factor);

}  // namespace pinvup
