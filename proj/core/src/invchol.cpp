#include "pinvup/invchol.hpp"

#include <cmath>
#include <sstream>

namespace pinvup {

struct InvCholAccess {
  static InvCholFactor make(Matrix g, Matrix cols) { return InvCholFactor(std::move(g), std::move(cols)); }
};

namespace {

void check_column(const char* op, const InvCholFactor& factor, const Matrix& ck) {
  if (ck.cols() != 1 || ck.rows() != factor.rows()) {
    std::ostringstream os;
    os << op << ": column " << ck.shape_string() << " does not match factor rows " << factor.rows();
    throw std::invalid_argument(os.str());
  }
}

// G·Gᵀ·Cᵀ·ck as a k×1 column.
Matrix projection_coefficients(const InvCholFactor& factor, const Matrix& ck) {
  const Matrix ct_c = matmul_tn(factor.cols(), ck);
  return matmul(factor.g(), matmul_tn(factor.g(), ct_c));
}

}  // namespace

InvCholFactor InvCholFactor::empty(std::size_t rows) { return InvCholFactor(Matrix(0, 0), Matrix(rows, 0)); }

Matrix c_tilde(const InvCholFactor& factor, const Matrix& ck) {
  check_column("c_tilde", factor, ck);
  if (factor.size() == 0) return ck;
  return subtract(ck, matmul(factor.cols(), projection_coefficients(factor, ck)));
}

ExtendResult extend(const InvCholFactor& factor, const Matrix& ck, const Tolerance& tol,
                    std::optional<double> reference_sq) {
  check_column("extend", factor, ck);
  const std::size_t k = factor.size();

  ExtendResult result;
  result.k_reached = k;

  Matrix w = k == 0 ? Matrix(0, 1) : projection_coefficients(factor, ck);
  result.c_tilde = k == 0 ? ck : subtract(ck, matmul(factor.cols(), w));

  const double sq = col_sq_norm(result.c_tilde, 0);
  if (tol.is_zero(sq, reference_sq.value_or(col_sq_norm(ck, 0)))) return result;

  const double eta = 1.0 / std::sqrt(sq);
  Matrix g(k + 1, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) g(i, j) = factor.g()(i, j);
    g(i, k) = -eta * w(i, 0);
  }
  g(k, k) = eta;

  result.eta = eta;
  result.k_reached = k + 1;
  result.factor = InvCholAccess::make(std::move(g), hstack(factor.cols(), ck));
  return result;
}

ExtendResult init_g1(const Matrix& c1, const Tolerance& tol) {
  if (c1.rows() == 0 || c1.cols() != 1) {
    throw std::invalid_argument("init_g1: expected a non-empty column, got " + c1.shape_string());
  }
  return extend(InvCholFactor::empty(c1.rows()), c1, tol);
}

Matrix b_from_g(const InvCholFactor& factor) {
  if (factor.size() == 0) throw std::invalid_argument("b_from_g: factor has no columns");
  // G·(Gᵀ·Cᵀ): k×k times k×m.
  const Matrix gt_ct = matmul_tn(factor.g(), transpose(factor.cols()));
  return matmul(factor.g(), gt_ct);
}

}  // namespace pinvup
