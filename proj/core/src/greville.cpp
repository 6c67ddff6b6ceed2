#include "pinvup/greville.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace pinvup {

namespace {

double asymmetry(const Matrix& s) {
  return frob_norm(subtract(transpose(s), s));
}

}  // namespace

double MpResiduals::max() const noexcept { return std::max({r1, r2, r3, r4}); }

MpResiduals mp_residuals(const Matrix& a, const Matrix& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    std::ostringstream os;
    os << "mp_residuals: candidate " << x.shape_string() << " is not shaped like the transpose of "
       << a.shape_string();
    throw std::invalid_argument(os.str());
  }
  const Matrix ax = matmul(a, x);
  const Matrix xa = matmul(x, a);
  MpResiduals r;
  r.r1 = frob_norm(subtract(matmul(ax, a), a));
  r.r2 = frob_norm(subtract(matmul(x, ax), x));
  r.r3 = asymmetry(ax);
  r.r4 = asymmetry(xa);
  return r;
}

PinvState::PinvState(Matrix a, Matrix a_plus) : a_(std::move(a)), a_plus_(std::move(a_plus)) {
  if (a_plus_.rows() != a_.cols() || a_plus_.cols() != a_.rows()) {
    std::ostringstream os;
    os << "PinvState: pseudoinverse " << a_plus_.shape_string() << " does not match matrix "
       << a_.shape_string();
    throw std::invalid_argument(os.str());
  }
}

PinvState PinvState::from_matrix(Matrix a, const Tolerance& tol) {
  Matrix a_plus = greville_full_pinv(a, tol);
  return PinvState(std::move(a), std::move(a_plus));
}

PinvState PinvState::verified(Matrix a, Matrix a_plus, const Tolerance& tol) {
  PinvState state(std::move(a), std::move(a_plus));
  if (!state.satisfies(tol)) {
    std::ostringstream os;
    os << "PinvState: supplied pseudoinverse fails the Moore-Penrose conditions (max residual "
       << state.residuals().max() << ")";
    throw std::invalid_argument(os.str());
  }
  return state;
}

bool PinvState::satisfies(const Tolerance& tol) const {
  return residuals().max() <= tol.accept_bound(frob_norm(a_));
}

Matrix column_pinv(const Matrix& v, const Tolerance& tol) {
  if (v.cols() != 1) {
    throw std::invalid_argument("column_pinv: expected a column vector, got " + v.shape_string());
  }
  const double sq = col_sq_norm(v, 0);
  if (tol.is_zero(sq, sq)) return Matrix(1, v.rows());
  return scale(transpose(v), 1.0 / sq);
}

PinvState greville_append_column(const PinvState& state, const Matrix& h, const Tolerance& tol) {
  if (h.cols() != 1 || h.rows() != state.rows()) {
    std::ostringstream os;
    os << "greville_append_column: column " << h.shape_string() << " does not fit matrix "
       << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  if (state.cols() == 0) {
    return PinvState(h, column_pinv(h, tol));
  }

  const Matrix& a_plus = state.a_plus();
  const Matrix d = matmul(a_plus, h);
  const Matrix c = subtract(h, matmul(state.a(), d));
  const double c_sq = col_sq_norm(c, 0);

  Matrix b_row;
  if (!tol.is_zero(c_sq, col_sq_norm(h, 0))) {
    b_row = scale(transpose(c), 1.0 / c_sq);
  } else {
    const double d_sq = col_sq_norm(d, 0);
    b_row = scale(matmul_tn(d, a_plus), 1.0 / (1.0 + d_sq));
  }

  Matrix top = subtract(a_plus, matmul(d, b_row));
  return PinvState(hstack(state.a(), h), vstack(top, b_row));
}

Matrix greville_full_pinv(const Matrix& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("greville_full_pinv: empty matrix " + a.shape_string());
  }
  PinvState state(a.col(0), column_pinv(a.col(0), tol));
  for (std::size_t j = 1; j < a.cols(); ++j) {
    state = greville_append_column(state, a.col(j), tol);
  }
  return state.a_plus();
}

Matrix projector(const PinvState& state) { return matmul(state.a(), state.a_plus()); }

}  // namespace pinvup
