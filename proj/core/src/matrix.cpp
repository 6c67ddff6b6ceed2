#include "pinvup/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pinvup/tolerance.hpp"

namespace pinvup {

namespace {

void require_finite(std::span<const double> data) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Matrix: non-finite entry");
    }
  }
}

[[noreturn]] void shape_error(const char* op, const Matrix& a, const Matrix& b) {
  std::ostringstream os;
  os << op << ": incompatible shapes " << a.shape_string() << " and " << b.shape_string();
  throw std::invalid_argument(os.str());
}

void require_square(const char* op, const Matrix& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << op << ": expected a square matrix, got " << a.shape_string();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    std::ostringstream os;
    os << "Matrix: " << data_.size() << " values supplied for shape " << shape_string();
    throw std::invalid_argument(os.str());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::column(std::initializer_list<double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values));
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::col(std::size_t j) const { return col_range(j, 1); }

Matrix Matrix::col_range(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    std::ostringstream os;
    os << "Matrix::col_range: columns [" << first << ", " << first + count << ") out of range for "
       << shape_string();
    throw std::out_of_range(os.str());
  }
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::copy_n(data_.begin() + i * cols_ + first, count, out.data_.begin() + i * count);
  }
  return out;
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) {
    std::ostringstream os;
    os << "Matrix::row_range: rows [" << first << ", " << first + count << ") out of range for "
       << shape_string();
    throw std::out_of_range(os.str());
  }
  Matrix out(count, cols_);
  std::copy_n(data_.begin() + first * cols_, count * cols_, out.data_.begin());
  return out;
}

std::string Matrix::shape_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

void Tolerance::validate() const {
  if (!(zero_sq > 0.0) || !std::isfinite(zero_sq)) {
    throw std::invalid_argument("Tolerance: zero_sq must be positive");
  }
  if (!(residual_rel > 0.0) || !std::isfinite(residual_rel)) {
    throw std::invalid_argument("Tolerance: residual_rel must be positive");
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  Matrix out(n, m);
  // i-k-j order keeps the inner loop contiguous in both b and out.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) shape_error("matmul_tn", a, b);
  const std::size_t n = a.cols(), inner = a.rows(), m = b.cols();
  Matrix out(n, m);
  for (std::size_t k = 0; k < inner; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out(i, j) += aki * b(k, j);
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error("add", a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error("subtract", a, b);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

Matrix scale(const Matrix& a, double s) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  }
  return out;
}

Matrix add_identity(const Matrix& a) {
  require_square("add_identity", a);
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) += 1.0;
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) shape_error("hstack", a, b);
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) shape_error("vstack", a, b);
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  }
  return out;
}

double frob_norm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

double col_sq_norm(const Matrix& a, std::size_t j) {
  if (j >= a.cols()) {
    std::ostringstream os;
    os << "col_sq_norm: column " << j << " out of range for " << a.shape_string();
    throw std::out_of_range(os.str());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, j) * a(i, j);
  return sum;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error("max_abs_diff", a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double cholesky_pivot_tol(const Matrix& spd) {
  double max_diag = 1.0;
  for (std::size_t i = 0; i < std::min(spd.rows(), spd.cols()); ++i) {
    max_diag = std::max(max_diag, spd(i, i));
  }
  return 1e-12 * max_diag;
}

std::optional<Matrix> try_cholesky(const Matrix& spd) {
  require_square("cholesky", spd);
  const std::size_t n = spd.rows();
  const double pivot_tol = cholesky_pivot_tol(spd);
  Matrix lower(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower(j, k) * lower(j, k);
    if (!(pivot > pivot_tol)) return std::nullopt;
    const double ljj = std::sqrt(pivot);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.5 * (spd(i, j) + spd(j, i));
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / ljj;
    }
  }
  return lower;
}

Matrix cholesky(const Matrix& spd) {
  auto lower = try_cholesky(spd);
  if (!lower) {
    throw NotPositiveDefinite("cholesky: matrix " + spd.shape_string() + " is not positive definite");
  }
  return std::move(*lower);
}

Matrix solve_lower(const Matrix& lower, const Matrix& rhs) {
  require_square("solve_lower", lower);
  if (lower.rows() != rhs.rows()) shape_error("solve_lower", lower, rhs);
  const std::size_t n = lower.rows(), m = rhs.cols();
  Matrix x = rhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = lower(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= lik * x(k, j);
    }
    const double d = lower(i, i);
    for (std::size_t j = 0; j < m; ++j) x(i, j) /= d;
  }
  return x;
}

Matrix solve_upper(const Matrix& upper, const Matrix& rhs) {
  require_square("solve_upper", upper);
  if (upper.rows() != rhs.rows()) shape_error("solve_upper", upper, rhs);
  const std::size_t n = upper.rows(), m = rhs.cols();
  Matrix x = rhs;
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double uik = upper(ii, k);
      if (uik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) x(ii, j) -= uik * x(k, j);
    }
    const double d = upper(ii, ii);
    for (std::size_t j = 0; j < m; ++j) x(ii, j) /= d;
  }
  return x;
}

Matrix solve_lower_transposed(const Matrix& lower, const Matrix& rhs) {
  require_square("solve_lower_transposed", lower);
  if (lower.rows() != rhs.rows()) shape_error("solve_lower_transposed", lower, rhs);
  const std::size_t n = lower.rows(), m = rhs.cols();
  Matrix x = rhs;
  // Lᵀ(i,k) = L(k,i)
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double lki = lower(k, ii);
      if (lki == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) x(ii, j) -= lki * x(k, j);
    }
    const double d = lower(ii, ii);
    for (std::size_t j = 0; j < m; ++j) x(ii, j) /= d;
  }
  return x;
}

Matrix solve_spd(const Matrix& spd, const Matrix& rhs) {
  if (spd.rows() != rhs.rows()) shape_error("solve_spd", spd, rhs);
  const Matrix lower = cholesky(spd);
  return solve_lower_transposed(lower, solve_lower(lower, rhs));
}

Matrix solve_general(const Matrix& a, const Matrix& rhs) {
  require_square("solve_general", a);
  if (a.rows() != rhs.rows()) shape_error("solve_general", a, rhs);
  const std::size_t n = a.rows(), m = rhs.cols();
  Matrix lu = a;
  Matrix x = rhs;
  const double tiny = 1e-14 * std::max(1.0, max_abs(a));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(lu(i, col)) > std::abs(lu(piv, col))) piv = i;
    }
    if (!(std::abs(lu(piv, col)) > tiny)) {
      throw std::runtime_error("solve_general: matrix " + a.shape_string() + " is singular");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(piv, j), x(col, j));
    }
    const double d = lu(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = lu(i, col) / d;
      if (f == 0.0) continue;
      lu(i, col) = f;
      for (std::size_t j = col + 1; j < n; ++j) lu(i, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(col, j);
    }
  }
  return solve_upper(lu, x);
}

}  // namespace pinvup
