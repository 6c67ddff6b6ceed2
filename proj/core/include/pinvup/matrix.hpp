#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinvup {

/// Dense row-major matrix of doubles.
///
/// Every public constructor rejects non-finite entries, so a Matrix built
/// from user data is always NaN/Inf free. Element writes through
/// `operator()` are unchecked and intended for construction code.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix column(std::initializer_list<double> values);
  static Matrix column(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row_span(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  /// Copy of column j as an rows×1 matrix.
  Matrix col(std::size_t j) const;
  /// Columns [first, first + count).
  Matrix col_range(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  Matrix row_range(std::size_t first, std::size_t count) const;

  std::string shape_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Thrown by cholesky/solve_spd when a pivot falls at or below the pivot tolerance.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix matmul(const Matrix& a, const Matrix& b);
/// aᵀ·b without materialising the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
Matrix add_identity(const Matrix& a);

/// [a | b]; either side may have zero columns.
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a ; b]; either side may have zero rows.
Matrix vstack(const Matrix& a, const Matrix& b);

double frob_norm(const Matrix& a);
double col_sq_norm(const Matrix& a, std::size_t j);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Pivot threshold used by cholesky: 1e-12 · max(1, max diagonal entry).
double cholesky_pivot_tol(const Matrix& spd);

/// Lower-triangular Ω with ΩΩᵀ = (spd + spdᵀ)/2, or nullopt when a pivot is
/// not above cholesky_pivot_tol(spd). Input must be square.
std::optional<Matrix> try_cholesky(const Matrix& spd);
/// As try_cholesky, but throws NotPositiveDefinite on failure.
Matrix cholesky(const Matrix& spd);

/// Solves L·X = rhs for lower-triangular L.
Matrix solve_lower(const Matrix& lower, const Matrix& rhs);
/// Solves U·X = rhs for upper-triangular U.
Matrix solve_upper(const Matrix& upper, const Matrix& rhs);
/// Solves Lᵀ·X = rhs for lower-triangular L.
Matrix solve_lower_transposed(const Matrix& lower, const Matrix& rhs);

/// Solves spd·X = rhs through cholesky and two triangular solves.
Matrix solve_spd(const Matrix& spd, const Matrix& rhs);
/// Solves a·X = rhs by LU with partial pivoting. Throws std::runtime_error
/// when a is numerically singular.
Matrix solve_general(const Matrix& a, const Matrix& rhs);

}  // namespace pinvup
