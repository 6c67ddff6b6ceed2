#include "pinvup/block_update.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace pinvup {

namespace {

constexpr std::array<std::string_view, 5> kBranchNames = {
    "CZero_DtD", "CZero_DtH", "CZero_HDt", "FullRank_Cpinv", "Mixed_Restart"};

BranchTag tag_for(CZeroFormula f) {
  switch (f) {
    case CZeroFormula::DtD: return BranchTag::CZero_DtD;
    case CZeroFormula::DtH: return BranchTag::CZero_DtH;
    case CZeroFormula::HDt: return BranchTag::CZero_HDt;
  }
  return BranchTag::Mixed_Restart;
}

BranchTag classify(std::size_t remaining, std::size_t k, std::size_t delta, CZeroFormula formula) {
  if (k == remaining) return BranchTag::FullRank_Cpinv;
  if (k == 0 && delta == remaining) return tag_for(formula);
  return BranchTag::Mixed_Restart;
}

// Column-form dependent-block kernel. d is N×p, dt = D̃ is p×m, h is m×p.
Matrix column_kernel(const Matrix& d, const Matrix& dt, const Matrix& h, CZeroFormula formula) {
  switch (formula) {
    case CZeroFormula::DtD:
      return solve_spd(add_identity(matmul_tn(d, d)), dt);
    case CZeroFormula::DtH:
      return solve_general(add_identity(matmul(dt, h)), dt);
    case CZeroFormula::HDt:
      // X = D̃·M⁻¹  ⇔  Mᵀ·Xᵀ = D̃ᵀ
      return transpose(solve_general(transpose(add_identity(matmul(h, dt))), transpose(dt)));
  }
  throw std::logic_error("column_kernel: unknown formula");
}

// Row-form kernel. d is N×q (N = rows of A), dt_t = D̃ᵀ = A⁺·D is n×q, ax is q×n.
Matrix row_kernel(const Matrix& d, const Matrix& dt_t, const Matrix& ax, CZeroFormula formula) {
  switch (formula) {
    case CZeroFormula::DtD:
      // D̃ᵀ·(I + DᵀD)⁻¹, the inner matrix is symmetric
      return transpose(solve_spd(add_identity(matmul_tn(d, d)), transpose(dt_t)));
    case CZeroFormula::DtH:
      // D̃ᵀ·(I + Aₓ·D̃ᵀ)⁻¹
      return transpose(solve_general(transpose(add_identity(matmul(ax, dt_t))), transpose(dt_t)));
    case CZeroFormula::HDt:
      // (I + D̃ᵀ·Aₓ)⁻¹·D̃ᵀ
      return solve_general(add_identity(matmul(dt_t, ax)), dt_t);
  }
  throw std::logic_error("row_kernel: unknown formula");
}

// Pseudoinverse of full-column-rank C via the library Cholesky route, or
// nullopt when chol(CᵀC) does not exist. The k-th pivot of chol(CᵀC) is
// |c̃ₖ|², so it is held to the same zero test as the scan.
std::optional<Matrix> cholesky_cpinv(const Matrix& c, const std::vector<double>& source_sq, const Tolerance& tol) {
  auto lower = try_cholesky(matmul_tn(c, c));
  if (!lower) return std::nullopt;
  for (std::size_t k = 0; k < lower->rows(); ++k) {
    const double pivot = (*lower)(k, k);
    if (tol.is_zero(pivot * pivot, source_sq[k])) return std::nullopt;
  }
  return solve_lower_transposed(*lower, solve_lower(*lower, transpose(c)));
}

struct Scan {
  InvCholFactor factor;
  std::size_t k = 0;
  bool hit_zero = false;
};

// Grows the inverse-Cholesky factor over the columns of c until a residual
// vanishes or the columns run out.
Scan scan_columns(const Matrix& c, const std::vector<double>& source_sq, const Tolerance& tol) {
  Scan scan{InvCholFactor::empty(c.rows())};
  for (std::size_t j = 0; j < c.cols(); ++j) {
    ExtendResult r = extend(scan.factor, c.col(j), tol, source_sq[j]);
    if (r.zero_signal()) {
      scan.hit_zero = true;
      break;
    }
    scan.factor = std::move(*r.factor);
    ++scan.k;
  }
  return scan;
}

std::size_t count_zero_run(const Matrix& c, const std::vector<double>& source_sq, const Tolerance& tol) {
  std::size_t delta = 1;
  while (delta < c.cols() && tol.is_zero(col_sq_norm(c, delta), source_sq[delta])) ++delta;
  return delta;
}

bool all_zero(const Matrix& c, const std::vector<double>& source_sq, const Tolerance& tol) {
  for (std::size_t j = 0; j < c.cols(); ++j) {
    if (!tol.is_zero(col_sq_norm(c, j), source_sq[j])) return false;
  }
  return true;
}

std::vector<double> column_sq_norms(const Matrix& m) {
  std::vector<double> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = col_sq_norm(m, j);
  return out;
}

std::vector<double> row_sq_norms(const Matrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (double v : m.row_span(i)) out[i] += v * v;
  }
  return out;
}

void finish(UpdateResult& result, std::chrono::steady_clock::time_point start, Verification verification) {
  result.report.elapsed =
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  if (verification == Verification::On) result.report.mp = result.state.residuals();
}

}  // namespace

std::string_view to_string(BranchTag tag) noexcept { return kBranchNames[static_cast<std::size_t>(tag)]; }

std::optional<BranchTag> branch_tag_from_string(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kBranchNames.size(); ++i) {
    if (kBranchNames[i] == name) return static_cast<BranchTag>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CZeroFormula formula) noexcept { return to_string(tag_for(formula)); }

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::InverseCholesky ? "invchol" : "chol";
}

bool BlockUpdateReport::consistent() const noexcept {
  std::size_t total = 0;
  for (const auto& b : branches) {
    if (b.k_reached + b.delta == 0) return false;
    total += b.k_reached + b.delta;
  }
  return total == columns_processed;
}

DcPair compute_d_c(const PinvState& state, const Matrix& h_block) {
  if (h_block.rows() != state.rows()) {
    std::ostringstream os;
    os << "compute_d_c: block " << h_block.shape_string() << " does not fit matrix "
       << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  Matrix d = matmul(state.a_plus(), h_block);
  Matrix c = subtract(h_block, matmul(state.a(), d));
  return {std::move(d), std::move(c)};
}

Matrix d_tilde(const PinvState& state, const Matrix& d) {
  if (d.rows() != state.a_plus().rows()) {
    std::ostringstream os;
    os << "d_tilde: D " << d.shape_string() << " does not fit pseudoinverse "
       << state.a_plus().shape_string();
    throw std::invalid_argument(os.str());
  }
  return matmul_tn(d, state.a_plus());
}

CZeroFormula select_c_zero_formula(std::size_t m, std::size_t n, std::size_t p) noexcept {
  if (m >= std::max(n, p)) return CZeroFormula::DtD;
  if (n >= m && m >= p) return CZeroFormula::DtH;
  return CZeroFormula::HDt;
}

Matrix b_for_c_zero_using(const PinvState& state, const Matrix& h_block, const Matrix& d,
                          CZeroFormula formula) {
  if (h_block.rows() != state.rows() || d.rows() != state.cols() || d.cols() != h_block.cols()) {
    std::ostringstream os;
    os << "b_for_c_zero: H " << h_block.shape_string() << " and D " << d.shape_string()
       << " do not fit matrix " << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  return column_kernel(d, d_tilde(state, d), h_block, formula);
}

Matrix b_for_c_zero(const PinvState& state, const Matrix& h_block, const Matrix& d) {
  return b_for_c_zero_using(state, h_block, d,
                            select_c_zero_formula(state.rows(), state.cols(), h_block.cols()));
}

Matrix b_rows_for_c_zero_using(const PinvState& state, const Matrix& ax_block, const Matrix& d_t,
                               CZeroFormula formula) {
  if (ax_block.cols() != state.cols() || d_t.cols() != state.rows() || d_t.rows() != ax_block.rows()) {
    std::ostringstream os;
    os << "b_rows_for_c_zero: Ax " << ax_block.shape_string() << " and Dt " << d_t.shape_string()
       << " do not fit matrix " << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  const Matrix d = transpose(d_t);
  return row_kernel(d, matmul(state.a_plus(), d), ax_block, formula);
}

UpdateResult append_columns(const PinvState& state, const Matrix& h_block, const Tolerance& tol,
                            Backend backend, Verification verification) {
  if (h_block.rows() != state.rows() || h_block.cols() == 0) {
    std::ostringstream os;
    os << "append_columns: block " << h_block.shape_string() << " cannot extend matrix "
       << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  tol.validate();
  const auto start = std::chrono::steady_clock::now();

  const std::size_t m = state.rows();
  const std::size_t p = h_block.cols();
  const std::vector<double> h_sq = column_sq_norms(h_block);
  Matrix a = state.a();
  Matrix a_plus = state.a_plus();
  BlockUpdateReport report;

  std::size_t i = 0;
  while (i < p) {
    const std::size_t remaining = p - i;
    const Matrix h_rest = h_block.col_range(i, remaining);
    const std::vector<double> src_sq(h_sq.begin() + i, h_sq.end());
    const Matrix d = matmul(a_plus, h_rest);
    const Matrix c = subtract(h_rest, matmul(a, d));

    if (backend == Backend::LibraryCholesky && !all_zero(c, src_sq, tol)) {
      if (auto bt = cholesky_cpinv(c, src_sq, tol)) {
        a_plus = vstack(subtract(a_plus, matmul(d, *bt)), *bt);
        a = hstack(a, h_rest);
        i += remaining;
        report.branches.push_back({BranchTag::FullRank_Cpinv, remaining, 0});
        break;
      }
    }

    Scan scan = scan_columns(c, src_sq, tol);
    const std::size_t k = scan.k;
    if (k >= 1) {
      const Matrix bt = b_from_g(scan.factor);
      a_plus = vstack(subtract(a_plus, matmul(d.col_range(0, k), bt)), bt);
      a = hstack(a, h_rest.col_range(0, k));
      i += k;
    }

    std::size_t delta = 0;
    CZeroFormula formula = CZeroFormula::DtD;
    if (scan.hit_zero) {
      // After a full-rank prefix only the offending column is known to be
      // dependent; with no prefix the whole leading run of zero C columns is.
      delta = k == 0 ? count_zero_run(c, src_sq, tol) : 1;
      const Matrix h_delta = h_block.col_range(i, delta);
      const Matrix d_delta = k == 0 ? d.col_range(0, delta) : matmul(a_plus, h_delta);
      const Matrix dt = matmul_tn(d_delta, a_plus);
      formula = select_c_zero_formula(m, a.cols(), delta);
      const Matrix bt = column_kernel(d_delta, dt, h_delta, formula);
      a_plus = vstack(subtract(a_plus, matmul(d_delta, bt)), bt);
      a = hstack(a, h_delta);
      i += delta;
    }
    report.branches.push_back({classify(remaining, k, delta, formula), k, delta});
  }

  report.columns_processed = i;
  UpdateResult result{PinvState(std::move(a), std::move(a_plus)), std::move(report)};
  finish(result, start, verification);
  return result;
}

UpdateResult append_rows(const PinvState& state, const Matrix& ax_block, const Tolerance& tol,
                         Backend backend, Verification verification) {
  if (ax_block.cols() != state.cols() || ax_block.rows() == 0) {
    std::ostringstream os;
    os << "append_rows: block " << ax_block.shape_string() << " cannot extend matrix "
       << state.a().shape_string();
    throw std::invalid_argument(os.str());
  }
  tol.validate();
  const auto start = std::chrono::steady_clock::now();

  const std::size_t n = state.cols();
  const std::size_t q = ax_block.rows();
  const std::vector<double> x_sq = row_sq_norms(ax_block);
  Matrix a = state.a();
  Matrix a_plus = state.a_plus();
  BlockUpdateReport report;

  std::size_t i = 0;
  while (i < q) {
    const std::size_t remaining = q - i;
    const Matrix ax_rest = ax_block.row_range(i, remaining);
    const std::vector<double> src_sq(x_sq.begin() + i, x_sq.end());
    const Matrix d_t = matmul(ax_rest, a_plus);                        // Dᵀ = Aₓ·A⁺
    const Matrix c = transpose(subtract(ax_rest, matmul(d_t, a)));     // C = Aₓᵀ − Aᵀ·D

    if (backend == Backend::LibraryCholesky && !all_zero(c, src_sq, tol)) {
      if (auto bt = cholesky_cpinv(c, src_sq, tol)) {
        const Matrix b = transpose(*bt);
        a_plus = hstack(subtract(a_plus, matmul(b, d_t)), b);
        a = vstack(a, ax_rest);
        i += remaining;
        report.branches.push_back({BranchTag::FullRank_Cpinv, remaining, 0});
        break;
      }
    }

    Scan scan = scan_columns(c, src_sq, tol);
    const std::size_t k = scan.k;
    if (k >= 1) {
      const Matrix b = transpose(b_from_g(scan.factor));  // B = C·G·Gᵀ
      a_plus = hstack(subtract(a_plus, matmul(b, d_t.row_range(0, k))), b);
      a = vstack(a, ax_rest.row_range(0, k));
      i += k;
    }

    std::size_t delta = 0;
    CZeroFormula formula = CZeroFormula::DtD;
    if (scan.hit_zero) {
      delta = k == 0 ? count_zero_run(c, src_sq, tol) : 1;
      const Matrix ax_delta = ax_block.row_range(i, delta);
      const Matrix dd_t = k == 0 ? d_t.row_range(0, delta) : matmul(ax_delta, a_plus);
      const Matrix d = transpose(dd_t);
      formula = select_c_zero_formula(n, a.rows(), delta);
      const Matrix b = row_kernel(d, matmul(a_plus, d), ax_delta, formula);
      a_plus = hstack(subtract(a_plus, matmul(b, dd_t)), b);
      a = vstack(a, ax_delta);
      i += delta;
    }
    report.branches.push_back({classify(remaining, k, delta, formula), k, delta});
  }

  report.columns_processed = i;
  UpdateResult result{PinvState(std::move(a), std::move(a_plus)), std::move(report)};
  finish(result, start, verification);
  return result;
}

}  // namespace pinvup
