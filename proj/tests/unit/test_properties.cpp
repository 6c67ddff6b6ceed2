#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pinvup/block_update.hpp"
#include "pinvup/harness/verify.hpp"
#include "sweep.hpp"

using namespace pinvup;
using testing::frob;
using testing::frob_diff;
using testing::naive_matmul;
using testing::naive_transpose;
using testing::random_matrix;

namespace {

constexpr std::size_t kTrials = 50;

std::size_t dim(harness::Xoshiro256& rng, std::size_t max) { return 1 + rng.below(max); }

InvCholFactor build_factor(const Matrix& cols) {
  InvCholFactor f = InvCholFactor::empty(cols.rows());
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    ExtendResult r = extend(f, cols.col(j), {});
    REQUIRE_FALSE(r.zero_signal());
    f = std::move(*r.factor);
  }
  return f;
}

// A tall random matrix with independent columns (m ≥ n + extra).
Matrix tall(harness::Xoshiro256& rng, std::size_t extra = 0) {
  const std::size_t n = dim(rng, 8);
  return random_matrix(rng, n + extra + dim(rng, 8), n);
}

}  // namespace

TEST_CASE("matrix algebra properties") {
  harness::Xoshiro256 rng(101);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t a = dim(rng, 12), b = dim(rng, 12), c = dim(rng, 12), d = dim(rng, 12);
    const Matrix x = random_matrix(rng, a, b);
    const Matrix y = random_matrix(rng, b, c);
    const Matrix z = random_matrix(rng, c, d);

    const double scale = 1.0 + frob(x) * frob(y) * frob(z);
    CHECK(frob_diff(matmul(matmul(x, y), z), matmul(x, matmul(y, z))) <= 1e-10 * scale);
    CHECK(frob_diff(matmul(x, y), naive_matmul(x, y)) <= 1e-12 * (1.0 + frob(x) * frob(y)));
    CHECK(transpose(transpose(x)) == x);
    CHECK(transpose(x) == naive_transpose(x));
    CHECK(frob_diff(matmul_tn(x, x), naive_matmul(naive_transpose(x), x)) <= 1e-12 * (1.0 + frob(x) * frob(x)));
  }
}

TEST_CASE("cholesky reconstruction and SPD solves") {
  harness::Xoshiro256 rng(202);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const Matrix c = tall(rng);
    const Matrix ctc = matmul_tn(c, c);
    const Matrix l = cholesky(ctc);
    for (std::size_t i = 0; i < l.rows(); ++i) {
      CHECK(l(i, i) > 0.0);
      for (std::size_t j = i + 1; j < l.cols(); ++j) CHECK(l(i, j) == 0.0);
    }
    CHECK(frob_diff(naive_matmul(l, naive_transpose(l)), ctc) <= 1e-10 * (1.0 + frob(ctc)));
  }

  for (std::size_t t = 0; t < kTrials; ++t) {
    // Singular values of M spread over [1, 1e3], so MᵀM has condition number up to 1e6.
    const std::size_t n = 2 + rng.below(10);
    std::vector<double> s(n);
    for (auto& v : s) v = std::pow(10.0, 3.0 * rng.uniform01());
    s[0] = 1.0;
    s[n - 1] = 1e3;
    const Matrix m = testing::with_singular_values(rng, n, s);
    const Matrix spd = naive_matmul(naive_transpose(m), m);
    const Matrix x = random_matrix(rng, n, 2);
    const Matrix rhs = naive_matmul(spd, x);
    CHECK(frob_diff(solve_spd(spd, rhs), x) <= 1e-8 * frob(x));
  }
}

TEST_CASE("single-column recursion properties") {
  harness::Xoshiro256 rng(303);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const Matrix a = tall(rng, 1);
    const PinvState s = PinvState::from_matrix(a);
    const double bound = 1e-9 * (1.0 + frob(a));

    {  // fresh column
      const Matrix h = random_matrix(rng, a.rows(), 1);
      const PinvState next = greville_append_column(s, h, {});
      CHECK(next.residuals().max() <= bound * 2);
      // The new bottom row b satisfies bᵀ·c = 1 for c = h − A·A⁺·h.
      const Matrix c = subtract(h, matmul(projector(s), h));
      const Matrix b = next.a_plus().row_range(a.cols(), 1);
      CHECK(std::abs(naive_matmul(b, c)(0, 0) - 1.0) <= 1e-12 / std::min(1.0, frob(c) * frob(c)));
    }

    {  // column in the range leaves the projector unchanged
      const Matrix h = matmul(a, random_matrix(rng, a.cols(), 1));
      const PinvState next = greville_append_column(s, h, {});
      CHECK(next.residuals().max() <= bound * (1.0 + frob(h)));
      CHECK(frob_diff(projector(next), projector(s)) <= bound);
      CHECK(frob(subtract(h, matmul(projector(s), h))) <= bound * (1.0 + frob(h)));
    }
  }
}

TEST_CASE("pseudoinverse of the transpose is the transposed pseudoinverse") {
  harness::Xoshiro256 rng(404);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t m = dim(rng, 10), n = dim(rng, 10), r = dim(rng, std::min(m, n));
    const Matrix a = naive_matmul(random_matrix(rng, m, r), random_matrix(rng, r, n));
    const Matrix x = greville_full_pinv(a);
    const Matrix y = greville_full_pinv(transpose(a));
    CHECK(frob_diff(transpose(y), x) <= 1e-9 * (1.0 + frob(x)));
  }
}

TEST_CASE("inverse Cholesky factor properties") {
  harness::Xoshiro256 rng(505);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const Matrix c = tall(rng);
    const std::size_t k = c.cols();
    const InvCholFactor f = build_factor(c);
    const Matrix& g = f.g();
    REQUIRE(g.rows() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(g(i, i) > 0.0);
      for (std::size_t j = 0; j < i; ++j) CHECK(g(i, j) == 0.0);
    }

    // G·Gᵀ·CᵀC = I.
    const Matrix ggt = naive_matmul(g, naive_transpose(g));
    const Matrix product = naive_matmul(ggt, naive_matmul(naive_transpose(c), c));
    CHECK(frob_diff(product, Matrix::identity(k)) <= 1e-9 * static_cast<double>(k));

    // G is the inverse transpose of the library Cholesky factor of CᵀC.
    const Matrix l = cholesky(matmul_tn(c, c));
    CHECK(frob_diff(naive_matmul(naive_transpose(g), l), Matrix::identity(k)) <= 1e-8);

    // The factor route agrees with the pseudoinverse of C.
    CHECK(frob_diff(b_from_g(f), greville_full_pinv(c)) <= 1e-8 * (1.0 + frob(ggt)));
  }
}

TEST_CASE("projected residual properties") {
  harness::Xoshiro256 rng(606);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const Matrix c = tall(rng, 1);
    const InvCholFactor f = build_factor(c);
    const Matrix ck = random_matrix(rng, c.rows(), 1);

    const Matrix fast = c_tilde(f, ck);
    const Matrix definitional = testing::least_squares_residual(c, ck);
    CHECK(frob_diff(fast, definitional) <= 1e-8 * (1.0 + frob(ck)));
    CHECK(frob(naive_matmul(naive_transpose(c), fast)) <= 1e-8 * (1.0 + frob(c) * frob(ck)));

    // Extending with ck: η from the expanded form, and a column in span(C) is the zero signal.
    const ExtendResult e = extend(f, ck, {});
    REQUIRE_FALSE(e.zero_signal());
    CHECK(std::abs(e.eta - testing::eta_long_form(f.g(), c, ck)) <= 1e-8 * e.eta);
    CHECK(extend(f, matmul(c, random_matrix(rng, c.cols(), 1)), {}).zero_signal());
  }
}

TEST_CASE("branch selection on constructed blocks") {
  harness::Xoshiro256 rng(707);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t n = dim(rng, 6), p = dim(rng, 6);

    {  // independent block is one full-rank pass
      const Matrix a = random_matrix(rng, n + p + dim(rng, 4), n);
      const UpdateResult r = append_columns(PinvState::from_matrix(a), random_matrix(rng, a.rows(), p));
      REQUIRE(r.report.branches.size() == 1);
      CHECK(r.report.branches[0] == DispatchBranch{BranchTag::FullRank_Cpinv, p, 0});
    }

    {  // block in the range is one dependent pass
      const std::size_t m = dim(rng, 12);
      const Matrix a = random_matrix(rng, m, n);
      const Matrix h = matmul(a, random_matrix(rng, n, p));
      const UpdateResult r = append_columns(PinvState::from_matrix(a), h);
      REQUIRE(r.report.branches.size() == 1);
      const BranchTag expected = [&] {
        switch (select_c_zero_formula(m, n, p)) {
          case CZeroFormula::DtD: return BranchTag::CZero_DtD;
          case CZeroFormula::DtH: return BranchTag::CZero_DtH;
          case CZeroFormula::HDt: return BranchTag::CZero_HDt;
        }
        return BranchTag::Mixed_Restart;
      }();
      CHECK(r.report.branches[0] == DispatchBranch{expected, 0, p});
    }

    {  // dependent formulas agree
      const std::size_t m = dim(rng, 12);
      const PinvState s = PinvState::from_matrix(random_matrix(rng, m, n));
      const Matrix h = matmul(s.a(), random_matrix(rng, n, p));
      const Matrix d = compute_d_c(s, h).d;
      const Matrix dtd = b_for_c_zero_using(s, h, d, CZeroFormula::DtD);
      const double scale = 1.0 + frob(dtd);
      CHECK(frob_diff(b_for_c_zero_using(s, h, d, CZeroFormula::DtH), dtd) <= 1e-9 * scale);
      CHECK(frob_diff(b_for_c_zero_using(s, h, d, CZeroFormula::HDt), dtd) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("block updates over the sweep corpus") {
  testing::SweepOptions opt;
  for (std::size_t id = 0; id < 200; ++id) {
    const harness::Instance inst = testing::sweep_instance(opt, id);
    CAPTURE(id);
    const PinvState base = PinvState::from_matrix(inst.a);
    const auto append = inst.rows ? append_rows : append_columns;

    const UpdateResult ic = append(base, inst.block, {}, Backend::InverseCholesky, Verification::On);
    const UpdateResult lc = append(base, inst.block, {}, Backend::LibraryCholesky, Verification::On);
    const double bound = Tolerance{}.accept_bound(frob_norm(ic.state.a()));

    // Same matrix regardless of backend.
    CHECK(ic.state.a() == (inst.rows ? vstack(inst.a, inst.block) : hstack(inst.a, inst.block)));
    CHECK(max_abs_diff(ic.state.a_plus(), lc.state.a_plus()) <= 1e-8);

    // Moore-Penrose conditions and the single-column oracle.
    CHECK(ic.report.mp.max() <= bound);
    const Matrix oracle = harness::greville_oracle(base, inst.block, inst.rows, {});
    CHECK(max_abs_diff(ic.state.a_plus(), oracle) <= bound);

    // Every pass makes progress and the passes account for every appended column.
    for (const auto* rep : {&ic.report, &lc.report}) {
      CHECK(rep->consistent());
      CHECK(rep->columns_processed == (inst.rows ? inst.block.rows() : inst.block.cols()));
      std::size_t total = 0;
      for (const auto& b : rep->branches) {
        CHECK(b.k_reached + b.delta > 0);
        total += b.k_reached + b.delta;
      }
      CHECK(total == rep->columns_processed);
    }

    // Row updates are column updates of the transpose.
    if (inst.rows) {
      const UpdateResult dual = append_columns(PinvState::from_matrix(transpose(inst.a)), transpose(inst.block));
      CHECK(max_abs_diff(ic.state.a_plus(), transpose(dual.state.a_plus())) <= 1e-10 * (1.0 + max_abs(oracle)));
    }
  }
}
