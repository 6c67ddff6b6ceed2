#include <doctest.h>

#include "oracles.hpp"
#include "pinvup/greville.hpp"
#include "pinvup/invchol.hpp"

using namespace pinvup;

namespace {

InvCholFactor build(const Matrix& cols) {
  InvCholFactor f = InvCholFactor::empty(cols.rows());
  for (std::size_t j = 0; j < cols.cols(); ++j) {
    ExtendResult r = extend(f, cols.col(j), {});
    REQUIRE_FALSE(r.zero_signal());
    f = std::move(*r.factor);
  }
  return f;
}

}  // namespace

TEST_CASE("init_g1") {
  const ExtendResult a = init_g1(Matrix::column({3, 4}), {});
  REQUIRE_FALSE(a.zero_signal());
  CHECK(a.factor->g() == Matrix::from_rows({{0.2}}));
  CHECK(a.factor->cols() == Matrix::column({3, 4}));
  CHECK(a.eta == doctest::Approx(0.2));

  const ExtendResult b = init_g1(Matrix::column({1, 0, 0}), {});
  CHECK(b.factor->g() == Matrix::from_rows({{1}}));

  const ExtendResult z = init_g1(Matrix::column({0, 0}), {});
  CHECK(z.zero_signal());
  CHECK(z.k_reached == 0);

  CHECK_THROWS_AS(init_g1(Matrix(0, 1), {}), std::invalid_argument);
  CHECK_THROWS_AS(init_g1(Matrix(2, 2), {}), std::invalid_argument);
}

TEST_CASE("c_tilde") {
  const InvCholFactor e1 = build(Matrix::column({1, 0, 0}));
  CHECK(c_tilde(e1, Matrix::column({0, 1, 0})) == Matrix::column({0, 1, 0}));
  CHECK(max_abs(c_tilde(e1, Matrix::column({2, 0, 0}))) == 0.0);

  const InvCholFactor f = build(Matrix::column({1, 1, 0}));
  const Matrix ck = Matrix::column({1, 0, 0});
  const Matrix expected = testing::least_squares_residual(Matrix::column({1, 1, 0}), ck);
  CHECK(max_abs_diff(expected, Matrix::column({0.5, -0.5, 0})) < 1e-15);
  CHECK(max_abs_diff(c_tilde(f, ck), expected) < 1e-15);

  CHECK(c_tilde(InvCholFactor::empty(3), ck) == ck);
  CHECK_THROWS_AS(c_tilde(f, Matrix::column({1, 0})), std::invalid_argument);
}

TEST_CASE("extend") {
  const InvCholFactor e1 = build(Matrix::column({1, 0}));

  const ExtendResult r = extend(e1, Matrix::column({0, 1}), {});
  REQUIRE_FALSE(r.zero_signal());
  CHECK(r.factor->g() == Matrix::identity(2));
  CHECK(r.k_reached == 2);

  const ExtendResult z = extend(e1, Matrix::column({1, 0}), {});
  CHECK(z.zero_signal());
  CHECK(z.k_reached == 1);
  CHECK(max_abs(z.c_tilde) == 0.0);

  const InvCholFactor f = build(Matrix::column({1, 1}));
  const ExtendResult s = extend(f, Matrix::column({1, 0}), {});
  REQUIRE_FALSE(s.zero_signal());
  const Matrix& g = s.factor->g();
  CHECK(g(1, 0) == 0.0);
  CHECK(g(0, 0) > 0.0);
  CHECK(g(1, 1) > 0.0);
  const Matrix ggt = testing::naive_matmul(g, testing::naive_transpose(g));
  const Matrix ctc_inv = testing::adjugate_inverse_2x2(Matrix::from_rows({{2, 1}, {1, 1}}));
  CHECK(max_abs_diff(ggt, ctc_inv) < 1e-12);

  CHECK_THROWS_AS(extend(f, Matrix::column({1, 0, 0}), {}), std::invalid_argument);
}

TEST_CASE("extend with a relative threshold") {
  const InvCholFactor e1 = build(Matrix::column({1, 0}));
  const Tolerance rel{1e-10, 1e-8, true};
  // |c̃|² = 1e-12 is zero next to a reference norm of 1 but not next to 1e-4.
  CHECK(extend(e1, Matrix::column({1, 1e-6}), rel).zero_signal());
  CHECK_FALSE(extend(e1, Matrix::column({1, 1e-6}), rel, 1e-4).zero_signal());
}

TEST_CASE("b_from_g") {
  CHECK(b_from_g(build(Matrix::column({1, 0, 0}))) == Matrix::from_rows({{1, 0, 0}}));
  const Matrix e12 = Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
  CHECK(b_from_g(build(e12)) == transpose(e12));

  harness::Xoshiro256 rng(21);
  const Matrix c = testing::random_matrix(rng, 6, 3);
  CHECK(mp_residuals(c, b_from_g(build(c))).max() <= 1e-9);

  CHECK_THROWS_AS(b_from_g(InvCholFactor::empty(3)), std::invalid_argument);
}
