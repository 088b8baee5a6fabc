#include "hyperpoly/linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "hyperpoly/rng.hpp"

using namespace hyperpoly;
using F = GaussianRational;

namespace {

F fs(int re, int im = 0) { return make_scalar<F>(re, im); }

TEST(Vec2, OuterAndPair) {
  // Dual-basis cases.
  EXPECT_EQ(outer(Vec2<F>{fs(1), fs(0)}, Cov2<F>{fs(0), fs(1)}),
            (Mat2<F>{fs(0), fs(1), fs(0), fs(0)}));
  EXPECT_EQ(outer(Vec2<F>{fs(0), fs(0)}, Cov2<F>{fs(5), fs(7)}), (Mat2<F>{}));
  EXPECT_EQ(outer(Vec2<F>{fs(1), fs(1)}, Cov2<F>{fs(1), fs(-1)}),
            (Mat2<F>{fs(1), fs(-1), fs(1), fs(-1)}));
  EXPECT_EQ(pair(Cov2<F>{fs(0), fs(1)}, Vec2<F>{fs(1), fs(0)}), fs(0));
  EXPECT_EQ(pair(Cov2<F>{fs(0), fs(1)}, Vec2<F>{fs(0), fs(1)}), fs(1));
  EXPECT_EQ(pair(Cov2<F>{fs(1), fs(-1)}, Vec2<F>{fs(1), fs(1)}), fs(0));
}

TEST(Vec2, TraceOfOuterIsPair) {
  Rng rng(3);
  for (int round = 0; round < 100; ++round) {
    const Vec2<F> v{fs(static_cast<int>(rng.int_range(-9, 9))),
                    fs(static_cast<int>(rng.int_range(-9, 9)))};
    const Cov2<F> w{fs(static_cast<int>(rng.int_range(-9, 9))),
                    fs(static_cast<int>(rng.int_range(-9, 9)))};
    EXPECT_EQ(outer(v, w).trace(), pair(w, v));
  }
}

TEST(Mat2, InverseAndAdjugate) {
  const Mat2<F> m{fs(2), fs(1), fs(1), fs(1)};
  EXPECT_EQ(m * m.inverse(), Mat2<F>::identity());
  EXPECT_EQ(m * m.adjugate(), m.det() * Mat2<F>::identity());
  EXPECT_THROW((Mat2<F>{fs(1), fs(2), fs(2), fs(4)}).inverse(),
               std::domain_error);
}

TEST(DenseMatrix, RankExamples) {
  EXPECT_EQ(rank(DenseMatrix<F>(3, 3)), 0u);
  EXPECT_EQ(rank(DenseMatrix<F>::identity(4)), 4u);
  DenseMatrix<F> m(2, 2);
  m(0, 0) = fs(1);
  m(0, 1) = fs(2);
  m(1, 0) = fs(2);
  m(1, 1) = fs(4);
  EXPECT_EQ(rank(m), 1u);
}

TEST(DenseMatrix, NullspaceExamples) {
  EXPECT_TRUE(nullspace(DenseMatrix<F>::identity(2)).empty());
  EXPECT_EQ(nullspace(DenseMatrix<F>(1, 3)).size(), 3u);
  DenseMatrix<F> m(1, 3);
  m(0, 0) = fs(1);
  m(0, 1) = fs(1);
  const auto basis = nullspace(m);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& b : basis) EXPECT_EQ(b[0] + b[1], fs(0));
}

TEST(DenseMatrix, SolveExamples) {
  const std::vector<F> b{fs(3), fs(-2)};
  const auto x = solve_linear(DenseMatrix<F>::identity(2), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);

  DenseMatrix<F> wide(1, 2);
  wide(0, 0) = fs(1);
  wide(0, 1) = fs(1);
  const auto under = solve_linear(wide, {fs(2)});
  ASSERT_TRUE(under);
  EXPECT_EQ((*under)[0] + (*under)[1], fs(2));

  DenseMatrix<F> tall(2, 1);
  tall(0, 0) = fs(1);
  tall(1, 0) = fs(1);
  EXPECT_FALSE(solve_linear(tall, {fs(0), fs(1)}));
}

template <class G>
DenseMatrix<G> random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix<G> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = make_scalar<G>(rng.int_range(-4, 4), rng.int_range(-4, 4));
  return m;
}

TEST(DenseMatrix, RankPlusNullityIsColumns) {
  Rng rng(17);
  for (int round = 0; round < 60; ++round) {
    const auto rows = static_cast<std::size_t>(rng.int_range(1, 6));
    const auto cols = static_cast<std::size_t>(rng.int_range(1, 6));
    const auto m = random_matrix<F>(rows, cols, rng);
    EXPECT_EQ(rank(m) + nullspace(m).size(), cols);
    // Kernel vectors actually lie in the kernel.
    for (const auto& b : nullspace(m))
      for (const F& e : mat_vec(m, b)) EXPECT_EQ(e, fs(0));
  }
}

TEST(DenseMatrix, RowOrderIndependence) {
  Rng rng(29);
  for (int round = 0; round < 30; ++round) {
    const auto m = random_matrix<F>(4, 5, rng);
    DenseMatrix<F> shuffled = m;
    std::vector<std::size_t> perm(4);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = 3; i > 0; --i)
      std::swap(perm[i],
                perm[static_cast<std::size_t>(rng.int_range(0, static_cast<std::int64_t>(i)))]);
    DenseMatrix<F> permuted(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) permuted(i, j) = m(perm[i], j);

    EXPECT_EQ(rank(m), rank(permuted));
    // Same kernel as a subspace: cross membership through solve_linear
    // against the span of the other basis.
    const auto ka = nullspace(m);
    const auto kb = nullspace(permuted);
    ASSERT_EQ(ka.size(), kb.size());
    if (ka.empty()) continue;
    DenseMatrix<F> span(5, ka.size());
    for (std::size_t j = 0; j < ka.size(); ++j)
      for (std::size_t i = 0; i < 5; ++i) span(i, j) = ka[j][i];
    for (const auto& b : kb) EXPECT_TRUE(solve_linear(span, b).has_value());
    // RREF-derived kernels are canonical, so they agree exactly.
    EXPECT_EQ(ka, kb);
  }
}

TEST(DenseMatrix, ApproxAgreesWithExactOnSmallIntegers) {
  set_tolerance(1e-9);
  Rng rng_exact(71), rng_approx(71);
  for (int round = 0; round < 60; ++round) {
    const auto rows = static_cast<std::size_t>(rng_exact.int_range(1, 6));
    const auto cols = static_cast<std::size_t>(rng_exact.int_range(1, 6));
    rng_approx.int_range(1, 6);
    rng_approx.int_range(1, 6);
    const auto exact = random_matrix<F>(rows, cols, rng_exact);
    const auto approx = random_matrix<Complex>(rows, cols, rng_approx);
    EXPECT_EQ(rank(exact), rank(approx));
    // Approx kernel vectors satisfy the tolerance-scaled residual bound.
    for (const auto& b : nullspace(approx)) {
      double bnorm = 0.0, rnorm = 0.0;
      for (const auto& e : b) bnorm = std::max(bnorm, magnitude(e));
      for (const auto& e : mat_vec(approx, b))
        rnorm = std::max(rnorm, magnitude(e));
      EXPECT_LE(rnorm, tolerance() * approx.max_magnitude() * bnorm);
    }
  }
}

}  // namespace
