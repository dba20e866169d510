#include <gtest/gtest.h>

#include "bowlab/numerics/linalg.hpp"
#include "bowlab/numerics/random.hpp"
#include "support/rational_rank.hpp"

using namespace bowlab::numerics;

namespace {

CMatrix from_ints(const std::vector<std::vector<std::int64_t>>& rows) {
  CMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(rows[i][j]);
  return m;
}

}  // namespace

TEST(Rank, IdentityAndZero) {
  Tolerances tol;
  EXPECT_EQ(rank(CMatrix::Identity(2, 2), tol), 2);
  EXPECT_EQ(rank(CMatrix::Zero(2, 2), tol), 0);
}

TEST(Rank, AllOnesMatchesRationalElimination) {
  std::vector<std::vector<std::int64_t>> m{{1, 1}, {1, 1}};
  EXPECT_EQ(rank(from_ints(m), Tolerances{}), testsupport::exact_rank(m));
  EXPECT_EQ(testsupport::exact_rank(m), 1);
}

TEST(Rank, SmallIntegerMatricesMatchRationalElimination) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int r = rng.uniform_int(1, 4), c = rng.uniform_int(1, 4);
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
    for (auto& row : m)
      for (auto& x : row) x = rng.uniform_int(-2, 2);
    // duplicate a row now and then to force deficiency
    if (r > 1 && trial % 3 == 0) m[r - 1] = m[0];
    EXPECT_EQ(rank(from_ints(m), Tolerances{}), testsupport::exact_rank(m)) << "trial " << trial;
  }
}

TEST(Kernel, IdentityHasTrivialKernel) {
  EXPECT_EQ(kernel_basis(CMatrix::Identity(2, 2), Tolerances{}).dim(), 0);
}

TEST(Kernel, RowVectorKernelIsSecondAxis) {
  CMatrix m(1, 2);
  m << 1, 0;
  Subspace k = kernel_basis(m, Tolerances{});
  ASSERT_EQ(k.dim(), 1);
  CMatrix e2(2, 1);
  e2 << 0, 1;
  EXPECT_TRUE(k.contains(e2, 1e-12));
}

TEST(Image, ColumnSpan) {
  CMatrix m(2, 1);
  m << 1, 0;
  Subspace im = image_basis(m, Tolerances{});
  ASSERT_EQ(im.dim(), 1);
  EXPECT_TRUE(im.contains(m, 1e-12));
}

TEST(Kernel, RankNullityOnLowRankProducts) {
  Rng rng(11);
  Tolerances tol;
  for (int trial = 0; trial < 100; ++trial) {
    Index rows = rng.uniform_int(1, 6), cols = rng.uniform_int(1, 6);
    Index r = rng.uniform_int(0, static_cast<int>(std::min(rows, cols)));
    CMatrix m = rng.matrix(rows, r) * rng.matrix(r, cols);
    Subspace k = kernel_basis(m, tol);
    EXPECT_EQ(k.dim() + rank(m, tol), cols);
    EXPECT_EQ(rank(m, tol), r);
    EXPECT_LT((m * k.basis()).norm(), 1e-9 * std::max(1.0, m.norm()));
    EXPECT_LT((k.basis().adjoint() * k.basis() - CMatrix::Identity(k.dim(), k.dim())).norm(), 1e-10);
  }
}

TEST(SubspaceOps, IntersectionAndSumDimensions) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    // u = span(common, x), w = span(common, y) in C^6
    Index c = rng.uniform_int(0, 2), a = rng.uniform_int(0, 2), b = rng.uniform_int(0, 2);
    CMatrix common = rng.matrix(6, c), x = rng.matrix(6, a), y = rng.matrix(6, b);
    CMatrix ub(6, c + a), wb(6, c + b);
    ub << common, x;
    wb << common, y;
    Subspace u = Subspace::span(ub, 1e-9), w = Subspace::span(wb, 1e-9);
    Subspace meet = intersect(u, w, 1e-9);
    Subspace join = sum(u, w, 1e-9);
    EXPECT_EQ(meet.dim(), c);
    EXPECT_EQ(join.dim(), c + a + b);
    if (c > 0) {
      EXPECT_TRUE(meet.contains(common, 1e-9));
    }
  }
}

TEST(SubspaceOps, PreimageOfImageContainsOriginal) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix op = rng.matrix(4, 4);
    if (trial % 2 == 0) op.col(0).setZero();
    Subspace s = Subspace::span(rng.matrix(4, rng.uniform_int(0, 3)), 1e-9);
    Subspace im = image(op, s, 1e-9, 0.0);
    Subspace back = preimage(op, im, 1e-9, 0.0);
    EXPECT_TRUE(back.contains(s, 1e-8));
    EXPECT_TRUE(im.contains(op * back.basis(), 1e-8));
  }
}

TEST(TolerancesTest, Validation) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  Tolerances bad;
  bad.rank_tol = 1.0;
  EXPECT_THROW(bad.validate(), bowlab::InvalidArgument);
  bad = Tolerances{};
  bad.fd_step = 0.0;
  EXPECT_THROW(bad.validate(), bowlab::InvalidArgument);
  bad = Tolerances{};
  bad.residual_tol = -1.0;
  EXPECT_THROW(bad.validate(), bowlab::InvalidArgument);
}

TEST(RequireFinite, RejectsNaN) {
  CMatrix m = CMatrix::Zero(2, 2);
  EXPECT_NO_THROW(require_finite(m, "m"));
  m(1, 0) = std::nan("");
  EXPECT_THROW(require_finite(m, "m"), bowlab::InvalidArgument);
}
