#include <gtest/gtest.h>

#include "nckey/matrix.hpp"
#include "oracles.hpp"

using namespace nckey;

namespace {

oracle::Mat to_oracle(const MatrixFq& m) {
  oracle::Mat out;
  for (const auto& row : m.to_nested()) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST(Field, RejectsNonPrimeOrOutOfRange) {
  EXPECT_THROW(FieldCtx(1), ContractViolation);
  EXPECT_THROW(FieldCtx(4), ContractViolation);
  EXPECT_THROW(FieldCtx(1ull << 31), ContractViolation);
  EXPECT_NO_THROW(FieldCtx(2147483647ull));
}

TEST(Field, InverseTimesValueIsOne) {
  FieldCtx f(101);
  for (Scalar a = 1; a < 101; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
}

TEST(Rref, Identity) {
  FieldCtx f(2);
  auto r = rref(MatrixFq::identity(f, 3));
  EXPECT_EQ(r.rref, MatrixFq::identity(f, 3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivot_cols, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, ZeroMatrix) {
  FieldCtx f(5);
  auto r = rref(MatrixFq(f, 2, 4));
  EXPECT_TRUE(r.rref.is_zero());
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.pivot_cols.empty());
}

TEST(Rref, DependentRowsOverF5) {
  FieldCtx f(5);
  auto r = rref(MatrixFq(f, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rref, MatrixFq(f, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivot_cols, (std::vector<std::size_t>{0}));
}

TEST(Rank, MatchesMinorsOracle) {
  for (std::uint64_t q : {2ull, 3ull, 101ull}) {
    FieldCtx f(q);
    Rng rng(q);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 5;
      auto m = random_matrix(rows, cols, f, rng);
      EXPECT_EQ(rank(m), oracle::rank_by_minors(to_oracle(m), static_cast<std::int64_t>(q)));
    }
  }
}

TEST(Rank, Random2x5OverF101) {
  FieldCtx f(101);
  Rng rng(2024);
  auto m = random_matrix(2, 5, f, rng);
  EXPECT_EQ(rank(m), oracle::rank_by_minors(to_oracle(m), 101));
}

TEST(MatMul, HandComputed) {
  EXPECT_EQ(mat_mul(MatrixFq(FieldCtx(5), {{2, 3}}), MatrixFq(FieldCtx(5), {{1}, {4}})), MatrixFq(FieldCtx(5), {{4}}));
  FieldCtx f2(2);
  EXPECT_EQ(mat_mul(MatrixFq(f2, {{1, 1}}), MatrixFq::identity(f2, 2)), MatrixFq(f2, {{1, 1}}));
}

TEST(MatMul, IdentityIsNeutral) {
  FieldCtx f(7);
  Rng rng(1);
  auto x = random_matrix(3, 4, f, rng);
  EXPECT_EQ(mat_mul(MatrixFq::identity(f, 3), x), x);
}

TEST(MatMul, ShapeMismatchThrows) {
  FieldCtx f(3);
  EXPECT_THROW(mat_mul(MatrixFq(f, 2, 3), MatrixFq(f, 2, 3)), ContractViolation);
}

TEST(RandomMatrix, ZeroRowsAndDeterminism) {
  FieldCtx f(3);
  Rng rng(4);
  EXPECT_EQ(random_matrix(0, 5, f, rng).rows(), 0u);
  Rng a(99), b(99);
  EXPECT_EQ(random_matrix(4, 4, f, a), random_matrix(4, 4, f, b));
}

TEST(RandomMatrix, BinaryEntryIsFair) {
  FieldCtx f(2);
  Rng rng(77);
  std::size_t ones = 0;
  const std::size_t draws = 10000;
  for (std::size_t i = 0; i < draws; ++i) ones += random_matrix(1, 1, f, rng)(0, 0);
  EXPECT_TRUE(oracle::within_5_sigma(ones, draws, 0.5)) << ones;
}

TEST(Transform, ReproducesRref) {
  FieldCtx f(11);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(4, 3, f, rng);
    auto rt = row_reduce_with_transform(m);
    EXPECT_EQ(mat_mul(rt.transform, m), rt.reduced.rref);
    auto k = left_kernel(m);
    EXPECT_EQ(k.rows(), m.rows() - rt.reduced.rank);
    EXPECT_TRUE(mat_mul(k, m).is_zero());
    EXPECT_EQ(rank(k), k.rows());
  }
}

TEST(SolveInRowspan, Cases) {
  FieldCtx f(13);
  Rng rng(8);
  auto basis = random_matrix(3, 6, f, rng);
  ASSERT_EQ(rank(basis), 3u);
  auto id = solve_in_rowspan(basis, basis);
  ASSERT_TRUE(id);
  EXPECT_EQ(*id, MatrixFq::identity(f, 3));
  auto zero = solve_in_rowspan(MatrixFq(f, 2, 6), basis);
  ASSERT_TRUE(zero);
  EXPECT_TRUE(zero->is_zero());

  auto coeffs = random_matrix(5, 3, f, rng);
  auto target = mat_mul(coeffs, basis);
  auto solved = solve_in_rowspan(target, basis);
  ASSERT_TRUE(solved);
  EXPECT_EQ(mat_mul(*solved, basis), target);

  MatrixFq outside = random_matrix(1, 6, f, rng);
  while (rank(vstack(basis, outside)) == 3) outside = random_matrix(1, 6, f, rng);
  EXPECT_FALSE(solve_in_rowspan(outside, basis));
}

TEST(Stacking, BlockDiagonalLayout) {
  FieldCtx f(5);
  std::vector<MatrixFq> blocks{MatrixFq(f, {{1, 2}}), MatrixFq(f, {{3}, {4}})};
  auto d = block_diag(blocks, f);
  EXPECT_EQ(d, MatrixFq(f, {{1, 2, 0}, {0, 0, 3}, {0, 0, 4}}));
  EXPECT_EQ(hstack(MatrixFq(f, {{1}}), MatrixFq(f, {{2, 3}})), MatrixFq(f, {{1, 2, 3}}));
  EXPECT_EQ(vstack(MatrixFq(f, 0, 2), MatrixFq(f, {{1, 1}})), MatrixFq(f, {{1, 1}}));
}
