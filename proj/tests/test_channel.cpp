#include <gtest/gtest.h>

#include <map>

#include "nckey/channel.hpp"
#include "oracles.hpp"

using namespace nckey;

namespace {

std::vector<MatrixFq> all_matrices(std::size_t rows, std::size_t cols, const FieldCtx& f) {
  std::vector<MatrixFq> out;
  for (const auto& v : oracle::all_vectors(rows * cols, static_cast<std::int64_t>(f.q()))) {
    out.emplace_back(f, rows, cols, std::vector<Scalar>(v.begin(), v.end()));
  }
  return out;
}

}  // namespace

TEST(SourceMatrix, IdentityBlock) {
  FieldCtx f(2);
  EXPECT_EQ(make_source_matrix(MatrixFq(f, 3, 2)), hstack(MatrixFq::identity(f, 3), MatrixFq(f, 3, 2)));
  EXPECT_EQ(make_source_matrix(MatrixFq(f, {{1}})), MatrixFq(f, {{1, 1}}));
  Rng rng(1);
  FieldCtx f7(7);
  for (int t = 0; t < 100; ++t) EXPECT_EQ(rank(make_source_matrix(random_matrix(3, 4, f7, rng))), 3u);
}

TEST(Broadcast, ShapesAndConsistency) {
  ChannelParams p;
  p.ctx = FieldCtx(5);
  p.ell = 6;
  p.n_A = 3;
  p.n = {2, 0, 4};
  p.n_E = 1;
  Rng rng(12);
  auto x_A = make_source_matrix(random_matrix(3, 3, p.ctx, rng));
  auto obs = broadcast_slot(x_A, p, rng);
  ASSERT_EQ(obs.receivers.size(), 3u);
  EXPECT_EQ(obs.receivers[1].received.rows(), 0u);
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_EQ(obs.receivers[r].transfer.rows(), p.n[r]);
    EXPECT_EQ(obs.receivers[r].received, mat_mul(obs.receivers[r].transfer, x_A));
  }
  EXPECT_EQ(obs.eve.received, mat_mul(obs.eve.transfer, x_A));

  auto zero = broadcast_slot(MatrixFq(p.ctx, 3, 6), p, rng);
  for (const auto& o : zero.receivers) EXPECT_TRUE(o.received.is_zero());
}

TEST(Broadcast, SingleBinaryPacketCopiedHalfTheTime) {
  ChannelParams p;
  p.ctx = FieldCtx(2);
  p.ell = 2;
  p.n_A = 1;
  p.n = {1};
  Rng rng(5);
  const auto x_A = make_source_matrix(MatrixFq(p.ctx, {{1}}));
  std::size_t copies = 0;
  const std::size_t slots = 10000;
  for (std::size_t i = 0; i < slots; ++i) copies += broadcast_slot(x_A, p, rng).receivers[0].received == x_A;
  EXPECT_TRUE(oracle::within_5_sigma(copies, slots, 0.5)) << copies;
}

TEST(TransitionProb, Examples) {
  FieldCtx f(2);
  const MatrixFq x_A(f, {{1, 0, 1}});
  EXPECT_EQ(matrix_transition_prob(MatrixFq(f, 0, 3), x_A), 1);
  EXPECT_EQ(matrix_transition_prob(MatrixFq(f, {{0, 1, 0}}), x_A), 0);
  EXPECT_EQ(matrix_transition_prob(MatrixFq(f, {{1, 0, 1}}), x_A), Rational(1, 2));
  EXPECT_EQ(matrix_transition_prob(MatrixFq(f, {{0, 0, 0}}), x_A), Rational(1, 2));

  const auto pi_A = span_of(x_A);
  EXPECT_EQ(subspace_transition_prob(Subspace::zero(f, 3), pi_A, 1), Rational(1, 2));
  EXPECT_EQ(subspace_transition_prob(pi_A, pi_A, 1), Rational(1, 2));
  EXPECT_EQ(subspace_transition_prob(span_of(MatrixFq(f, {{0, 1, 0}})), pi_A, 1), 0);
  EXPECT_EQ(subspace_transition_prob(Subspace::zero(f, 3), pi_A, 3), Rational(1, 8));
}

// Every law is compared against counting transfer matrices F with F x_A = x_r.
TEST(TransitionProb, ExhaustiveAgainstTransferCounting) {
  FieldCtx f(2);
  const std::size_t ell = 3, n_A = 2;
  for (const auto& x_A : all_matrices(n_A, ell, f)) {
    const auto pi_A = span_of(x_A);
    for (std::size_t n_r = 0; n_r <= 2; ++n_r) {
      std::map<std::vector<Scalar>, std::size_t> hits;
      const auto transfers = all_matrices(n_r, n_A, f);
      for (const auto& F : transfers) ++hits[mat_mul(F, x_A).entries()];

      Rational total = 0;
      std::map<std::vector<Scalar>, Rational> by_subspace;
      std::map<std::vector<Scalar>, Subspace> reps;
      for (const auto& x_r : all_matrices(n_r, ell, f)) {
        const auto p = matrix_transition_prob(x_r, x_A);
        const auto it = hits.find(x_r.entries());
        const Rational expected(it == hits.end() ? 0 : static_cast<std::int64_t>(it->second),
                                static_cast<std::int64_t>(transfers.size()));
        ASSERT_EQ(p, expected);
        total += p;
        const auto s = span_of(x_r);
        by_subspace[s.basis().entries()] += p;
        reps.emplace(s.basis().entries(), s);
      }
      EXPECT_EQ(total, 1);
      for (const auto& [key, mass] : by_subspace) {
        EXPECT_EQ(subspace_transition_prob(reps.at(key), pi_A, n_r), mass);
      }
    }
  }
}
