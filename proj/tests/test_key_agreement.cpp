#include <gtest/gtest.h>

#include "nckey/bounds.hpp"
#include "nckey/key_agreement.hpp"

using namespace nckey;

namespace {

ChannelParams make(std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E, std::uint64_t q = 101) {
  ChannelParams p;
  p.ctx = FieldCtx(q);
  p.ell = n_A + 2;
  p.n_A = n_A;
  p.n = std::move(n);
  p.n_E = n_E;
  return p;
}

std::vector<Subspace> received_spaces(const ChannelParams& p, Rng& rng, Subspace& eve) {
  std::vector<Subspace> out;
  for (auto n_i : p.n) out.push_back(span_of(random_matrix(n_i, p.n_A, p.ctx, rng)));
  eve = span_of(random_matrix(p.n_E, p.n_A, p.ctx, rng));
  return out;
}

}  // namespace

TEST(BuildU, Examples) {
  FieldCtx f(5);
  Rng rng(3);
  const auto pi_B = random_subspace(4, 2, f, rng);
  auto one = build_U_family({pi_B}, Subspace::zero(f, 4), ComplementMode::deterministic);
  EXPECT_EQ(one.at(1), pi_B);

  MatrixFq b(f, {{1, 0, 0, 0}, {0, 1, 0, 0}}), c(f, {{0, 0, 1, 0}});
  auto two = build_U_family({span_of(b), span_of(c)}, Subspace::zero(f, 4), ComplementMode::deterministic);
  EXPECT_EQ(two.at(3).dim(), 0u);
  EXPECT_EQ(two.at(1), span_of(b));
}

TEST(BuildU, DefiningPropertiesOnRandomInstances) {
  Rng rng(10);
  for (std::uint64_t q : {2ull, 3ull, 7ull}) {
    for (int t = 0; t < 40; ++t) {
      const auto p = make(5, {3, 4, 2}, t % 4, q);
      Subspace eve = Subspace::zero(p.ctx, 5);
      const auto received = received_spaces(p, rng, eve);
      for (auto mode : {ComplementMode::deterministic, ComplementMode::random}) {
        const auto U = build_U_family(received, eve, mode, &rng);
        for (SubsetMask J = 1; J <= full_mask(3); ++J) {
          Subspace pi_J = Subspace::full(p.ctx, 5);
          for (std::size_t i = 0; i < 3; ++i)
            if (contains_terminal(J, i)) pi_J = intersect(pi_J, received[i]);
          Subspace overlap = intersect(eve, pi_J);
          for (std::size_t i = 0; i < 3; ++i)
            if (!contains_terminal(J, i)) overlap = sum(overlap, intersect(received[i], pi_J));
          EXPECT_TRUE(U.at(J).is_subspace_of(pi_J));
          EXPECT_EQ(intersect(U.at(J), overlap).dim(), 0u);
          EXPECT_EQ(U.at(J).dim(), pi_J.dim() - overlap.dim());
        }
      }
    }
  }
}

TEST(BuildU, MatchesGenericPositionPredictionAtQ101) {
  const auto p = make(6, {3, 3}, 2);
  const std::size_t n = 6;
  const std::vector<std::size_t> bc{3, 3}, be{3, 2}, bce{0, 2};
  const auto pi_BC = whp_dims(bc, n).intersection_dim;
  const auto pi_BE = whp_dims(be, n).intersection_dim;
  const auto u_B = 3 - std::min<std::size_t>(3, pi_BC + pi_BE);
  const std::vector<std::size_t> bce_dims{pi_BC, 2};
  const auto u_BC = pi_BC - whp_dims(bce_dims, n).intersection_dim;

  Rng rng(2025);
  std::size_t hits = 0;
  for (int t = 0; t < 1000; ++t) {
    Subspace eve = Subspace::zero(p.ctx, 6);
    const auto received = received_spaces(p, rng, eve);
    const auto U = build_U_family(received, eve, ComplementMode::deterministic);
    hits += U.at(1).dim() == u_B && U.at(2).dim() == u_B && U.at(3).dim() == u_BC;
  }
  EXPECT_GE(hits, 950u);
}

TEST(PlanDimensions, Examples) {
  EXPECT_EQ(plan_dimensions(make(4, {2}, 1)).u[1], 2u);
  for (std::size_t n_E = 0; n_E <= 4; ++n_E) {
    const auto plan = plan_dimensions(make(4, {3}, n_E));
    EXPECT_EQ(plan.u[1], 3u - std::min<std::size_t>(3, n_E > 1 ? n_E - 1 : 0));
  }
  const auto zero_eve = plan_dimensions(make(6, {5, 5, 4}, 0));
  EXPECT_EQ(zero_eve.u[7], zero_eve.intersection[7]);
}

TEST(PlanDimensions, SymmetricPairReproducesClosedForms) {
  for (std::size_t n_A = 1; n_A <= 12; ++n_A)
    for (std::size_t n_B = 0; n_B <= n_A; ++n_B)
      for (std::size_t n_E = 0; n_E <= n_A; ++n_E) {
        const auto p = make(n_A, {n_B, n_B}, n_E, 2);
        const auto plan = plan_dimensions(p);
        const auto b = three_terminal_breakdown(p);
        EXPECT_EQ(plan.u[1], b.dim_U_B);
        EXPECT_EQ(plan.u[2], b.dim_U_B);
        EXPECT_EQ(plan.u[3], b.dim_U_BC);
      }
}

TEST(Extract, ZeroAllocationAndFullSingleReceiver) {
  FieldCtx f(11);
  Rng rng(1);
  SubspaceFamily U(1, f, 5);
  U.set(1, random_subspace(5, 3, f, rng));
  auto none = extract_secure_bases(U, ThetaAllocation(1), Subspace::zero(f, 5), rng);
  ASSERT_TRUE(none.ok);
  EXPECT_EQ(none.bases[1].rows(), 0u);

  ThetaAllocation all(1);
  all.set(1, 3);
  auto full = extract_secure_bases(U, all, Subspace::zero(f, 5), rng);
  ASSERT_TRUE(full.ok);
  EXPECT_EQ(span_of(full.bases[1]), U.at(1));
}

TEST(Extract, RefusesInfeasibleAllocation) {
  FieldCtx f(11);
  Rng rng(2);
  SubspaceFamily U(1, f, 5);
  U.set(1, random_subspace(5, 2, f, rng));
  ThetaAllocation too_much(1);
  too_much.set(1, 3);
  auto out = extract_secure_bases(U, too_much, std::size_t{0}, rng);
  EXPECT_FALSE(out.ok);
  ASSERT_TRUE(out.refusal);
  EXPECT_EQ(out.refusal->witness, std::vector<SubsetMask>{1});
  ThetaAllocation fractional(1);
  fractional.set(1, Rational(1, 2));
  EXPECT_THROW(extract_secure_bases(U, fractional, std::size_t{0}, rng), ContractViolation);
}

TEST(Extract, KnownEveIsExactAndUnknownEveIsGeneric) {
  const auto p = make(6, {4, 4}, 2);
  const auto plan = plan_dimensions(p);
  const auto sol = solve_theta_lp(planned_constraints(p));
  ASSERT_TRUE(sol.theta.is_integral());
  Rng rng(77);
  std::size_t generic_ok = 0, trials = 0;
  for (int t = 0; t < 1000; ++t) {
    Subspace eve = Subspace::zero(p.ctx, 6);
    const auto received = received_spaces(p, rng, eve);
    SubspaceFamily U(2, p.ctx, 6);
    bool usable = true;
    for (SubsetMask J = 1; J <= 3; ++J) {
      Subspace pi_J = Subspace::full(p.ctx, 6);
      for (std::size_t i = 0; i < 2; ++i)
        if (contains_terminal(J, i)) pi_J = intersect(pi_J, received[i]);
      if (pi_J.dim() < plan.u[J]) {
        usable = false;
        break;
      }
      U.set(J, random_subspace_of(pi_J, plan.u[J], rng));
    }
    if (!usable) continue;
    ++trials;

    auto known = extract_secure_bases(U, sol.theta, eve, rng);
    if (known.ok) {
      const auto all = known.stacked(p.ctx, 6);
      EXPECT_EQ(rank(vstack(all, eve.basis())), rank(all) + eve.dim());
      for (SubsetMask J = 1; J <= 3; ++J) EXPECT_TRUE(span_of(known.bases[J]).is_subspace_of(U.at(J)));
    }

    auto blind = extract_secure_bases(U, sol.theta, std::size_t{2}, rng);
    ASSERT_TRUE(blind.ok);
    generic_ok += certify_zero_leakage(blind.stacked(p.ctx, 6), eve.basis()).certified;
  }
  EXPECT_GE(trials, 950u);
  EXPECT_GE(generic_ok, trials * 95 / 100);
}

TEST(Certificate, Examples) {
  FieldCtx f(5);
  Rng rng(9);
  const auto keys = random_matrix(2, 6, f, rng);
  EXPECT_TRUE(certify_zero_leakage(keys, MatrixFq(f, 0, 6)).certified);
  const auto x_E = random_matrix(2, 6, f, rng);
  EXPECT_FALSE(certify_zero_leakage(x_E.select_rows(std::vector<std::size_t>{1}), x_E).certified);
}

// Every key coefficient set over every Eve transfer matrix at q=2, n_A=2, ell=4, n_E=1.
TEST(Certificate, ExhaustiveSecrecyMatchesRankTest) {
  FieldCtx f(2);
  const std::size_t n_A = 2, ell = 4;
  const auto x_A = make_source_matrix(MatrixFq(f, n_A, ell - n_A));
  std::size_t certified_sets = 0;
  for (Scalar e = 0; e < 4; ++e) {
    const MatrixFq F_E(f, 1, 2, {e & 1, e >> 1});
    for (std::size_t k = 1; k <= 2; ++k) {
      for (Scalar bits = 0; bits < (Scalar{1} << (2 * k)); ++bits) {
        std::vector<Scalar> entries;
        for (std::size_t i = 0; i < 2 * k; ++i) entries.push_back((bits >> i) & 1);
        const MatrixFq c(f, k, 2, entries);
        const bool certified = certify_zero_leakage(mat_mul(c, x_A), mat_mul(F_E, x_A)).certified;
        const auto ex = exhaustive_leakage(c, F_E, ell);
        EXPECT_EQ(ex.messages, 16u);
        if (certified) {
          ++certified_sets;
          EXPECT_TRUE(ex.independent);
          EXPECT_EQ(ex.mutual_information_nats, 0.0);
        } else {
          EXPECT_FALSE(ex.independent);
          EXPECT_GT(ex.mutual_information_nats, 0.0);
        }
      }
    }
  }
  EXPECT_GT(certified_sets, 0u);
}

TEST(Certificate, ExhaustiveModeRefusesLargeInstances) {
  FieldCtx f(2);
  EXPECT_THROW(exhaustive_leakage(MatrixFq(f, 1, 4), MatrixFq(f, 1, 4), 9), ContractViolation);
}
