#include <gtest/gtest.h>

#include "nckey/bounds.hpp"
#include "nckey/key_agreement.hpp"
#include "nckey/lp.hpp"

using namespace nckey;

namespace {

ChannelParams make(std::size_t n_A, std::vector<std::size_t> n, std::size_t n_E) {
  ChannelParams p;
  p.ctx = FieldCtx(2);
  p.ell = n_A + 4;
  p.n_A = n_A;
  p.n = std::move(n);
  p.n_E = n_E;
  return p;
}

// Weak duality plus equal objectives proves optimality without trusting the solver.
void expect_dual_certificate(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                             const std::vector<Rational>& c, const lp::Solution& s) {
  ASSERT_EQ(s.status, lp::Status::optimal);
  Rational primal = 0, dual = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    EXPECT_GE(s.x[j], 0);
    primal += c[j] * s.x[j];
  }
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < c.size(); ++j) lhs += A[i][j] * s.x[j];
    EXPECT_LE(lhs, b[i]);
    EXPECT_GE(s.dual[i], 0);
    dual += b[i] * s.dual[i];
  }
  for (std::size_t j = 0; j < c.size(); ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < A.size(); ++i) col += A[i][j] * s.dual[i];
    EXPECT_GE(col, c[j]);
  }
  EXPECT_EQ(primal, s.value);
  EXPECT_EQ(dual, s.value);
}

}  // namespace

TEST(Lp, TextbookProblem) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36
  std::vector<std::vector<Rational>> A{{1, 0}, {0, 2}, {3, 2}};
  std::vector<Rational> b{4, 12, 18}, c{3, 5};
  auto s = lp::maximize(A, b, c);
  EXPECT_EQ(s.value, 36);
  EXPECT_EQ(s.x[0], 2);
  EXPECT_EQ(s.x[1], 6);
  expect_dual_certificate(A, b, c, s);
}

TEST(Lp, Unbounded) {
  std::vector<std::vector<Rational>> A{{1, -1}};
  std::vector<Rational> b{1}, c{1, 1};
  EXPECT_EQ(lp::maximize(A, b, c).status, lp::Status::unbounded);
}

TEST(Lp, RandomInstancesCarryDualCertificates) {
  Rng rng(17);
  std::uniform_int_distribution<int> coef(-3, 6), rhs(0, 9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 2 + t % 5, vars = 1 + t % 4;
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(vars));
    std::vector<Rational> b(rows), c(vars);
    for (auto& row : A)
      for (auto& v : row) v = coef(rng);
    for (auto& v : b) v = rhs(rng);
    for (auto& v : c) v = coef(rng);
    // a bounding row keeps most instances bounded
    A.push_back(std::vector<Rational>(vars, Rational(1)));
    b.push_back(10);
    auto s = lp::maximize(A, b, c);
    expect_dual_certificate(A, b, c, s);
  }
}

TEST(Lp, NegativeRhsRejected) {
  EXPECT_THROW(lp::maximize({{1}}, {-1}, {1}), ContractViolation);
}

TEST(ThetaAllocation, FloorAndMinCut) {
  ThetaAllocation t(2);
  t.set(1, Rational(1, 2));
  t.set(2, Rational(3, 4));
  t.set(3, Rational(5, 3));
  EXPECT_EQ(t.min_cut(), Rational(1, 2) + Rational(5, 3));
  auto hat = t.scaled_floor(4);
  EXPECT_EQ(hat.at(1), 2);
  EXPECT_EQ(hat.at(2), 3);
  EXPECT_EQ(hat.at(3), 6);
  EXPECT_TRUE(hat.is_integral());
  EXPECT_FALSE(t.is_integral());
  EXPECT_EQ(subset_label(5), "{1,3}");
}

TEST(Feasibility, ZeroAndTightSingletons) {
  FieldCtx f(3);
  Rng rng(4);
  SubspaceFamily U(2, f, 6);
  U.set(1, random_subspace(6, 2, f, rng));
  U.set(2, random_subspace(6, 1, f, rng));
  U.set(3, random_subspace(6, 2, f, rng));
  const auto eve = random_subspace(6, 3, f, rng);
  const auto cons = ThetaConstraints::from_subspaces(U, eve);
  EXPECT_TRUE(check_theta_feasible(ThetaAllocation(2), cons).feasible);

  for (SubsetMask J = 1; J <= 3; ++J) {
    const auto tight = sum(U.at(J), eve).dim() - eve.dim();
    ThetaAllocation t(2);
    t.set(J, Rational(static_cast<std::int64_t>(tight)));
    EXPECT_TRUE(check_theta_feasible(t, cons).feasible);
    t.set(J, Rational(static_cast<std::int64_t>(tight + 1)));
    auto v = check_theta_feasible(t, cons);
    EXPECT_FALSE(v.feasible);
    EXPECT_EQ(v.witness, std::vector<SubsetMask>{J});
  }

  ThetaAllocation negative(2);
  negative.set(2, -1);
  EXPECT_FALSE(check_theta_feasible(negative, cons).feasible);
}

TEST(Feasibility, SampledBeyondThreeTerminalsNeedsRng) {
  const auto cons = planned_constraints(make(8, {8, 8, 8, 8}, 1));
  ThetaAllocation t(4);
  t.set(full_mask(4), 1);
  EXPECT_THROW(check_theta_feasible(t, cons), ContractViolation);
  Rng rng(1);
  auto v = check_theta_feasible(t, cons, &rng, 256);
  EXPECT_TRUE(v.feasible);
  EXPECT_EQ(v.checked, 15u + 1u + 256u);
}

TEST(ThetaLp, SingleReceiverRecoversTightSingleton) {
  for (std::size_t n_A = 1; n_A <= 6; ++n_A)
    for (std::size_t n_B = 0; n_B <= n_A; ++n_B)
      for (std::size_t n_E = 0; n_E <= n_A; ++n_E) {
        const auto cons = planned_constraints(make(n_A, {n_B}, n_E));
        const auto sol = solve_theta_lp(cons);
        EXPECT_EQ(sol.value, Rational(static_cast<std::int64_t>(cons.rhs({1}))));
        EXPECT_EQ(sol.theta.at(1), sol.value);
      }
}

TEST(ThetaLp, MatchesThreeTerminalClosedForm) {
  for (std::size_t n_A = 1; n_A <= 8; ++n_A)
    for (std::size_t n_B = 0; n_B <= n_A; ++n_B)
      for (std::size_t n_E = 0; n_E <= n_A; ++n_E) {
        const auto p = make(n_A, {n_B, n_B}, n_E);
        EXPECT_EQ(solve_theta_lp(planned_constraints(p)).value, three_terminal_rate(p).coefficient)
            << n_A << " " << n_B << " " << n_E;
      }
}

TEST(ThetaLp, ZeroFamilyGivesZero) {
  const auto cons = ThetaConstraints::from_planned(3, std::vector<std::size_t>(8, 0), 5, 2);
  EXPECT_EQ(solve_theta_lp(cons).value, 0);
}

TEST(ThetaLp, OptimumIsFeasibleAndCertified) {
  Rng rng(8);
  for (const auto& n : std::vector<std::vector<std::size_t>>{{4, 4}, {5, 3}, {3, 4, 5}, {6, 6, 6}, {2, 5, 4}}) {
    for (std::size_t n_E = 0; n_E <= 3; ++n_E) {
      const auto cons = planned_constraints(make(7, n, n_E));
      const auto sol = solve_theta_lp(cons);
      ASSERT_TRUE(check_theta_feasible(sol.theta, cons).feasible);
      const std::size_t m = n.size();

      // Dual of max t s.t. t <= sum_{J∋r} θ_J, selection rows: weights y_r and z_S.
      Rational bound = 0, y_total = 0;
      for (std::size_t r = 0; r < m; ++r) {
        EXPECT_GE(sol.dual[r], 0);
        y_total += sol.dual[r];
      }
      EXPECT_GE(y_total, 1);
      for (SubsetMask J = 1; J <= full_mask(m); ++J) {
        Rational col = 0;
        for (std::size_t r = 0; r < m; ++r)
          if (contains_terminal(J, r)) col -= sol.dual[r];
        for (std::size_t s = 0; s < sol.selections.size(); ++s) {
          const auto& sel = sol.selections[s];
          if (std::find(sel.begin(), sel.end(), J) != sel.end()) col += sol.dual[m + s];
        }
        EXPECT_GE(col, 0);
      }
      for (std::size_t s = 0; s < sol.selections.size(); ++s) {
        EXPECT_GE(sol.dual[m + s], 0);
        bound += sol.dual[m + s] * static_cast<std::int64_t>(sol.selection_rhs[s]);
      }
      EXPECT_EQ(bound, sol.value);

      // Raising any single θ_J either breaks feasibility or leaves the objective unchanged.
      for (SubsetMask J = 1; J <= full_mask(m); ++J) {
        auto bumped = sol.theta;
        bumped.set(J, bumped.at(J) + Rational(1, 1000));
        EXPECT_TRUE(!check_theta_feasible(bumped, cons).feasible || bumped.min_cut() <= sol.value);
      }
    }
  }
}
