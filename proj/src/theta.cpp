#include "nckey/theta.hpp"

#include <algorithm>
#include <random>

#include "nckey/lp.hpp"

namespace nckey {

namespace {

void require_m(std::size_t m) {
  if (m < 1 || m > kMaxTerminals) {
    throw ContractViolation("number of legitimate terminals must be in [1, 16], got " + std::to_string(m));
  }
}

void require_mask(SubsetMask J, std::size_t m) {
  if (J == 0 || J > full_mask(m)) {
    throw ContractViolation("subset mask " + std::to_string(J) + " is not a nonempty subset of [1:" +
                            std::to_string(m) + "]");
  }
}

}  // namespace

std::string subset_label(SubsetMask J) {
  std::string out = "{";
  bool first = true;
  for (std::size_t r = 0; r < kMaxTerminals; ++r) {
    if (!contains_terminal(J, r)) continue;
    out += (first ? "" : ",") + std::to_string(r + 1);
    first = false;
  }
  return out + "}";
}

SubspaceFamily::SubspaceFamily(std::size_t m, const FieldCtx& ctx, std::size_t ambient_dim)
    : m_(m), ambient_(ambient_dim) {
  require_m(m);
  members_.assign(std::size_t{1} << m, Subspace::zero(ctx, ambient_dim));
}

const Subspace& SubspaceFamily::at(SubsetMask J) const {
  require_mask(J, m_);
  return members_[J];
}

void SubspaceFamily::set(SubsetMask J, Subspace s) {
  require_mask(J, m_);
  if (s.ambient_dim() != ambient_ || !(s.ctx() == members_.front().ctx())) {
    throw ContractViolation("SubspaceFamily: member does not share the family's ambient space");
  }
  members_[J] = std::move(s);
}

ThetaAllocation::ThetaAllocation(std::size_t m) : m_(m) {
  require_m(m);
  values_.assign(std::size_t{1} << m, Rational(0));
}

const Rational& ThetaAllocation::at(SubsetMask J) const {
  require_mask(J, m_);
  return values_[J];
}

void ThetaAllocation::set(SubsetMask J, Rational value) {
  require_mask(J, m_);
  values_[J] = std::move(value);
}

Rational ThetaAllocation::min_cut() const {
  std::optional<Rational> best;
  for (std::size_t r = 0; r < m_; ++r) {
    Rational s = 0;
    for (SubsetMask J = 1; J <= full_mask(m_); ++J)
      if (contains_terminal(J, r)) s += values_[J];
    if (!best || s < *best) best = s;
  }
  return *best;
}

ThetaAllocation ThetaAllocation::scaled_floor(std::size_t N) const {
  ThetaAllocation out(m_);
  for (SubsetMask J = 1; J <= full_mask(m_); ++J) {
    out.values_[J] = floor_rational(values_[J] * static_cast<std::int64_t>(N));
  }
  return out;
}

bool ThetaAllocation::is_integral() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rational& v) { return denominator(v) == 1; });
}

ThetaConstraints::ThetaConstraints(std::size_t m, Rhs rhs) : m_(m), rhs_(std::move(rhs)) { require_m(m); }

std::vector<SubsetMask> ThetaConstraints::members(Selection s) const {
  std::vector<SubsetMask> out;
  for (std::size_t k = 0; k < family_size(); ++k)
    if ((s >> k) & 1u) out.push_back(static_cast<SubsetMask>(k + 1));
  return out;
}

ThetaConstraints ThetaConstraints::from_subspaces(const SubspaceFamily& U, const Subspace& eve) {
  if (eve.ambient_dim() != U.ambient_dim()) {
    throw ContractViolation("Eve's subspace lives in a different ambient space than the U family");
  }
  return ThetaConstraints(U.m(), [U, eve](const std::vector<SubsetMask>& sel) {
    MatrixFq acc = eve.basis();
    for (auto J : sel) acc = vstack(acc, U.at(J).basis());
    return rank(acc) - eve.dim();
  });
}

ThetaConstraints ThetaConstraints::from_subspaces_eve_dim(const SubspaceFamily& U, std::size_t eve_dim) {
  const std::size_t amb = U.ambient_dim();
  const std::size_t e = std::min(eve_dim, amb);
  return ThetaConstraints(U.m(), [U, e, amb](const std::vector<SubsetMask>& sel) {
    MatrixFq acc(U.ctx(), 0, amb);
    for (auto J : sel) acc = vstack(acc, U.at(J).basis());
    return std::min(rank(acc) + e, amb) - e;
  });
}

ThetaConstraints ThetaConstraints::from_planned(std::size_t m, const std::vector<std::size_t>& dims,
                                                std::size_t n_A, std::size_t n_E) {
  if (dims.size() != (std::size_t{1} << m)) {
    throw ContractViolation("planned dimensions must have one entry per subset mask");
  }
  const std::size_t e = std::min(n_E, n_A);
  return ThetaConstraints(m, [dims, n_A, e](const std::vector<SubsetMask>& sel) {
    std::size_t total = 0;
    for (auto J : sel) total += dims[J];
    return std::min(total + e, n_A) - e;
  });
}

std::string FeasibilityVerdict::describe() const {
  if (feasible) return "feasible (" + std::to_string(checked) + " selections checked)";
  std::string sel;
  for (auto J : witness) sel += (sel.empty() ? "" : "+") + ("theta" + subset_label(J));
  return "infeasible: " + sel + " = " + to_string(lhs) + " exceeds " + to_string(rhs);
}

FeasibilityVerdict check_theta_feasible(const ThetaAllocation& theta, const ThetaConstraints& constraints,
                                        Rng* rng, std::size_t samples) {
  if (theta.m() != constraints.m()) throw ContractViolation("theta and constraints disagree on m");
  const std::size_t F = constraints.family_size();
  FeasibilityVerdict v;
  for (SubsetMask J = 1; J <= F; ++J) {
    if (theta.at(J) < 0) {
      v.feasible = false;
      v.witness = {J};
      v.lhs = theta.at(J);
      v.rhs = 0;
      return v;
    }
  }
  auto check = [&](ThetaConstraints::Selection s) {
    ++v.checked;
    auto sel = constraints.members(s);
    Rational lhs = 0;
    for (auto J : sel) lhs += theta.at(J);
    const Rational rhs(constraints.rhs(sel));
    if (lhs > rhs) {
      v.feasible = false;
      v.witness = std::move(sel);
      v.lhs = lhs;
      v.rhs = rhs;
      return false;
    }
    return true;
  };

  if (constraints.m() <= 3) {
    for (ThetaConstraints::Selection s = 1; s < (ThetaConstraints::Selection{1} << F); ++s) {
      if (!check(s)) return v;
    }
    return v;
  }

  for (std::size_t k = 0; k < F; ++k) {
    if (!check(ThetaConstraints::Selection{1} << k)) return v;
  }
  const ThetaConstraints::Selection all =
      F >= 64 ? ~ThetaConstraints::Selection{0} : (ThetaConstraints::Selection{1} << F) - 1;
  if (!check(all)) return v;
  if (rng == nullptr) throw ContractViolation("sampled feasibility check (m > 3) needs an rng");
  std::uniform_int_distribution<ThetaConstraints::Selection> pick(1, all);
  for (std::size_t i = 0; i < samples; ++i) {
    if (!check(pick(*rng))) return v;
  }
  return v;
}

ThetaLpSolution solve_theta_lp(const ThetaConstraints& constraints) {
  const std::size_t m = constraints.m();
  if (m > 3) throw ContractViolation("exact theta LP is limited to m <= 3");
  const std::size_t F = constraints.family_size();
  const std::size_t vars = F + 1;  // θ_1..θ_F, then the epigraph variable t

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Rational> row(vars, Rational(0));
    row[F] = 1;
    for (SubsetMask J = 1; J <= F; ++J)
      if (contains_terminal(J, r)) row[J - 1] = -1;
    A.push_back(std::move(row));
    b.emplace_back(0);
  }
  ThetaLpSolution out{ThetaAllocation(m), Rational(0), {}, {}, {}};
  for (ThetaConstraints::Selection s = 1; s < (ThetaConstraints::Selection{1} << F); ++s) {
    auto sel = constraints.members(s);
    std::vector<Rational> row(vars, Rational(0));
    for (auto J : sel) row[J - 1] = 1;
    const std::size_t rhs = constraints.rhs(sel);
    A.push_back(std::move(row));
    b.emplace_back(rhs);
    out.selections.push_back(std::move(sel));
    out.selection_rhs.push_back(rhs);
  }
  std::vector<Rational> c(vars, Rational(0));
  c[F] = 1;

  auto sol = lp::maximize(A, b, c);
  if (sol.status != lp::Status::optimal) {
    throw std::logic_error("theta LP reported unbounded; selection constraints bound every θ_J");
  }
  for (SubsetMask J = 1; J <= F; ++J) out.theta.set(J, sol.x[J - 1]);
  out.value = out.theta.min_cut();
  out.dual = std::move(sol.dual);
  return out;
}

}  // namespace nckey
