#include "nckey/key_agreement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nckey {

namespace {

std::int64_t pos(std::int64_t v) { return v > 0 ? v : 0; }

Subspace intersection_of(const std::vector<Subspace>& received, SubsetMask J) {
  std::optional<Subspace> acc;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (!contains_terminal(J, i)) continue;
    acc = acc ? intersect(*acc, received[i]) : received[i];
  }
  return *acc;
}

}  // namespace

SubspaceFamily build_U_family(const std::vector<Subspace>& received, const Subspace& eve,
                              ComplementMode mode, Rng* rng) {
  const std::size_t m = received.size();
  SubspaceFamily family(m, eve.ctx(), eve.ambient_dim());
  for (SubsetMask J = 1; J <= full_mask(m); ++J) {
    const Subspace pi_J = intersection_of(received, J);
    Subspace overlap = intersect(eve, pi_J);
    for (std::size_t i = 0; i < m; ++i) {
      if (!contains_terminal(J, i)) overlap = sum(overlap, intersect(received[i], pi_J));
    }
    family.set(J, subtract_s(pi_J, overlap, mode, rng));
  }
  return family;
}

PlannedDimensions plan_dimensions(const ChannelParams& params) {
  params.validate();
  const std::size_t m = params.m();
  const auto n_A = static_cast<std::int64_t>(params.n_A);
  const auto e = std::min<std::int64_t>(params.n_E, n_A);

  PlannedDimensions plan{m, std::vector<std::size_t>(std::size_t{1} << m, 0),
                         std::vector<std::size_t>(std::size_t{1} << m, 0)};
  for (SubsetMask J = 1; J <= full_mask(m); ++J) {
    std::int64_t total = 0, k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!contains_terminal(J, i)) continue;
      total += std::min<std::int64_t>(params.n[i], n_A);
      ++k;
    }
    plan.intersection[J] = static_cast<std::size_t>(pos(total - (k - 1) * n_A));
  }
  for (SubsetMask J = 1; J <= full_mask(m); ++J) {
    const auto p = static_cast<std::int64_t>(plan.intersection[J]);
    // Overlaps of Π_J with every outsider and with Eve behave like independent uniform
    // subspaces of Π_J, so their sum has dimension min(total, dim Π_J).
    std::int64_t overlaps = pos(p + e - n_A);
    for (std::size_t i = 0; i < m; ++i) {
      if (!contains_terminal(J, i)) overlaps += static_cast<std::int64_t>(plan.intersection[J | (1u << i)]);
    }
    plan.u[J] = static_cast<std::size_t>(p - std::min(overlaps, p));
  }
  return plan;
}

ThetaConstraints planned_constraints(const ChannelParams& params) {
  const auto plan = plan_dimensions(params);
  return ThetaConstraints::from_planned(params.m(), plan.u, params.n_A, params.n_E);
}

MatrixFq SecureBases::stacked(const FieldCtx& ctx, std::size_t ambient_dim) const {
  MatrixFq acc(ctx, 0, ambient_dim);
  for (const auto& b : bases) {
    if (b.rows() > 0) acc = vstack(acc, b);
  }
  return acc;
}

SecureBases extract_secure_bases(const SubspaceFamily& U, const ThetaAllocation& theta_hat,
                                 const EveKnowledge& eve, Rng& rng, std::size_t max_attempts) {
  if (theta_hat.m() != U.m()) throw ContractViolation("extract_secure_bases: theta and family disagree on m");
  if (!theta_hat.is_integral()) throw ContractViolation("extract_secure_bases: allocation must be integral");

  const Subspace* eve_space = std::get_if<Subspace>(&eve);
  const auto constraints = eve_space ? ThetaConstraints::from_subspaces(U, *eve_space)
                                     : ThetaConstraints::from_subspaces_eve_dim(U, std::get<std::size_t>(eve));
  SecureBases out;
  auto verdict = check_theta_feasible(theta_hat, constraints, &rng);
  if (!verdict.feasible) {
    out.refusal = std::move(verdict);
    return out;
  }

  const auto& f = U.ctx();
  const std::size_t amb = U.ambient_dim();
  std::size_t total = 0;
  for (SubsetMask J = 1; J <= full_mask(U.m()); ++J) total += static_cast<std::size_t>(numerator(theta_hat.at(J)));

  out.bases.assign(std::size_t{1} << U.m(), MatrixFq(f, 0, amb));
  while (out.attempts < max_attempts) {
    ++out.attempts;
    for (SubsetMask J = 1; J <= full_mask(U.m()); ++J) {
      const auto k = static_cast<std::size_t>(numerator(theta_hat.at(J)));
      const Subspace& u = U.at(J);
      out.bases[J] = k == 0 ? MatrixFq(f, 0, amb) : mat_mul(random_matrix(k, u.dim(), f, rng), u.basis());
    }
    MatrixFq all = out.stacked(f, amb);
    if (rank(all) != total) continue;
    if (eve_space && rank(vstack(all, eve_space->basis())) != total + eve_space->dim()) continue;
    out.ok = true;
    return out;
  }
  return out;
}

LeakageCertificate certify_zero_leakage(const MatrixFq& key_vectors, const MatrixFq& x_eve) {
  LeakageCertificate c;
  c.rank_keys = rank(key_vectors);
  c.rank_eve = rank(x_eve);
  c.rank_joint = rank(vstack(key_vectors, x_eve));
  c.certified = c.rank_joint == c.rank_keys + c.rank_eve;
  return c;
}

ExhaustiveLeakage exhaustive_leakage(const MatrixFq& key_coeffs, const MatrixFq& eve_transfer, std::size_t ell) {
  const auto& f = key_coeffs.ctx();
  const std::size_t n_A = key_coeffs.cols();
  if (eve_transfer.cols() != n_A) throw ContractViolation("exhaustive_leakage: Eve's transfer matrix width differs");
  if (ell <= n_A) throw ContractViolation("exhaustive_leakage: need ell > n_A");
  const std::size_t free_entries = n_A * (ell - n_A);
  const double space = std::pow(static_cast<double>(f.q()), static_cast<double>(free_entries));
  if (space > 65536.0) {
    throw ContractViolation("exhaustive_leakage: q^(n_A (ell - n_A)) = " + std::to_string(space) +
                            " messages exceeds the 2^16 enumeration limit");
  }

  using Outcome = std::vector<Scalar>;
  std::map<std::pair<Outcome, Outcome>, std::uint64_t> joint;
  std::map<Outcome, std::uint64_t> key_marginal, eve_marginal;
  std::vector<Scalar> digits(free_entries, 0);
  ExhaustiveLeakage out;
  while (true) {
    const MatrixFq x_A = make_source_matrix(MatrixFq(f, n_A, ell - n_A, digits));
    const Outcome k = mat_mul(key_coeffs, x_A).entries();
    const Outcome e = mat_mul(eve_transfer, x_A).entries();
    ++joint[{k, e}];
    ++key_marginal[k];
    ++eve_marginal[e];
    ++out.messages;
    std::size_t s = 0;
    while (s < digits.size() && ++digits[s] == f.q()) digits[s++] = 0;
    if (s == digits.size()) break;
  }

  const auto total = out.messages;
  out.independent = true;
  for (const auto& [k, ck] : key_marginal) {
    for (const auto& [e, ce] : eve_marginal) {
      auto it = joint.find({k, e});
      const std::uint64_t cke = it == joint.end() ? 0 : it->second;
      if (cke * total != ck * ce) out.independent = false;
    }
  }
  double mi = 0.0;
  for (const auto& [ke, cke] : joint) {
    const double p = static_cast<double>(cke) / static_cast<double>(total);
    const double pk = static_cast<double>(key_marginal[ke.first]) / static_cast<double>(total);
    const double pe = static_cast<double>(eve_marginal[ke.second]) / static_cast<double>(total);
    mi += p * std::log(p / (pk * pe));
  }
  out.mutual_information_nats = out.independent ? 0.0 : mi;
  return out;
}

}  // namespace nckey
