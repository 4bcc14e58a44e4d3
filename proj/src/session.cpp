#include "nckey/session.hpp"

#include <algorithm>

namespace nckey {

namespace {

MatrixFq stack_all(const std::vector<MatrixFq>& parts, const FieldCtx& ctx, std::size_t cols) {
  MatrixFq acc(ctx, 0, cols);
  for (const auto& p : parts) acc = vstack(acc, p);
  return acc;
}

Subspace intersection_of(const std::vector<Subspace>& received, SubsetMask J) {
  std::optional<Subspace> acc;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (!contains_terminal(J, i)) continue;
    acc = acc ? intersect(*acc, received[i]) : received[i];
  }
  return *acc;
}

std::size_t as_count(const Rational& r) { return static_cast<std::size_t>(numerator(r)); }

}  // namespace

SessionResult run_session(const ChannelParams& params, std::size_t slots, const ThetaAllocation& theta,
                          Rng& rng, std::size_t max_retries) {
  params.validate_for_achievability();
  if (theta.m() != params.m()) throw ContractViolation("run_session: theta is sized for a different m");
  const auto& f = params.ctx;
  const std::size_t m = params.m();
  const std::size_t n_A = params.n_A;
  const std::size_t width = params.ell - n_A;
  const std::size_t masks = std::size_t{1} << m;

  {
    auto verdict = check_theta_feasible(theta, planned_constraints(params), &rng);
    if (!verdict.feasible) {
      throw InfeasibleAllocation("theta allocation is infeasible for the planned dimensions: " + verdict.describe(),
                                 verdict);
    }
  }
  const auto plan = plan_dimensions(params);
  const ThetaAllocation theta_hat = theta.scaled_floor(slots);

  SessionResult res;
  res.transcript.params = params;
  res.transcript.slots = slots;
  res.transcript.theta = theta;
  res.keys.theta_hat = theta_hat;
  res.keys.subset_keys.assign(masks, MatrixFq(f, 0, width));
  res.keys.subset_keys_by_terminal.assign(masks, std::vector<MatrixFq>(m, MatrixFq(f, 0, width)));
  auto& audit = res.audit;
  auto fail = [&](std::string reason) {
    audit.degenerate = true;
    audit.degeneracy_reason = std::move(reason);
    res.keys.subset_keys.assign(masks, MatrixFq(f, 0, width));
    res.keys.subset_keys_by_terminal.assign(masks, std::vector<MatrixFq>(m, MatrixFq(f, 0, width)));
    res.keys.alice_key = MatrixFq(f, 0, width);
    res.keys.terminal_keys.assign(m, MatrixFq(f, 0, width));
    return res;
  };

  // Channel uses. Subspaces live in the coordinates of <X_A[t]> = F_q^{n_A}: since X_A has
  // an identity block, <X_r> corresponds to the row span of the published F_r.
  std::vector<SubspaceFamily> U_slots;
  std::vector<Subspace> eve_slots;
  std::string alice_failure;
  audit.slotwise_feasible = true;
  for (std::size_t t = 0; t < slots; ++t) {
    MatrixFq message = random_matrix(n_A, width, f, rng);
    SlotObservation obs = broadcast_slot(make_source_matrix(message), params, rng);
    for (std::size_t r = 0; r < m; ++r) {
      res.transcript.public_messages.push_back(
          {PublicMessage::Kind::transfer_matrix, t, r + 1, 0, obs.receivers[r].transfer, std::nullopt});
    }

    std::vector<Subspace> received;
    for (std::size_t r = 0; r < m; ++r) received.push_back(span_of(obs.receivers[r].transfer));
    Subspace eve = span_of(obs.eve.transfer);

    SubspaceFamily U(m, f, n_A);
    for (SubsetMask J = 1; J < masks; ++J) {
      const Subspace pi_J = intersection_of(received, J);
      if (pi_J.dim() < plan.u[J]) {
        if (alice_failure.empty()) {
          alice_failure = "slot " + std::to_string(t) + ": dim of common subspace " + subset_label(J) + " is " +
                          std::to_string(pi_J.dim()) + ", below the planned " + std::to_string(plan.u[J]);
        }
        continue;
      }
      U.set(J, random_subspace_of(pi_J, plan.u[J], rng));
    }

    // Auditor-only view: compare the plan with what actually happened, Eve included.
    const auto actual = build_U_family(received, eve, ComplementMode::deterministic);
    bool mismatch = eve.dim() != std::min(params.n_E, n_A);
    for (SubsetMask J = 1; J < masks; ++J) {
      mismatch = mismatch || actual.at(J).dim() != plan.u[J] ||
                 intersection_of(received, J).dim() != plan.intersection[J];
    }
    if (mismatch) ++audit.plan_mismatch_slots;
    if (alice_failure.empty()) {
      audit.slotwise_feasible =
          audit.slotwise_feasible &&
          check_theta_feasible(theta, ThetaConstraints::from_subspaces(U, eve), &rng).feasible;
    }

    U_slots.push_back(std::move(U));
    eve_slots.push_back(std::move(eve));
    res.transcript.slot_records.push_back({std::move(message), std::move(obs)});
  }
  if (!alice_failure.empty()) {
    audit.slotwise_feasible = false;
    return fail(alice_failure);
  }

  // Time extension: direct sums over the N slots in the (N n_A)-dimensional session space.
  const std::size_t amb = slots * n_A;
  SubspaceFamily U_hat(m, f, amb);
  for (SubsetMask J = 1; J < masks; ++J) {
    std::vector<Subspace> parts;
    for (const auto& U : U_slots) parts.push_back(U.at(J));
    U_hat.set(J, direct_sum(parts, f));
  }
  const Subspace eve_hat = direct_sum(eve_slots, f);
  audit.time_extended_feasible =
      check_theta_feasible(theta_hat, ThetaConstraints::from_subspaces(U_hat, eve_hat), &rng).feasible;

  // Alice only knows dim Π_E, so orthogonality to Eve rests on generic position.
  auto secure = extract_secure_bases(U_hat, theta_hat, EveKnowledge{slots * std::min(params.n_E, n_A)}, rng,
                                     max_retries);
  audit.extraction_attempts = secure.attempts;
  if (!secure.ok) {
    return fail(secure.refusal ? "key extraction refused: " + secure.refusal->describe()
                               : "key extraction found no orthogonal bases");
  }

  // Session-level virtual source [I | M_hat]: row block t of M_hat is M[t].
  std::vector<MatrixFq> messages, eve_transfers;
  std::vector<std::vector<MatrixFq>> transfers(m), received_symbols(m);
  for (const auto& rec : res.transcript.slot_records) {
    messages.push_back(rec.message);
    eve_transfers.push_back(rec.observation.eve.transfer);
    for (std::size_t r = 0; r < m; ++r) {
      transfers[r].push_back(rec.observation.receivers[r].transfer);
      received_symbols[r].push_back(rec.observation.receivers[r].received.col_range(n_A, width));
    }
  }
  const MatrixFq M_hat = stack_all(messages, f, width);
  const MatrixFq X_hat_A = hstack(MatrixFq::identity(f, amb), M_hat);
  const MatrixFq F_hat_E = block_diag(eve_transfers, f);
  const MatrixFq all_coeffs = secure.stacked(f, amb);
  audit.subset_certificate = certify_zero_leakage(mat_mul(all_coeffs, X_hat_A), mat_mul(F_hat_E, X_hat_A));
  if (!audit.subset_certificate.certified) {
    return fail("extracted key subspace intersects Eve's session subspace");
  }

  // Subset keys: Alice discloses, per member, coefficients over that member's received rows.
  std::vector<MatrixFq> F_hat(m), Y_hat(m);
  for (std::size_t r = 0; r < m; ++r) {
    F_hat[r] = block_diag(transfers[r], f);
    Y_hat[r] = stack_all(received_symbols[r], f, width);
  }
  audit.subset_keys_agree = true;
  for (SubsetMask J = 1; J < masks; ++J) {
    const MatrixFq& C_J = secure.bases[J];
    if (C_J.rows() == 0) continue;
    res.keys.subset_keys[J] = mat_mul(C_J, M_hat);
    for (std::size_t r = 0; r < m; ++r) {
      if (!contains_terminal(J, r)) continue;
      auto coeffs = solve_in_rowspan(C_J, F_hat[r]);
      if (!coeffs) throw std::logic_error("key basis escaped a member's received subspace");
      res.keys.subset_keys_by_terminal[J][r] = mat_mul(*coeffs, Y_hat[r]);
      audit.subset_keys_agree = audit.subset_keys_agree && res.keys.subset_keys_by_terminal[J][r] == res.keys.subset_keys[J];
      res.transcript.public_messages.push_back(
          {PublicMessage::Kind::key_coefficients, 0, r + 1, J, std::move(*coeffs), std::nullopt});
    }
  }

  // Multicast a fresh key K over the secret K_J links: Alice publishes K_J + E_J K and
  // terminal r decodes K from the stacked E_J, J ∋ r, which must have full column rank L.
  const std::size_t L = as_count(theta_hat.min_cut());
  audit.key_rows = L;
  res.keys.alice_key = random_matrix(L, width, f, rng);
  std::vector<MatrixFq> encoding(masks, MatrixFq(f, 0, L));
  auto stacked_encoding = [&](std::size_t r) {
    MatrixFq g(f, 0, L);
    for (SubsetMask J = 1; J < masks; ++J)
      if (contains_terminal(J, r)) g = vstack(g, encoding[J]);
    return g;
  };
  bool decodable = false;
  while (!decodable && audit.multicast_attempts < max_retries) {
    ++audit.multicast_attempts;
    for (SubsetMask J = 1; J < masks; ++J) encoding[J] = random_matrix(as_count(theta_hat.at(J)), L, f, rng);
    decodable = true;
    for (std::size_t r = 0; r < m && decodable; ++r) decodable = rank(stacked_encoding(r)) == L;
  }
  if (!decodable) return fail("no decodable multicast code found");

  std::vector<MatrixFq> padded(masks, MatrixFq(f, 0, width));
  for (SubsetMask J = 1; J < masks; ++J) {
    if (encoding[J].rows() == 0) continue;
    padded[J] = mat_add(res.keys.subset_keys[J], mat_mul(encoding[J], res.keys.alice_key));
    res.transcript.public_messages.push_back(
        {PublicMessage::Kind::multicast, 0, 0, J, padded[J], encoding[J]});
  }
  audit.agreement = audit.subset_keys_agree;
  for (std::size_t r = 0; r < m; ++r) {
    MatrixFq coded(f, 0, width);
    for (SubsetMask J = 1; J < masks; ++J) {
      if (contains_terminal(J, r)) coded = vstack(coded, mat_sub(padded[J], res.keys.subset_keys_by_terminal[J][r]));
    }
    auto decoder = solve_in_rowspan(MatrixFq::identity(f, L), stacked_encoding(r));
    if (!decoder) throw std::logic_error("multicast decoder vanished after the rank check");
    res.keys.terminal_keys.push_back(mat_mul(*decoder, coded));
    audit.agreement = audit.agreement && res.keys.terminal_keys.back() == res.keys.alice_key;
  }

  // Eve's view as linear forms in the unknowns [M_hat; K]. Her channel rows contribute
  // F_hat_E M_hat, each multicast payload C_J M_hat + E_J K. Transfer matrices and coefficient
  // disclosures are functions of channel state and Alice's subspace choices only.
  const std::size_t unknowns = amb + L;
  MatrixFq view = hstack(F_hat_E, MatrixFq(f, F_hat_E.rows(), L));
  for (SubsetMask J = 1; J < masks; ++J) {
    if (encoding[J].rows() == 0) continue;
    view = vstack(view, hstack(secure.bases[J], encoding[J]));
  }
  const MatrixFq key_forms = hstack(MatrixFq(f, L, amb), MatrixFq::identity(f, L));
  if (view.cols() != unknowns) throw std::logic_error("session view has the wrong width");
  audit.final_certificate = certify_zero_leakage(key_forms, view);
  audit.leakage_certified = audit.final_certificate.certified;
  audit.achieved_coefficient = slots == 0 ? Rational(0) : Rational(BigInt(L), BigInt(slots));
  return res;
}

}  // namespace nckey
