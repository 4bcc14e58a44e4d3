#include "nckey/channel.hpp"

namespace nckey {

namespace {

Rational inverse_q_power(std::uint64_t q, std::size_t e) {
  BigInt den = 1;
  for (std::size_t i = 0; i < e; ++i) den *= q;
  return Rational(BigInt(1), den);
}

}  // namespace

void ChannelParams::validate() const {
  if (n.empty()) throw ContractViolation("channel needs at least one legitimate receiver (m >= 1)");
  if (n_A < 1) throw ContractViolation("Alice must inject at least one packet (n_A >= 1)");
  if (n.size() > 16) throw ContractViolation("at most 16 legitimate receivers are supported");
}

void ChannelParams::validate_for_achievability() const {
  validate();
  if (n_A >= ell) {
    throw ContractViolation("key agreement needs n_A < ell (got n_A=" + std::to_string(n_A) +
                            ", ell=" + std::to_string(ell) + ")");
  }
}

MatrixFq make_source_matrix(const MatrixFq& message) {
  return hstack(MatrixFq::identity(message.ctx(), message.rows()), message);
}

SlotObservation broadcast_slot(const MatrixFq& x_A, const ChannelParams& params, Rng& rng) {
  if (x_A.rows() != params.n_A || x_A.cols() != params.ell) {
    throw ContractViolation("broadcast_slot: source matrix must be n_A x ell");
  }
  auto observe = [&](std::size_t n_r) {
    MatrixFq f = random_matrix(n_r, params.n_A, params.ctx, rng);
    MatrixFq x = mat_mul(f, x_A);
    return ReceiverObservation{std::move(f), std::move(x)};
  };
  SlotObservation slot{{}, observe(0)};
  slot.receivers.reserve(params.m());
  for (std::size_t i = 0; i < params.m(); ++i) slot.receivers.push_back(observe(params.n[i]));
  slot.eve = observe(params.n_E);
  return slot;
}

Rational matrix_transition_prob(const MatrixFq& x_r, const MatrixFq& x_A) {
  if (x_r.cols() != x_A.cols()) throw ContractViolation("matrix_transition_prob: packet lengths differ");
  const std::size_t rank_a = rank(x_A);
  if (rank(vstack(x_A, x_r)) != rank_a) return Rational(0);
  return inverse_q_power(x_A.ctx().q(), x_r.rows() * rank_a);
}

Rational subspace_transition_prob(const Subspace& pi_i, const Subspace& pi_A, std::size_t n_i) {
  if (!pi_i.is_subspace_of(pi_A) || pi_i.dim() > n_i) return Rational(0);
  return Rational(xi(n_i, pi_i.dim(), pi_A.ctx())) *
         inverse_q_power(pi_A.ctx().q(), n_i * pi_A.dim());
}

}  // namespace nckey
