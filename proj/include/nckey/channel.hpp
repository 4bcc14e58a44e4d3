#pragma once

#include <cstddef>
#include <vector>

#include "nckey/matrix.hpp"
#include "nckey/rational.hpp"
#include "nckey/subspace.hpp"

namespace nckey {

/// Shape of the broadcast channel: Alice injects n_A packets of length ell per slot;
/// legitimate terminal i (1-based) gets n[i-1] random combinations, Eve gets n_E.
struct ChannelParams {
  FieldCtx ctx{2};
  std::size_t ell = 0;
  std::size_t n_A = 0;
  std::vector<std::size_t> n;
  std::size_t n_E = 0;

  std::size_t m() const { return n.size(); }
  /// Receiver index r in [0, m) for legitimate terminals, r == m for Eve.
  std::size_t receiver_count(std::size_t r) const { return r < n.size() ? n[r] : n_E; }

  /// Structural checks (m >= 1, n_A >= 1). Throws ContractViolation.
  void validate() const;
  /// Additionally requires n_A < ell, which the key-agreement path relies on.
  void validate_for_achievability() const;
};

struct ReceiverObservation {
  MatrixFq transfer;  // n_r x n_A
  MatrixFq received;  // n_r x ell
};

/// One channel use. receivers[i] is terminal i+1; eve is separate.
struct SlotObservation {
  std::vector<ReceiverObservation> receivers;
  ReceiverObservation eve;
};

/// [ I_{n_A} | M ].
MatrixFq make_source_matrix(const MatrixFq& message);

/// Draws an independent uniform transfer matrix for every receiver (Eve included), over all
/// n_r x n_A matrices, and applies it to x_A.
SlotObservation broadcast_slot(const MatrixFq& x_A, const ChannelParams& params, Rng& rng);

/// P(X_r = x_r | X_A = x_A) with n_r = x_r.rows(): q^{-n_r rank(x_A)} if <x_r> ⊑ <x_A>, else 0.
Rational matrix_transition_prob(const MatrixFq& x_r, const MatrixFq& x_A);

/// P(Π_i = pi_i | Π_A = pi_A) = xi(n_i, dim pi_i) q^{-n_i dim pi_A} if pi_i ⊑ pi_A, else 0.
Rational subspace_transition_prob(const Subspace& pi_i, const Subspace& pi_A, std::size_t n_i);

}  // namespace nckey
