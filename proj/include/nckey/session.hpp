#pragma once

#include <string>
#include <vector>

#include "nckey/key_agreement.hpp"

namespace nckey {

/// Public discussion traffic. Everything here is visible to Eve.
struct PublicMessage {
  enum class Kind {
    transfer_matrix,   ///< terminal publishes F_r[t]
    key_coefficients,  ///< Alice tells terminal r how to rebuild the basis of U'_J from its rows
    multicast,         ///< Alice's one-time-padded coded key symbols over K_J
  };
  Kind kind = Kind::transfer_matrix;
  std::size_t slot = 0;      ///< transfer_matrix only
  std::size_t terminal = 0;  ///< 1-based; transfer_matrix and key_coefficients
  SubsetMask subset = 0;     ///< key_coefficients and multicast
  MatrixFq payload;          ///< F_r[t], coefficient matrix, or padded symbols
  std::optional<MatrixFq> encoding;  ///< multicast only: E_J
};

struct SlotRecord {
  MatrixFq message;  ///< M[t], n_A x (ell - n_A)
  SlotObservation observation;
};

struct SessionTranscript {
  ChannelParams params;
  std::size_t slots = 0;
  ThetaAllocation theta{1};
  std::vector<SlotRecord> slot_records;
  std::vector<PublicMessage> public_messages;
};

/// Keys are stored as rows of M-symbols: each row carries (ell - n_A) log q bits.
struct KeyShare {
  ThetaAllocation theta_hat{1};
  /// Alice's K_J per mask, θ̂_J x (ell - n_A).
  std::vector<MatrixFq> subset_keys;
  /// subset_keys_by_terminal[J][r]: K_J as rebuilt by terminal r (empty matrix when r ∉ J).
  std::vector<std::vector<MatrixFq>> subset_keys_by_terminal;
  MatrixFq alice_key;                  ///< final key K, L x (ell - n_A)
  std::vector<MatrixFq> terminal_keys; ///< K as decoded by terminals 1..m
};

struct SessionAudit {
  bool degenerate = false;
  std::string degeneracy_reason;
  bool subset_keys_agree = false;
  bool agreement = false;
  /// Rank certificate of all K_J key vectors against Eve's channel rows in the session space.
  LeakageCertificate subset_certificate;
  /// Rank certificate of the final key against Eve's whole view: channel outputs and every
  /// public message.
  LeakageCertificate final_certificate;
  bool leakage_certified = false;
  bool slotwise_feasible = false;       ///< θ satisfies the slot inequalities in every slot
  bool time_extended_feasible = false;  ///< θ̂ satisfies them on the direct-sum subspaces
  std::size_t plan_mismatch_slots = 0;  ///< slots where some actual dim differs from the plan
  std::size_t key_rows = 0;             ///< L = min_r sum_{J ∋ r} θ̂_J
  Rational achieved_coefficient;        ///< L / N, per (ell - n_A) log q
  std::size_t extraction_attempts = 0;
  std::size_t multicast_attempts = 0;
};

struct SessionResult {
  SessionTranscript transcript;
  KeyShare keys;
  SessionAudit audit;
};

/// θ was infeasible for the planned dimensions.
class InfeasibleAllocation : public ContractViolation {
 public:
  InfeasibleAllocation(const std::string& what, FeasibilityVerdict verdict)
      : ContractViolation(what), verdict_(std::move(verdict)) {}
  const FeasibilityVerdict& verdict() const { return verdict_; }

 private:
  FeasibilityVerdict verdict_;
};

/// Runs the multi-slot key agreement protocol over N channel uses and audits it.
/// Degenerate sessions (a generic-position event the protocol relies on failed) withhold
/// their keys: the key matrices in the result are left empty.
SessionResult run_session(const ChannelParams& params, std::size_t slots, const ThetaAllocation& theta,
                          Rng& rng, std::size_t max_retries = 64);

}  // namespace nckey
