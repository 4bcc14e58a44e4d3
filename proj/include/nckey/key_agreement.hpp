#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "nckey/channel.hpp"
#include "nckey/theta.hpp"

namespace nckey {

/// U_J = Π_J \_s ( sum_{i ∉ J} Π_i ∩ Π_J + Π_E ∩ Π_J ) for every nonempty J.
/// `received` holds Π_1..Π_m; all subspaces share one ambient space.
SubspaceFamily build_U_family(const std::vector<Subspace>& received, const Subspace& eve,
                              ComplementMode mode, Rng* rng = nullptr);

/// Dimensions Alice can predict from the channel shape alone, indexed by subset mask.
struct PlannedDimensions {
  std::size_t m = 0;
  std::vector<std::size_t> intersection;  ///< dim Π_J
  std::vector<std::size_t> u;             ///< dim U_J
};

/// Iterated generic-position arithmetic: intersections of uniform subspaces of the
/// n_A-dimensional source space, then dim U_J = dim Π_J - dim(overlaps inside Π_J).
PlannedDimensions plan_dimensions(const ChannelParams& params);

ThetaConstraints planned_constraints(const ChannelParams& params);

/// What Alice knows about Eve when extracting key subspaces.
using EveKnowledge = std::variant<Subspace, std::size_t>;

struct SecureBases {
  bool ok = false;
  std::optional<FeasibilityVerdict> refusal;  ///< set when θ̂ is infeasible
  std::vector<MatrixFq> bases;                ///< indexed by mask; θ̂_J x ambient rows
  std::size_t attempts = 0;

  /// All basis rows stacked in mask order.
  MatrixFq stacked(const FieldCtx& ctx, std::size_t ambient_dim) const;
};

/// Picks U'_J ⊑ U_J with dim θ̂_J so that the U'_J are mutually orthogonal. With Eve's
/// subspace known, also forces orthogonality to it exactly (resampling until it holds); with
/// only her dimension known, orthogonality to Π_E is left to generic position.
SecureBases extract_secure_bases(const SubspaceFamily& U, const ThetaAllocation& theta_hat,
                                 const EveKnowledge& eve, Rng& rng, std::size_t max_attempts = 256);

struct LeakageCertificate {
  bool certified = false;
  std::size_t rank_keys = 0;
  std::size_t rank_eve = 0;
  std::size_t rank_joint = 0;
};

/// Rank additivity of key rows against Eve's rows: rank[K; X_E] == rank K + rank X_E.
LeakageCertificate certify_zero_leakage(const MatrixFq& key_vectors, const MatrixFq& x_eve);

struct ExhaustiveLeakage {
  bool independent = false;  ///< P(keys, X_E) == P(keys) P(X_E) for every outcome pair
  double mutual_information_nats = 0.0;
  std::size_t messages = 0;  ///< number of M enumerated
};

/// Enumerates every M for X_A = [I | M] (n_A = key_coeffs.cols()) and measures the exact
/// dependence between the key vectors key_coeffs * X_A and Eve's view eve_transfer * X_A.
/// Limited to q^{n_A (ell - n_A)} <= 2^16.
ExhaustiveLeakage exhaustive_leakage(const MatrixFq& key_coeffs, const MatrixFq& eve_transfer, std::size_t ell);

}  // namespace nckey
