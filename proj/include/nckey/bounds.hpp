#pragma once

#include <span>
#include <utility>

#include "nckey/channel.hpp"
#include "nckey/rational.hpp"

namespace nckey {

enum class Normalization {
  absolute,  ///< coefficient of log q
  per_dof,   ///< coefficient of (ell - n_A) log q
};

struct RateExpression {
  Rational coefficient;
  Normalization normalization = Normalization::absolute;

  /// Converts to the absolute normalization for the given channel.
  RateExpression absolute(const ChannelParams& params) const;

  friend bool operator==(const RateExpression&, const RateExpression&) = default;
};

/// min_i (min[n_A, n_i+n_E] - n_E)^+ (ell - min[n_A, n_i+n_E])^+, absolute.
RateExpression upper_bound(const ChannelParams& params);

/// Secret-key capacity for m = 1 through the achievability route: Alice injects
/// n_A' = min(n_A, n_B + n_E) packets and the rate is dim(U_B) (ell - n_A').
RateExpression two_terminal_rate(const ChannelParams& params);

/// Wiretap capacity without public feedback, [n_B - n_E]^+ (ell - n_B).
RateExpression no_feedback_two_terminal_rate(const ChannelParams& params);

/// Planned dimensions and LP constants for the symmetric three-terminal case.
struct ThreeTerminalBreakdown {
  std::size_t dim_U_B = 0;   ///< also dim U_C
  std::size_t dim_U_BC = 0;
  Rational alpha1, alpha2, alpha3;
  Rational theta_B, theta_BC;  ///< optimal point ((alpha3-alpha2)/2, alpha2)
};
ThreeTerminalBreakdown three_terminal_breakdown(const ChannelParams& params);

/// Closed-form achievable rate for m = 2 with n_B = n_C, in the per_dof normalization.
RateExpression three_terminal_rate(const ChannelParams& params);

struct GenericDims {
  std::size_t sum_dim = 0;
  std::size_t intersection_dim = 0;
  friend bool operator==(const GenericDims&, const GenericDims&) = default;
};

/// Dimensions of the sum and intersection of uniformly random subspaces of F_q^n with the
/// given dimensions, as they hold with probability 1 - O(1/q).
GenericDims whp_dims(std::span<const std::size_t> dims, std::size_t n);

}  // namespace nckey
