#include "nckey/bounds.hpp"

#include <algorithm>
#include <cstdint>

namespace nckey {

namespace {

std::int64_t signed_of(std::size_t v) { return static_cast<std::int64_t>(v); }
std::int64_t pos(std::int64_t v) { return v > 0 ? v : 0; }

}  // namespace

RateExpression RateExpression::absolute(const ChannelParams& params) const {
  if (normalization == Normalization::absolute) return *this;
  const auto dof = pos(signed_of(params.ell) - signed_of(params.n_A));
  return {coefficient * dof, Normalization::absolute};
}

RateExpression upper_bound(const ChannelParams& params) {
  params.validate();
  const auto n_A = signed_of(params.n_A);
  const auto n_E = signed_of(params.n_E);
  const auto ell = signed_of(params.ell);
  std::int64_t best = -1;
  for (auto n_i : params.n) {
    const auto reach = std::min(n_A, signed_of(n_i) + n_E);
    const auto value = pos(reach - n_E) * pos(ell - reach);
    best = best < 0 ? value : std::min(best, value);
  }
  return {Rational(best), Normalization::absolute};
}

RateExpression two_terminal_rate(const ChannelParams& params) {
  params.validate();
  if (params.m() != 1) throw ContractViolation("two_terminal_rate needs exactly one legitimate receiver");
  const auto n_B = signed_of(params.n[0]);
  const auto n_E = signed_of(params.n_E);
  // Alice only needs n_B + n_E degrees of freedom.
  const auto n_A = std::min(signed_of(params.n_A), n_B + n_E);
  const auto usable_B = std::min(n_B, n_A);
  const auto dim_U_B = pos(usable_B - pos(usable_B + std::min(n_E, n_A) - n_A));
  return {Rational(dim_U_B * pos(signed_of(params.ell) - n_A)), Normalization::absolute};
}

RateExpression no_feedback_two_terminal_rate(const ChannelParams& params) {
  params.validate();
  if (params.m() != 1) {
    throw ContractViolation("no_feedback_two_terminal_rate needs exactly one legitimate receiver");
  }
  const auto n_B = signed_of(params.n[0]);
  return {Rational(pos(n_B - signed_of(params.n_E)) * pos(signed_of(params.ell) - n_B)),
          Normalization::absolute};
}

ThreeTerminalBreakdown three_terminal_breakdown(const ChannelParams& params) {
  params.validate();
  if (params.m() != 2) throw ContractViolation("three_terminal_rate needs exactly two legitimate receivers");
  if (params.n[0] != params.n[1]) {
    throw ContractViolation("three_terminal_rate needs n_B == n_C; use the LP for asymmetric channels");
  }
  if (params.n[0] > params.n_A || params.n_E > params.n_A) {
    throw ContractViolation("three_terminal_rate needs n_B <= n_A and n_E <= n_A");
  }
  const auto n_A = signed_of(params.n_A);
  const auto n_B = signed_of(params.n[0]);
  const auto n_E = signed_of(params.n_E);

  ThreeTerminalBreakdown out;
  out.dim_U_B = static_cast<std::size_t>(pos(n_B - pos(2 * n_B - n_A) - pos(n_B + n_E - n_A)));
  out.dim_U_BC = static_cast<std::size_t>(std::min(n_A - n_E, pos(2 * n_B - n_A)));
  const auto u = signed_of(out.dim_U_B);
  const auto w = signed_of(out.dim_U_BC);
  // U_B, U_C, U_BC are mutually orthogonal and in generic position against Π_E.
  out.alpha1 = Rational(std::min(2 * u + n_E, n_A) - n_E, 2);
  out.alpha2 = Rational(w);
  out.alpha3 = Rational(std::min(2 * u + w + n_E, n_A) - n_E);
  out.theta_B = (out.alpha3 - out.alpha2) / 2;
  out.theta_BC = out.alpha2;
  return out;
}

RateExpression three_terminal_rate(const ChannelParams& params) {
  const auto b = three_terminal_breakdown(params);
  const Rational direct = Rational(b.dim_U_B + b.dim_U_BC);
  const Rational shared = Rational(signed_of(params.n_A) + signed_of(b.dim_U_BC) - signed_of(params.n_E), 2);
  return {std::min(direct, shared), Normalization::per_dof};
}

GenericDims whp_dims(std::span<const std::size_t> dims, std::size_t n) {
  std::int64_t total = 0;
  for (auto d : dims) {
    if (d > n) throw ContractViolation("whp_dims: subspace dimension exceeds ambient dimension");
    total += signed_of(d);
  }
  const auto k = signed_of(dims.size());
  GenericDims out;
  out.sum_dim = static_cast<std::size_t>(std::min(total, signed_of(n)));
  out.intersection_dim =
      dims.empty() ? n : static_cast<std::size_t>(pos(total - (k - 1) * signed_of(n)));
  return out;
}

}  // namespace nckey
