#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nckey/bounds.hpp"
#include "nckey/cmi_oracle.hpp"
#include "nckey/session.hpp"

namespace nckey {

/// Bad command-line or config input.
class UsageError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// "var:lo:hi", inclusive. Variables: q, ell, na, ne, n (every n_i), n1..n16.
struct SweepSpec {
  std::string var;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  static SweepSpec parse(const std::string& text);
  std::string to_string() const;
};

struct ExperimentConfig {
  std::uint64_t q = 2;
  std::size_t ell = 0;
  std::size_t n_A = 0;
  std::vector<std::size_t> n;
  std::size_t n_E = 0;
  std::optional<SweepSpec> sweep;
  std::size_t slots = 1;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  /// "1=1/2,2=1/2,12=2": digits name the terminals of J. Empty means the LP optimum.
  std::string theta;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// FNV-1a over the canonical JSON dump.
  std::uint64_t hash() const;
};

struct SweepPoint {
  std::int64_t value = 0;  ///< sweep variable value (0 without a sweep)
  ChannelParams params;
};

/// Expands the sweep; q sweeps keep only primes.
std::vector<SweepPoint> sweep_points(const ExperimentConfig& cfg);

ThetaAllocation parse_theta(const std::string& text, std::size_t m);

struct BoundsRow {
  SweepPoint point;
  Rational upper;  ///< absolute, coefficient of log q
  Rational lower;  ///< absolute
  std::optional<Rational> upper_per_dof;  ///< divided by (ell - n_A); absent when ell <= n_A
  std::optional<Rational> lower_per_dof;
  /// The upper bound's (ell - min[n_A, n_i+n_E]) factor differs from the lower bound's (ell - n_A).
  bool normalization_mismatch = false;
  std::string lower_method;  ///< two_terminal, three_terminal or lp
};

BoundsRow bounds_row(const SweepPoint& point);
std::vector<BoundsRow> cmd_bounds(const ExperimentConfig& cfg);

struct TrialOutcome {
  std::size_t trial = 0;
  bool degenerate = false;
  std::string degeneracy_reason;
  bool agreement = false;
  bool leakage_certified = false;
  bool time_extension_inherited = false;  ///< slotwise feasibility implied time-extended feasibility
  std::size_t plan_mismatch_slots = 0;
  std::size_t key_rows = 0;
  Rational achieved_coefficient;
};

struct SimulationSummary {
  SweepPoint point;
  ThetaAllocation theta{1};
  Rational target_coefficient;  ///< floor(N min-cut θ) / N
  std::vector<TrialOutcome> trials;
  std::size_t degenerate = 0;
  std::size_t agreed = 0;     ///< among non-degenerate trials
  std::size_t certified = 0;  ///< among non-degenerate trials
  std::size_t time_extension_violations = 0;
  std::size_t at_target = 0;  ///< non-degenerate trials achieving target_coefficient
};

/// Per-trial RNG seeded from (seed, trial); trials run in parallel.
std::vector<SimulationSummary> cmd_simulate(const ExperimentConfig& cfg);

struct OracleRow {
  SweepPoint point;
  CmiReport report;
};
std::vector<OracleRow> cmd_oracle(const ExperimentConfig& cfg);

/// Renders a command's result in cfg.format, with the seed and config hash embedded.
std::string render_bounds(const ExperimentConfig& cfg, const std::vector<BoundsRow>& rows);
std::string render_simulate(const ExperimentConfig& cfg, const std::vector<SimulationSummary>& rows);
std::string render_oracle(const ExperimentConfig& cfg, const std::vector<OracleRow>& rows);

/// Dispatches "bounds", "simulate" or "oracle" and returns the rendered output.
std::string run_command(const std::string& command, const ExperimentConfig& cfg);

}  // namespace nckey
