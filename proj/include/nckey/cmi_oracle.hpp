#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nckey/bounds.hpp"
#include "nckey/subspace.hpp"

namespace nckey {

/// Single-receiver subspace channel small enough for exhaustive enumeration.
struct CmiInstance {
  FieldCtx ctx{2};
  std::size_t ell = 0;
  std::size_t n_A = 0;
  std::size_t n_i = 0;
  std::size_t n_E = 0;

  /// (min[n_A, n_i+n_E] - n_E)(ell - min[n_A, n_i+n_E]); the large-q limit of max I / log q.
  Rational asymptotic_coefficient() const;
};

/// Thrown when enumeration would be infeasible. The message reports the instance size.
class InstanceTooLarge : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// Probability mass over subspaces of F_q^ell with dimension at most n_A.
struct InputDistribution {
  std::string label;
  std::vector<std::pair<Subspace, Rational>> mass;
  /// True when the distribution is uniform over subspaces of one fixed dimension.
  bool fixed_dimension_uniform = false;
};

InputDistribution uniform_over_dimension(const CmiInstance& inst, std::size_t dim);
/// Spreads each dimension's total mass uniformly over that dimension's subspaces.
InputDistribution symmetrize(const CmiInstance& inst, const InputDistribution& dist);

/// Uniform per dimension, point masses, and several cross-dimension and non-uniform mixtures.
std::vector<InputDistribution> standard_input_family(const CmiInstance& inst);

/// I(Π_A; Π_i | Π_E) in nats for the given input law. Refuses ell > 4 or q > 5.
double exact_cmi(const CmiInstance& inst, const InputDistribution& input);

struct CmiEntry {
  std::string label;
  bool fixed_dimension_uniform = false;
  double nats = 0.0;
  double normalized = 0.0;  ///< nats / ln q
};

struct CmiReport {
  CmiInstance instance;
  std::vector<CmiEntry> entries;
  double best_fixed_dimension = 0.0;  ///< best normalized value among fixed-dimension uniform inputs
  double best_overall = 0.0;
  Rational asymptotic_coefficient;
};

CmiReport exact_cmi_oracle(const CmiInstance& inst);

}  // namespace nckey
