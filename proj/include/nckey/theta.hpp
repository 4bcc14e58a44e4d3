#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nckey/rational.hpp"
#include "nckey/subspace.hpp"

namespace nckey {

/// Nonempty subset J of the legitimate terminals [1:m]; bit i-1 set means terminal i ∈ J.
using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxTerminals = 16;

inline SubsetMask full_mask(std::size_t m) { return static_cast<SubsetMask>((1u << m) - 1); }
inline bool contains_terminal(SubsetMask J, std::size_t r) { return (J >> r) & 1u; }
/// "{1,3}" style label with 1-based terminal numbers.
std::string subset_label(SubsetMask J);

/// One subspace per nonempty J ⊆ [1:m]; all members share the ambient space.
class SubspaceFamily {
 public:
  SubspaceFamily(std::size_t m, const FieldCtx& ctx, std::size_t ambient_dim);

  std::size_t m() const { return m_; }
  std::size_t ambient_dim() const { return ambient_; }
  const FieldCtx& ctx() const { return members_.front().ctx(); }
  const Subspace& at(SubsetMask J) const;
  void set(SubsetMask J, Subspace s);

 private:
  std::size_t m_;
  std::size_t ambient_;
  std::vector<Subspace> members_;  // index 0 unused
};

/// θ_J for every nonempty J ⊆ [1:m].
class ThetaAllocation {
 public:
  explicit ThetaAllocation(std::size_t m);

  std::size_t m() const { return m_; }
  const Rational& at(SubsetMask J) const;
  void set(SubsetMask J, Rational value);

  /// min over terminals r of sum_{J ∋ r} θ_J.
  Rational min_cut() const;
  /// Elementwise floor(N θ_J).
  ThetaAllocation scaled_floor(std::size_t N) const;
  bool is_integral() const;

  friend bool operator==(const ThetaAllocation&, const ThetaAllocation&) = default;

 private:
  std::size_t m_;
  std::vector<Rational> values_;  // index 0 unused
};

/// Right-hand sides of the rate-allocation inequalities
///   sum_{J ∈ S} θ_J <= dim(sum_{J ∈ S} U_J + Π_E) - dim(Π_E)
/// for every nonempty selection S of distinct subsets. A selection is a bitmask over the
/// 2^m - 1 subsets with bit J-1 standing for subset J.
class ThetaConstraints {
 public:
  using Selection = std::uint64_t;
  using Rhs = std::function<std::size_t(const std::vector<SubsetMask>&)>;

  ThetaConstraints(std::size_t m, Rhs rhs);

  /// Actual subspaces with Eve's subspace known.
  static ThetaConstraints from_subspaces(const SubspaceFamily& U, const Subspace& eve);
  /// Actual U_J but only dim Π_E known; Π_E is assumed in generic position.
  static ThetaConstraints from_subspaces_eve_dim(const SubspaceFamily& U, std::size_t eve_dim);
  /// Planned dimensions d_J (indexed by mask) of mutually orthogonal U_J inside an
  /// n_A-dimensional space, with Π_E of dimension n_E in generic position.
  static ThetaConstraints from_planned(std::size_t m, const std::vector<std::size_t>& dims,
                                       std::size_t n_A, std::size_t n_E);

  std::size_t m() const { return m_; }
  std::size_t family_size() const { return (std::size_t{1} << m_) - 1; }
  std::size_t rhs(const std::vector<SubsetMask>& selection) const { return rhs_(selection); }
  std::vector<SubsetMask> members(Selection s) const;

 private:
  std::size_t m_;
  Rhs rhs_;
};

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<SubsetMask> witness;  ///< violated selection (a single J for a negative θ_J)
  Rational lhs;
  Rational rhs;
  std::size_t checked = 0;  ///< number of selections evaluated

  std::string describe() const;
};

/// Checks θ_J >= 0 and every selection inequality. All selections are enumerated for m <= 3;
/// for larger m singletons, the full family and `samples` random selections drawn from `rng`
/// are checked.
FeasibilityVerdict check_theta_feasible(const ThetaAllocation& theta, const ThetaConstraints& constraints,
                                        Rng* rng = nullptr, std::size_t samples = 1u << 14);

struct ThetaLpSolution {
  ThetaAllocation theta;
  Rational value;  ///< min_r sum_{J ∋ r} θ*_J, per (ell - n_A) log q
  /// Dual multipliers: first m for the min-cut rows, then one per selection (in selection order).
  std::vector<Rational> dual;
  std::vector<std::vector<SubsetMask>> selections;
  std::vector<std::size_t> selection_rhs;
};

/// Exact optimum of max_θ min_r sum_{J ∋ r} θ_J over the constraint set. Needs m <= 3.
ThetaLpSolution solve_theta_lp(const ThetaConstraints& constraints);

}  // namespace nckey
