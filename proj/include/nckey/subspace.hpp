#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nckey/matrix.hpp"
#include "nckey/rational.hpp"

namespace nckey {

/// A subspace of F_q^ambient, stored as its RREF basis without zero rows. Two equal
/// subspaces therefore have identical representations.
class Subspace {
 public:
  static Subspace zero(const FieldCtx& ctx, std::size_t ambient_dim);
  static Subspace full(const FieldCtx& ctx, std::size_t ambient_dim);

  const FieldCtx& ctx() const { return basis_.ctx(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const MatrixFq& basis() const { return basis_; }

  bool contains_vector(std::span<const Scalar> v) const;
  /// True when *this is a subspace of `other`.
  bool is_subspace_of(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(MatrixFq basis) : basis_(std::move(basis)) {}
  friend Subspace span_of(const MatrixFq& x);

  MatrixFq basis_;
};

/// Row span of `x`.
Subspace span_of(const MatrixFq& x);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace sum(std::span<const Subspace> parts, const FieldCtx& ctx, std::size_t ambient_dim);
Subspace intersect(const Subspace& a, const Subspace& b);

/// True when a ∩ b = {0}.
bool orthogonal(const Subspace& a, const Subspace& b);

enum class ComplementMode { deterministic, random };

/// Some complement U of (a ∩ b) inside a: U ⊑ a, U ∩ (a∩b) = {0}, U + (a∩b) = a.
/// Deterministic mode completes a basis of a∩b with rows of a's RREF basis. Random mode is
/// uniform over all valid complements and needs `rng`.
Subspace subtract_s(const Subspace& a, const Subspace& b, ComplementMode mode, Rng* rng = nullptr);

/// Uniform over the dim-dimensional subspaces of F_q^ambient.
Subspace random_subspace(std::size_t ambient_dim, std::size_t dim, const FieldCtx& ctx, Rng& rng);

/// Uniform over the dim-dimensional subspaces of `parent`.
Subspace random_subspace_of(const Subspace& parent, std::size_t dim, Rng& rng);

/// Block-diagonal embedding of a and b into F_q^(a.ambient + b.ambient).
Subspace direct_sum(const Subspace& a, const Subspace& b);
Subspace direct_sum(std::span<const Subspace> parts, const FieldCtx& ctx);

// Counting

/// Number of n x d matrices of rank d, i.e. prod_{i<d} (q^n - q^i). Also the number of
/// n-row matrices whose rows span a fixed d-dimensional subspace.
BigInt xi(std::size_t n, std::size_t d, const FieldCtx& ctx);

/// Number of k-dimensional subspaces of F_q^n.
BigInt gaussian_binomial(std::size_t n, std::size_t k, const FieldCtx& ctx);

/// Calls `visit` once for every dim-dimensional subspace of F_q^ambient, in a fixed order.
void for_each_subspace(std::size_t ambient_dim, std::size_t dim, const FieldCtx& ctx,
                       const std::function<void(const Subspace&)>& visit);

std::vector<Subspace> all_subspaces(std::size_t ambient_dim, std::size_t max_dim, const FieldCtx& ctx);

}  // namespace nckey
