#include "nckey/subspace.hpp"

#include <numeric>

namespace nckey {

namespace {

void require_compatible(const Subspace& a, const Subspace& b, const char* op) {
  if (!(a.ctx() == b.ctx())) throw ContractViolation(std::string(op) + ": subspaces over different fields");
  if (a.ambient_dim() != b.ambient_dim()) {
    throw ContractViolation(std::string(op) + ": ambient dimensions differ (" +
                            std::to_string(a.ambient_dim()) + " vs " +
                            std::to_string(b.ambient_dim()) + ")");
  }
}

BigInt big_pow(std::uint64_t q, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

Subspace span_of(const MatrixFq& x) {
  auto red = rref(x);
  std::vector<std::size_t> idx(red.rank);
  std::iota(idx.begin(), idx.end(), 0);
  return Subspace(red.rref.select_rows(idx));
}

Subspace Subspace::zero(const FieldCtx& ctx, std::size_t ambient_dim) {
  return span_of(MatrixFq(ctx, 0, ambient_dim));
}

Subspace Subspace::full(const FieldCtx& ctx, std::size_t ambient_dim) {
  return span_of(MatrixFq::identity(ctx, ambient_dim));
}

bool Subspace::contains_vector(std::span<const Scalar> v) const {
  if (v.size() != ambient_dim()) throw ContractViolation("contains_vector: length mismatch");
  MatrixFq row(ctx(), 1, v.size(), std::vector<Scalar>(v.begin(), v.end()));
  return solve_in_rowspan(row, basis_).has_value();
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  require_compatible(*this, other, "is_subspace_of");
  if (dim() > other.dim()) return false;
  return rank(vstack(other.basis_, basis_)) == other.dim();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "sum");
  return span_of(vstack(a.basis(), b.basis()));
}

Subspace sum(std::span<const Subspace> parts, const FieldCtx& ctx, std::size_t ambient_dim) {
  MatrixFq acc(ctx, 0, ambient_dim);
  for (const auto& p : parts) {
    if (p.ambient_dim() != ambient_dim || !(p.ctx() == ctx)) {
      throw ContractViolation("sum: incompatible member subspace");
    }
    acc = vstack(acc, p.basis());
  }
  return span_of(acc);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "intersect");
  // x*A = y*B  <=>  [x, -y] is in the left kernel of [A; B]; the x*A are the common vectors.
  MatrixFq kernel = left_kernel(vstack(a.basis(), b.basis()));
  return span_of(mat_mul(kernel.col_range(0, a.dim()), a.basis()));
}

bool orthogonal(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "orthogonal");
  return rank(vstack(a.basis(), b.basis())) == a.dim() + b.dim();
}

Subspace subtract_s(const Subspace& a, const Subspace& b, ComplementMode mode, Rng* rng) {
  require_compatible(a, b, "subtract_s");
  const Subspace common = intersect(a, b);
  const auto& f = a.ctx();

  MatrixFq acc = common.basis();
  std::vector<std::size_t> kept;
  std::size_t current = common.dim();
  for (std::size_t i = 0; i < a.dim() && current < a.dim(); ++i) {
    MatrixFq trial = vstack(acc, a.basis().select_rows(std::span<const std::size_t>(&i, 1)));
    if (rank(trial) > current) {
      acc = std::move(trial);
      kept.push_back(i);
      ++current;
    }
  }
  MatrixFq complement = a.basis().select_rows(kept);

  if (mode == ComplementMode::random) {
    if (rng == nullptr) throw ContractViolation("subtract_s: random mode needs an rng");
    // Complements of `common` in `a` are exactly { w_j + c_j } for arbitrary c_j in common;
    // drawing every c_j uniformly makes the complement uniform.
    if (common.dim() > 0 && complement.rows() > 0) {
      MatrixFq shift = mat_mul(random_matrix(complement.rows(), common.dim(), f, *rng), common.basis());
      complement = mat_add(complement, shift);
    }
  }
  return span_of(complement);
}

Subspace random_subspace(std::size_t ambient_dim, std::size_t dim, const FieldCtx& ctx, Rng& rng) {
  if (dim > ambient_dim) throw ContractViolation("random_subspace: dim exceeds ambient dimension");
  while (true) {
    MatrixFq m = random_matrix(dim, ambient_dim, ctx, rng);
    if (rank(m) == dim) return span_of(m);
  }
}

Subspace random_subspace_of(const Subspace& parent, std::size_t dim, Rng& rng) {
  if (dim > parent.dim()) throw ContractViolation("random_subspace_of: dim exceeds parent dimension");
  while (true) {
    MatrixFq c = random_matrix(dim, parent.dim(), parent.ctx(), rng);
    if (rank(c) == dim) return span_of(mat_mul(c, parent.basis()));
  }
}

Subspace direct_sum(const Subspace& a, const Subspace& b) {
  if (!(a.ctx() == b.ctx())) throw ContractViolation("direct_sum: subspaces over different fields");
  const MatrixFq blocks[] = {a.basis(), b.basis()};
  return span_of(block_diag(blocks, a.ctx()));
}

Subspace direct_sum(std::span<const Subspace> parts, const FieldCtx& ctx) {
  std::vector<MatrixFq> blocks;
  blocks.reserve(parts.size());
  for (const auto& p : parts) blocks.push_back(p.basis());
  return span_of(block_diag(blocks, ctx));
}

BigInt xi(std::size_t n, std::size_t d, const FieldCtx& ctx) {
  if (d > n) throw ContractViolation("xi: d must not exceed n");
  const BigInt qn = big_pow(ctx.q(), n);
  BigInt result = 1;
  BigInt qi = 1;
  for (std::size_t i = 0; i < d; ++i) {
    result *= qn - qi;
    qi *= ctx.q();
  }
  return result;
}

BigInt gaussian_binomial(std::size_t n, std::size_t k, const FieldCtx& ctx) {
  if (k > n) throw ContractViolation("gaussian_binomial: k must not exceed n");
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= big_pow(ctx.q(), n - i) - 1;
    den *= big_pow(ctx.q(), i + 1) - 1;
  }
  return num / den;
}

void for_each_subspace(std::size_t ambient_dim, std::size_t dim, const FieldCtx& ctx,
                       const std::function<void(const Subspace&)>& visit) {
  if (dim > ambient_dim) return;
  // Every subspace has exactly one RREF basis: pick pivot columns, then fill the free
  // positions (right of a row's pivot, outside all pivot columns) in every possible way.
  std::vector<std::size_t> pivots(dim);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = pivots[r] + 1; c < ambient_dim; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(r, c);

    MatrixFq m(ctx, dim, ambient_dim);
    for (std::size_t r = 0; r < dim; ++r) m.set(r, pivots[r], 1);
    std::vector<Scalar> digits(free_slots.size(), 0);
    while (true) {
      for (std::size_t s = 0; s < free_slots.size(); ++s) {
        m.set(free_slots[s].first, free_slots[s].second, digits[s]);
      }
      visit(span_of(m));
      std::size_t s = 0;
      while (s < digits.size() && ++digits[s] == ctx.q()) digits[s++] = 0;
      if (s == digits.size()) break;
    }

    // Next combination of pivot columns in lexicographic order.
    std::size_t i = dim;
    while (i > 0 && pivots[i - 1] == ambient_dim - dim + i - 1) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

std::vector<Subspace> all_subspaces(std::size_t ambient_dim, std::size_t max_dim, const FieldCtx& ctx) {
  std::vector<Subspace> out;
  for (std::size_t d = 0; d <= std::min(max_dim, ambient_dim); ++d) {
    for_each_subspace(ambient_dim, d, ctx, [&](const Subspace& s) { out.push_back(s); });
  }
  return out;
}

}  // namespace nckey
