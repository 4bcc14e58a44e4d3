#include "nckey/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nckey {

namespace {

void require_same_field(const MatrixFq& a, const MatrixFq& b, const char* op) {
  if (!(a.ctx() == b.ctx())) {
    throw ContractViolation(std::string(op) + ": operands live in different fields");
  }
}

// In-place Gauss-Jordan on `m`, mirroring every row operation onto `shadow` when given.
RrefResult gauss_jordan(MatrixFq m, MatrixFq* shadow) {
  const auto& f = m.ctx();
  RrefResult out{m, 0, {}};
  MatrixFq& a = out.rref;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      std::swap_ranges(a.row_mut(p).begin(), a.row_mut(p).end(), a.row_mut(r).begin());
      if (shadow) {
        std::swap_ranges(shadow->row_mut(p).begin(), shadow->row_mut(p).end(),
                         shadow->row_mut(r).begin());
      }
    }
    const Scalar inv = f.inv(a(r, c));
    for (auto& v : a.row_mut(r)) v = f.mul(v, inv);
    if (shadow) {
      for (auto& v : shadow->row_mut(r)) v = f.mul(v, inv);
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar factor = a(i, c);
      auto src = a.row(r);
      auto dst = a.row_mut(i);
      for (std::size_t j = 0; j < a.cols(); ++j) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
      if (shadow) {
        auto ssrc = shadow->row(r);
        auto sdst = shadow->row_mut(i);
        for (std::size_t j = 0; j < shadow->cols(); ++j) {
          sdst[j] = f.sub(sdst[j], f.mul(factor, ssrc[j]));
        }
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

}  // namespace

MatrixFq::MatrixFq(const FieldCtx& ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFq::MatrixFq(const FieldCtx& ctx,
                   std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : ctx_(ctx), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ContractViolation("ragged matrix literal");
    for (auto v : r) data_.push_back(ctx_.reduce(v));
  }
}

MatrixFq::MatrixFq(const FieldCtx& ctx, std::size_t rows, std::size_t cols,
                   std::vector<Scalar> entries)
    : ctx_(ctx), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ContractViolation("matrix entry count does not match its shape");
  }
  for (auto& v : data_) v %= ctx_.q();
}

MatrixFq MatrixFq::identity(const FieldCtx& ctx, std::size_t n) {
  MatrixFq m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool MatrixFq::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
}

MatrixFq MatrixFq::transpose() const {
  MatrixFq t(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

MatrixFq MatrixFq::select_rows(std::span<const std::size_t> idx) const {
  MatrixFq out(ctx_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto src = row(idx[k]);
    std::copy(src.begin(), src.end(), out.row_mut(k).begin());
  }
  return out;
}

MatrixFq MatrixFq::col_range(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw ContractViolation("column range out of bounds");
  MatrixFq out(ctx_, rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out.set(i, j, (*this)(i, first + j));
  return out;
}

std::vector<std::vector<Scalar>> MatrixFq::to_nested() const {
  std::vector<std::vector<Scalar>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

std::string MatrixFq::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a, b, "mat_mul");
  if (a.cols() != b.rows()) {
    throw ContractViolation("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()) + ")");
  }
  const auto& f = a.ctx();
  MatrixFq out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row_mut(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == 0) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] = f.add(dst[j], f.mul(aik, src[j]));
    }
  }
  return out;
}

MatrixFq mat_add(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a, b, "mat_add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("mat_add: shape mismatch");
  MatrixFq out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.ctx().add(a(i, j), b(i, j)));
  return out;
}

MatrixFq mat_sub(const MatrixFq& a, const MatrixFq& b) {
  require_same_field(a, b, "mat_sub");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("mat_sub: shape mismatch");
  MatrixFq out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.ctx().sub(a(i, j), b(i, j)));
  return out;
}

MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom) {
  require_same_field(top, bottom, "vstack");
  if (top.cols() != bottom.cols()) throw ContractViolation("vstack: column counts differ");
  std::vector<Scalar> e = top.entries();
  e.insert(e.end(), bottom.entries().begin(), bottom.entries().end());
  return MatrixFq(top.ctx(), top.rows() + bottom.rows(), top.cols(), std::move(e));
}

MatrixFq hstack(const MatrixFq& left, const MatrixFq& right) {
  require_same_field(left, right, "hstack");
  if (left.rows() != right.rows()) throw ContractViolation("hstack: row counts differ");
  MatrixFq out(left.ctx(), left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    auto dst = out.row_mut(i);
    std::copy(left.row(i).begin(), left.row(i).end(), dst.begin());
    std::copy(right.row(i).begin(), right.row(i).end(), dst.begin() + left.cols());
  }
  return out;
}

MatrixFq block_diag(std::span<const MatrixFq> blocks, const FieldCtx& ctx) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    if (!(b.ctx() == ctx)) throw ContractViolation("block_diag: block from a different field");
    rows += b.rows();
    cols += b.cols();
  }
  MatrixFq out(ctx, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.set(r0 + i, c0 + j, b(i, j));
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

RrefResult rref(const MatrixFq& m) { return gauss_jordan(m, nullptr); }

std::size_t rank(const MatrixFq& m) { return rref(m).rank; }

ReducedWithTransform row_reduce_with_transform(const MatrixFq& m) {
  MatrixFq t = MatrixFq::identity(m.ctx(), m.rows());
  auto reduced = gauss_jordan(m, &t);
  return {std::move(reduced), std::move(t)};
}

MatrixFq left_kernel(const MatrixFq& m) {
  auto [reduced, t] = row_reduce_with_transform(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = reduced.rank; i < m.rows(); ++i) idx.push_back(i);
  return t.select_rows(idx);
}

std::optional<MatrixFq> solve_in_rowspan(const MatrixFq& target, const MatrixFq& basis) {
  require_same_field(target, basis, "solve_in_rowspan");
  if (target.cols() != basis.cols()) {
    throw ContractViolation("solve_in_rowspan: target and basis have different widths");
  }
  const auto& f = basis.ctx();
  auto [reduced, t] = row_reduce_with_transform(basis);
  const auto& r = reduced.rref;
  MatrixFq coeffs(f, target.rows(), basis.rows());
  for (std::size_t i = 0; i < target.rows(); ++i) {
    std::vector<Scalar> residual(target.row(i).begin(), target.row(i).end());
    auto out = coeffs.row_mut(i);
    for (std::size_t k = 0; k < reduced.rank; ++k) {
      const Scalar c = residual[reduced.pivot_cols[k]];
      if (c == 0) continue;
      auto rk = r.row(k);
      for (std::size_t j = 0; j < residual.size(); ++j) residual[j] = f.sub(residual[j], f.mul(c, rk[j]));
      auto tk = t.row(k);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(c, tk[j]));
    }
    if (std::any_of(residual.begin(), residual.end(), [](Scalar v) { return v != 0; })) {
      return std::nullopt;
    }
  }
  return coeffs;
}

MatrixFq random_matrix(std::size_t rows, std::size_t cols, const FieldCtx& ctx, Rng& rng) {
  std::vector<Scalar> e(rows * cols);
  for (auto& v : e) v = ctx.random(rng);
  return MatrixFq(ctx, rows, cols, std::move(e));
}

}  // namespace nckey
