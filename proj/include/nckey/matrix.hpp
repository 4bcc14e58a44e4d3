#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nckey/field.hpp"

namespace nckey {

/// Dense row-major matrix over a prime field. Entries are always reduced mod q.
class MatrixFq {
 public:
  /// Empty 0 x 0 matrix over F_2; a placeholder until assigned.
  MatrixFq() : MatrixFq(FieldCtx(2), 0, 0) {}
  MatrixFq(const FieldCtx& ctx, std::size_t rows, std::size_t cols);
  /// Entries are reduced modulo q, so negative literals are accepted.
  MatrixFq(const FieldCtx& ctx, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  MatrixFq(const FieldCtx& ctx, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static MatrixFq identity(const FieldCtx& ctx, std::size_t n);

  const FieldCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v) { data_[r * cols_ + c] = v % ctx_.q(); }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Scalar> row_mut(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Scalar>& entries() const { return data_; }

  bool is_zero() const;
  MatrixFq transpose() const;
  MatrixFq select_rows(std::span<const std::size_t> idx) const;
  MatrixFq col_range(std::size_t first, std::size_t count) const;
  std::vector<std::vector<Scalar>> to_nested() const;
  std::string to_string() const;

  friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
    return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  FieldCtx ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

MatrixFq mat_mul(const MatrixFq& a, const MatrixFq& b);
inline MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) { return mat_mul(a, b); }
MatrixFq mat_add(const MatrixFq& a, const MatrixFq& b);
MatrixFq mat_sub(const MatrixFq& a, const MatrixFq& b);

/// Vertical concatenation; column counts must agree.
MatrixFq vstack(const MatrixFq& top, const MatrixFq& bottom);
/// Horizontal concatenation; row counts must agree.
MatrixFq hstack(const MatrixFq& left, const MatrixFq& right);
MatrixFq block_diag(std::span<const MatrixFq> blocks, const FieldCtx& ctx);

struct RrefResult {
  MatrixFq rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// Unique reduced row echelon form; zero rows are kept at the bottom so the shape is unchanged.
RrefResult rref(const MatrixFq& m);
std::size_t rank(const MatrixFq& m);

/// Row reduction that also records T with T * m == rref. Rows rank..rows-1 of T span the
/// left kernel of m.
struct ReducedWithTransform {
  RrefResult reduced;
  MatrixFq transform;
};
ReducedWithTransform row_reduce_with_transform(const MatrixFq& m);

/// Basis (as rows) of { v : v * m == 0 }.
MatrixFq left_kernel(const MatrixFq& m);

/// Returns C with C * basis == target, or nullopt if some target row is outside the row span.
std::optional<MatrixFq> solve_in_rowspan(const MatrixFq& target, const MatrixFq& basis);

MatrixFq random_matrix(std::size_t rows, std::size_t cols, const FieldCtx& ctx, Rng& rng);

}  // namespace nckey
