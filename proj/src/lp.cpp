#include "nckey/lp.hpp"

#include "nckey/field.hpp"

namespace nckey::lp {

Solution maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  const std::size_t rows = A.size();
  const std::size_t vars = c.size();
  if (b.size() != rows) throw ContractViolation("lp: rhs length differs from constraint count");
  for (const auto& row : A) {
    if (row.size() != vars) throw ContractViolation("lp: constraint row has the wrong width");
  }
  for (const auto& v : b) {
    if (v < 0) throw ContractViolation("lp: negative right-hand side needs a phase-one start");
  }

  // Columns: structural variables, then one slack per row, then the rhs.
  const std::size_t width = vars + rows + 1;
  const std::size_t rhs = width - 1;
  std::vector<std::vector<Rational>> t(rows + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) t[i][j] = A[i][j];
    t[i][vars + i] = 1;
    t[i][rhs] = b[i];
    basis[i] = vars + i;
  }
  auto& obj = t[rows];
  for (std::size_t j = 0; j < vars; ++j) obj[j] = -c[j];

  Solution sol;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) {
      sol.status = Status::unbounded;
      return sol;
    }

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  sol.x.assign(vars, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) sol.x[basis[i]] = t[i][rhs];
  }
  sol.dual.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) sol.dual[i] = obj[vars + i];
  sol.value = obj[rhs];
  return sol;
}

}  // namespace nckey::lp
