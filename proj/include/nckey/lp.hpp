#pragma once

#include <vector>

#include "nckey/rational.hpp"

namespace nckey::lp {

enum class Status { optimal, unbounded };

struct Solution {
  Status status = Status::optimal;
  std::vector<Rational> x;     ///< primal optimum
  std::vector<Rational> dual;  ///< one multiplier per constraint row
  Rational value;
};

/// maximize c.x subject to A x <= b, x >= 0, in exact rational arithmetic.
///
/// Requires b >= 0 so the origin is a feasible starting basis. Pivoting uses Bland's rule.
/// At optimality the returned dual satisfies A^T y >= c, y >= 0 and b.y == c.x.
Solution maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace nckey::lp
