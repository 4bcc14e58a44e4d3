#include "nckey/field.hpp"

namespace nckey {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % p == 0) return n == p;
  }
  // Trial division is exact and fast enough below 2^31 (at most ~46k steps).
  for (std::uint64_t d = 17; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint64_t q) : q_(q) {
  if (q < 2 || q >= (std::uint64_t{1} << 31)) {
    throw ContractViolation("field modulus must satisfy 2 <= q < 2^31, got " + std::to_string(q));
  }
  if (!is_prime(q)) {
    throw ContractViolation("field modulus must be prime, got " + std::to_string(q));
  }
}

Scalar FieldCtx::pow(Scalar a, std::uint64_t e) const {
  Scalar result = 1 % q_;
  a %= q_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Scalar FieldCtx::inv(Scalar a) const {
  if (a % q_ == 0) throw ContractViolation("inverse of zero in F_" + std::to_string(q_));
  return pow(a, q_ - 2);
}

}  // namespace nckey
