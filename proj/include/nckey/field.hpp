#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace nckey {

/// Raised when a caller breaks an operation's documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All randomness in the library is drawn from a caller-owned engine of this type.
using Rng = std::mt19937_64;

using Scalar = std::uint64_t;

bool is_prime(std::uint64_t n);

/// Prime field F_q with 2 <= q < 2^31. Elements are plain integers in [0, q).
class FieldCtx {
 public:
  explicit FieldCtx(std::uint64_t q);

  std::uint64_t q() const { return q_; }

  Scalar reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(q_);
    return static_cast<Scalar>(r < 0 ? r + static_cast<std::int64_t>(q_) : r);
  }
  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + q_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : q_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % q_; }
  Scalar pow(Scalar a, std::uint64_t e) const;
  /// Multiplicative inverse; `a` must be nonzero.
  Scalar inv(Scalar a) const;

  Scalar random(Rng& rng) const {
    return std::uniform_int_distribution<Scalar>(0, q_ - 1)(rng);
  }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.q_ == b.q_; }

 private:
  std::uint64_t q_;
};

}  // namespace nckey
