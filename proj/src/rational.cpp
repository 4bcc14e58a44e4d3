#include "nckey/rational.hpp"

#include <stdexcept>

#include "nckey/field.hpp"

namespace nckey {

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ContractViolation("zero denominator in '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw ContractViolation("not a rational number: '" + text + "'");
  }
}

}  // namespace nckey
