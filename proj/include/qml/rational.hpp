#ifndef QML_RATIONAL_HPP
#define QML_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qml {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an input violates an operation's preconditions.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request would leave exact rational arithmetic.
class exactness_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or an integer string into a canonical rational.
Rational rat_from_string(const std::string& text);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rational& value);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

/// value^exponent for integer exponents; negative exponents invert.
Rational rat_pow(const Rational& value, long exponent);

/// Exact square root of a nonnegative rational, if one exists in Q.
std::optional<Rational> rat_sqrt(const Rational& value);

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// canonicalize, and GMP comparisons assume canonical operands).
inline Rational make_rat(const Integer& num, const Integer& den) {
  Rational value(num, den);
  value.canonicalize();
  return value;
}

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace qml

#endif
